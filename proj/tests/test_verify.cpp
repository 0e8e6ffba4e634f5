#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qwvd/error.hpp"
#include "qwvd/verify.hpp"

using namespace qwvd;
using Catch::Approx;
using std::numbers::pi;

namespace {

const ParamPair kQft{};
const ParamPair kGeneric{OLCTParams::make(1, 2, 1, 3, 0.5, -0.7), OLCTParams::make(2, 1, 1, 1, -0.3, 0.4)};
const auto kGauss = AnalyticSignal::gaussian();

AnalyticSignal odd_pair(double s) {
    return AnalyticSignal::gaussian(1.0, pi, {s, 0}) + AnalyticSignal::gaussian(-1.0, pi, {-s, 0});
}

}  // namespace

TEST_CASE("grid set") {
    const GridSet d;
    CHECK(d.t_spec(kQft).half_width() == 3.0);
    CHECK(d.u_spec(kQft).half_width() == 6.0);
    CHECK(d.u_spec(kGeneric).half_width() == 18.0);
    CHECK(d.n_spec().n() == 48);
    CHECK(d.s_spec().n() == 64);
    CHECK(d.s_spec().half_width() == 6.0);
    const auto g = GridSet::from_n(32);
    CHECK(g.n_t == 32);
    CHECK(g.n_u == 32);
    CHECK(g.n_n == 64);
    CHECK(g.n_w == 64);
    CHECK(g.n_s == 64);
    const auto s = d.scaled(1.5);
    CHECK(s.n_t == 36);
    CHECK(s.n_n == 72);
    CHECK(s.n_s == 96);
    GridSet custom;
    custom.L_u = 7.5;
    CHECK(custom.u_spec(kGeneric).half_width() == 7.5);
    CHECK(custom.to_json(kGeneric)["L_u"] == 7.5);
    CHECK(default_t_probes().size() == 9);
    CHECK(default_u_probes().size() == 2);
}

TEST_CASE("residual helpers") {
    CHECK(relative_residual(Quaternion(1), Quaternion(1)) == 0.0);
    CHECK(relative_residual(Quaternion(2), Quaternion(1)) == 0.5);
    CHECK(relative_residual(Quaternion(), Quaternion()) == 0.0);
    const std::vector<Quaternion> a{Quaternion(1), Quaternion(0, 4)}, b{Quaternion(1), Quaternion(0, 3)};
    CHECK(sup_relative_residual(a, b) == 0.25);
}

TEST_CASE("parameter json") {
    const auto j = to_json(kGeneric);
    const auto back = params_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.A1.b == 2.0);
    CHECK(back.A2.s == 0.4);
    auto bad = nlohmann::json::parse(j.dump());
    bad["A1"]["d"] = 2.0;
    CHECK_THROWS_AS(params_from_json(bad), DeterminantError);
}

TEST_CASE("identities hold for unit gaussians under the Fourier kernel") {
    const GridSet grids;
    const auto b = verify_boundedness(kGauss, kGauss, kQft, grids);
    CHECK(b.pass);
    CHECK(*b.bound_margin >= -1e-9);
    CHECK(b.details["bound"].get<double>() == Approx(1 / pi).epsilon(1e-9));
    CHECK(b.details["attainment"].get<double>() == Approx(1.0).margin(1e-6));

    const auto n = verify_nonlinearity(kGauss, kGauss, kQft, grids);
    CHECK(n.pass);
    CHECK(n.residual <= 1e-12);

    const auto r = verify_reconstruction(kGauss, kGauss, kQft, grids);
    CHECK(r.pass);
    CHECK(r.details["probes"].size() == 9);

    const auto o = verify_orthogonality(kGauss, kGauss, kGauss, kGauss, kQft, grids);
    CHECK(o.pass);
    CHECK(o.details["rhs"][0].get<double>() == Approx(0.25).epsilon(1e-6));

    const auto p = verify_plancherel(kGauss, kGauss, kQft, grids);
    CHECK(p.pass);
    CHECK(p.tolerance == 1e-2);
    CHECK(p.details["refined_decreases"].get<bool>());

    const auto i = verify_inversion(kGauss, kGauss, kQft, grids);
    CHECK(i.pass);
    CHECK(i.details["probe_count"] == 30);
    CHECK(i.runtime_seconds.has_value());
}

TEST_CASE("identities hold for general parameters") {
    const GridSet grids;
    const auto f = AnalyticSignal::gaussian(Quaternion(1, 0.5, 0, 0), 2.0, {0.2, 0});
    for (const auto& id : {"boundedness", "nonlinearity", "reconstruction", "orthogonality", "plancherel", "inversion"}) {
        const auto reps = verify_by_id(id, f, kGauss, kGeneric, grids, {});
        REQUIRE(reps.size() == 1);
        INFO(id << " residual " << reps[0].residual);
        CHECK(reps[0].pass);
        CHECK(reps[0].theorem_id == id);
    }
}

TEST_CASE("reconstruction with g vanishing at the origin") {
    const auto r = verify_reconstruction(kGauss, odd_pair(1.0), kQft, GridSet{});
    CHECK_FALSE(r.pass);
    CHECK(r.error.has_value());
    CHECK(r.counts_as_failure());
    const auto j = nlohmann::json::parse(to_json(r).dump());
    CHECK(j["residual"].is_null());
    CHECK(j["error"].get<std::string>().find("origin") != std::string::npos);
}

TEST_CASE("orthogonal pair") {
    const auto h = odd_pair(1.0);
    const auto o = verify_orthogonality(kGauss, kGauss, h, h, kQft, GridSet{});
    CHECK(o.pass);
    CHECK(o.tolerance == 1e-3);
    CHECK(o.residual <= 1e-3);
}

TEST_CASE("boundedness with a wide kernel") {
    const ParamPair P{OLCTParams::make(1, 4, 0, 1), qft_params()};
    const auto b = verify_boundedness(kGauss, kGauss, P, GridSet{});
    CHECK(b.pass);
    CHECK(b.details["bound"].get<double>() == Approx(1 / (pi * 2)).epsilon(1e-9));
}

TEST_CASE("plancherel for a modulated signal") {
    const auto f = parse_signal("coeff=1,0,0,0;alpha=3.14159;modi=2;modj=-1");
    const auto p = verify_plancherel(f, kGauss, kGeneric, GridSet{});
    CHECK(p.pass);
}

TEST_CASE("convolution and correlation reports") {
    const GridSet grids;
    const auto all = TheoremVariant::all();
    for (auto op : {Operation::Convolution, Operation::Correlation}) {
        const auto reps = verify_operation_theorem(op, kGauss, kGauss, kQft, grids, all);
        REQUIRE(reps.size() == 4);
        for (const auto& r : reps) {
            INFO(r.theorem_id << ' ' << r.variant_label() << " residual " << r.residual);
            REQUIRE(r.oracle_residual.has_value());
            CHECK(*r.oracle_residual <= 1e-3);
            CHECK(r.tolerance == 5e-2);
            CHECK(r.details["rhs_form"] == "qft");
            CHECK(r.details["variant_residuals"].size() == 4);
            // a passing variant and a mismatch flag exclude each other
            CHECK(r.pass != r.theorem_mismatch);
            CHECK_FALSE(r.counts_as_failure());
        }
        CHECK(reps[0].details["lhs_origin"] == reps[1].details["lhs_origin"]);
    }
}

TEST_CASE("report serialization") {
    VerifyOptions opts{true, false};
    const auto a = verify_nonlinearity(kGauss, kGauss, kQft, GridSet::from_n(8), opts);
    const auto b = verify_nonlinearity(kGauss, kGauss, kQft, GridSet::from_n(8), opts);
    CHECK(to_json(a).dump() == to_json(b).dump());
    const auto j = to_json(a);
    CHECK(j["runtime_seconds"].is_null());
    CHECK(j["variant"].is_null());
    CHECK(j["theorem_id"] == "nonlinearity");
    CHECK(a.variant_label() == "-");

    std::ostringstream os;
    const std::vector<VerificationReport> reps{a};
    write_summary_csv(os, reps);
    CHECK(os.str().rfind("theorem,variant,residual,tolerance,pass\nnonlinearity,-,", 0) == 0);
    CHECK(theorem_ids().size() == 8);
    CHECK_THROWS(verify_by_id("nope", kGauss, kGauss, kQft, GridSet{}, {}));
}
