// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qwvd/cli.hpp"
#include "qwvd/convcorr.hpp"
#include "qwvd/verify.hpp"

namespace fs = std::filesystem;
using namespace qwvd;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const ParamPair kQft{};
const ParamPair kGeneric{OLCTParams::make(1, 2, 1, 3, 0.5, -0.7), OLCTParams::make(2, 1, 1, 1, -0.3, 0.4)};
const AnalyticSignal kGauss = AnalyticSignal::gaussian();
const VerifyOptions kSerial{true, false};

Outcome algebra() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    auto rq = [&] { return Quaternion(U(rng), U(rng), U(rng), U(rng)); };
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const auto p = rq(), q = rq();
        const double np = norm(p), nq = norm(q);
        worst = std::max(worst, std::fabs(norm(p * q) - np * nq) / (np * nq));
        worst = std::max(worst, norm(conj(p * q) - conj(q) * conj(p)) / (np * nq));
        const double a = U(rng), b = U(rng);
        for (Axis ax : {Axis::I, Axis::J}) {
            worst = std::max(worst, norm(unit_exp(ax, a) * unit_exp(ax, b) - unit_exp(ax, a + b)));
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-12 && secs < 1.0, "max rel " + fmt("%.3g", worst) + ", " + fmt("%.3f", secs) + " s"};
}

Outcome quadrature() {
    const auto t0 = Clock::now();
    const auto s = sample(kGauss, GridSpec2D(64, 6.0));
    Quaternion integral;
    for (const auto& v : s.values) integral += v;
    integral = integral * s.spec.cell_area();
    const double e1 = norm(integral - Quaternion(1));
    const double e2 = std::fabs(l2_norm(s) - 1 / std::sqrt(2.0));
    const double secs = seconds_since(t0);
    return {e1 <= 1e-6 && e2 <= 1e-6 && secs < 1.0,
            "integral err " + fmt("%.3g", e1) + ", norm err " + fmt("%.3g", e2) + ", " + fmt("%.3f", secs) + " s"};
}

Outcome plancherel() {
    const auto t0 = Clock::now();
    const auto q = verify_plancherel(kGauss, kGauss, kQft, GridSet{}, kSerial);
    const double refined = q.details["refined_residual"].get<double>();
    const bool q_ok = q.residual <= 1e-2 && refined < q.residual;
    const auto f = AnalyticSignal::gaussian(Quaternion(1, 0.5, 0, 0), 2.0, {0.2, 0});
    const auto g = verify_plancherel(f, kGauss, kGeneric, GridSet{}, kSerial);
    const double secs = seconds_since(t0);
    return {q_ok && g.residual <= 2e-2 && secs < 60.0,
            "qft " + fmt("%.3g", q.residual) + " -> " + fmt("%.3g", refined) + ", generic " +
                fmt("%.3g", g.residual) + ", " + fmt("%.1f", secs) + " s"};
}

Outcome boundedness() {
    const std::vector<ParamPair> sets{
        kQft, kGeneric, {OLCTParams::make(1, 4, 0, 1), qft_params()},
        {OLCTParams::make(0.5, -1, 1, 0, 0.3, 0.1), OLCTParams::make(1, 0.5, -1, 0.5, 0, -0.2)},
        {OLCTParams::make(1, 2, 1, 3), OLCTParams::make(2, 1, 1, 1)}};
    const auto f = AnalyticSignal::gaussian(Quaternion(1, 0.5, -0.5, 0.25), 2.0, {0.3, -0.2});
    bool ok = true;
    double worst = -1e300;
    for (const auto& P : sets) {
        const auto r = verify_boundedness(f, kGauss, P, GridSet{}, kSerial);
        ok = ok && r.pass && *r.bound_margin >= -1e-9;
        worst = std::max(worst, -*r.bound_margin);
    }
    const auto a = verify_boundedness(kGauss, kGauss, kQft, GridSet{}, kSerial);
    const double top = a.details["max_abs"].get<double>();
    const bool attained = std::fabs(top - 1 / pi) <= 1e-3;
    return {ok && attained, "worst violation " + fmt("%.3g", worst) + ", max|W| " + fmt("%.6f", top) + " vs 1/pi"};
}

Outcome nonlinearity() {
    const auto f = AnalyticSignal::gaussian(Quaternion(1, 0.5, -0.5, 0.25), 2.0, {0.3, -0.2});
    double worst = 0.0;
    for (const auto& P : {kQft, kGeneric}) {
        worst = std::max(worst, verify_nonlinearity(f, kGauss, P, GridSet{}, kSerial).residual);
    }
    return {worst <= 1e-12, "max cell residual " + fmt("%.3g", worst)};
}

Outcome reconstruction() {
    GridSet grids;
    grids.n_t = grids.n_u = grids.n_n = 64;
    const auto f = AnalyticSignal::gaussian(Quaternion(1, 1, -0.5, 0.5), 2.0, {0.2, -0.1});
    double worst = 0.0;
    for (const auto& P : {kQft, kGeneric}) {
        worst = std::max(worst, verify_reconstruction(f, kGauss, P, grids, kSerial).residual);
    }
    return {worst <= 1e-2, "max probe error " + fmt("%.3g", worst)};
}

Outcome orthogonality() {
    const auto s1 = AnalyticSignal::gaussian(1.0, 2.0, {0.3, 0});
    const auto s2 = AnalyticSignal::gaussian(Quaternion(0.5, 1, 0, 0), pi, {0, -0.4});
    const auto odd = AnalyticSignal::gaussian(1.0, pi, {1, 0}) + AnalyticSignal::gaussian(-1.0, pi, {-1, 0});
    struct Case {
        AnalyticSignal f1, g1, f2, g2;
    };
    const std::vector<Case> suite{{kGauss, kGauss, kGauss, kGauss},
                                  {s1, kGauss, s2, kGauss},
                                  {kGauss, s1, kGauss, s2},
                                  {s1, s2, s2, s1}};
    GridSet grids = GridSet::from_n(32);
    double worst = 0.0;
    bool ok = true;
    for (const auto& P : {kQft, kGeneric}) {
        for (const auto& c : suite) {
            const auto r = verify_orthogonality(c.f1, c.g1, c.f2, c.g2, P, grids, kSerial);
            ok = ok && r.pass;
            worst = std::max(worst, r.residual);
        }
    }
    const auto z = verify_orthogonality(kGauss, kGauss, odd, odd, kQft, grids, kSerial);
    const bool near_zero = z.pass && z.tolerance == 1e-3;
    return {ok && near_zero, "max residual " + fmt("%.3g", worst) + ", near-orthogonal pair " + fmt("%.3g", z.residual)};
}

Outcome inversion() {
    const auto f = AnalyticSignal::gaussian(Quaternion(1, 0.5, 0, -0.5), 2.0, {0.2, 0});
    double worst = 0.0;
    for (const auto& P : {kQft, kGeneric}) worst = std::max(worst, verify_inversion(f, kGauss, P, GridSet{}, kSerial).residual);
    return {worst <= 1e-2, "max probe error " + fmt("%.3g", worst)};
}

Outcome convolution_values() {
    const GridSpec2D z(64, 6.0);
    const double e0 = norm(convolve(kGauss, kGauss, kQft, {0, 0}, z) - Quaternion(0.5));
    const double e1 = norm(convolve(kGauss, kGauss, kQft, {1, 1}, z) - Quaternion(0.5 * std::exp(-pi)));
    return {e0 <= 1e-4 && e1 <= 1e-4, "errors " + fmt("%.3g", e0) + ", " + fmt("%.3g", e1)};
}

Outcome theorems() {
    const auto t0 = Clock::now();
    const auto all = TheoremVariant::all();
    GridSet coarse, fine;
    coarse.n_n = coarse.n_w = 24;
    std::ostringstream msg;
    bool ok = true;
    for (auto op : {Operation::Convolution, Operation::Correlation}) {
        const auto lo = verify_operation_theorem(op, kGauss, kGauss, kQft, coarse, all, kSerial);
        const auto hi = verify_operation_theorem(op, kGauss, kGauss, kQft, fine, all, kSerial);
        double oracle = 0.0, best = 1e300;
        bool variant_ok = false;
        for (std::size_t v = 0; v < all.size(); ++v) {
            oracle = std::max({oracle, lo[v].oracle_residual.value_or(1e300), hi[v].oracle_residual.value_or(1e300)});
            best = std::min(best, hi[v].residual);
            variant_ok = variant_ok || (hi[v].residual <= 5e-2 && hi[v].residual < lo[v].residual);
        }
        const bool mismatch = hi[0].theorem_mismatch;
        const bool op_ok = oracle <= 1e-3 && (variant_ok || mismatch);
        ok = ok && op_ok;
        msg << (op == Operation::Convolution ? "conv" : "corr") << ": oracle " << fmt("%.3g", oracle) << ", best "
            << fmt("%.3g", best) << (variant_ok ? "" : mismatch ? " theorem-mismatch" : " no variant") << "; ";
    }
    const double secs = seconds_since(t0);
    msg << fmt("%.1f", secs) << " s";
    return {ok && secs < 300.0, msg.str()};
}

std::map<std::string, std::string> report_bytes(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const auto rel = fs::relative(e.path(), dir).string();
        if (rel == "timings.csv" || rel == "meta.json") continue;
        std::ifstream is(e.path(), std::ios::binary);
        out[rel] = {std::istreambuf_iterator<char>(is), {}};
    }
    return out;
}

Outcome determinism() {
    const auto base = fs::temp_directory_path() / "qwvd_acceptance_determinism";
    fs::remove_all(base);
    std::vector<std::map<std::string, std::string>> runs;
    for (const char* name : {"a", "b"}) {
        const std::string dir = (base / name).string();
        const char* argv[] = {"qwvd", "verify", "all", "--serial", "--out", dir.c_str()};
        std::ostringstream out, err;
        const int code = cli::main_entry(6, argv, out, err);
        if (code != cli::kOk) return {false, "verify all exited with " + std::to_string(code)};
        runs.push_back(report_bytes(base / name));
    }
    const bool same = runs[0] == runs[1] && runs[0].size() == 9;
    return {same, std::to_string(runs[0].size()) + " files compared"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"algebra", algebra},
        {"quadrature", quadrature},
        {"plancherel", plancherel},
        {"boundedness", boundedness},
        {"nonlinearity", nonlinearity},
        {"reconstruction", reconstruction},
        {"orthogonality", orthogonality},
        {"inversion", inversion},
        {"convolution operator", convolution_values},
        {"convolution/correlation theorems", theorems},
        {"determinism", determinism}};
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("criterion %zu %s: %s (%s)\n", k + 1, criteria[k].first.c_str(), o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
