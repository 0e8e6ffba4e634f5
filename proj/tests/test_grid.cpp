#include "catch_amalgamated.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qwvd/error.hpp"
#include "qwvd/grid.hpp"

using namespace qwvd;
using Catch::Approx;

namespace {

bool near(const Quaternion& a, const Quaternion& b, double tol) { return max_abs_component(a - b) <= tol; }

const GridSpec2D kStd(64, 6.0);

}  // namespace

TEST_CASE("grid layout") {
    const GridSpec2D g(4, 2.0);
    CHECK(g.spacing() == 1.0);
    CHECK(g.spacing() * g.n() == 4.0);
    CHECK(g.points() == std::vector<double>{-1.5, -0.5, 0.5, 1.5});
    for (int k = 0; k < kStd.n(); ++k) CHECK(kStd.point(k) == -kStd.point(kStd.n() - 1 - k));
    CHECK(GridSpec2D(5, 1.0).point(2) == 0.0);
    CHECK(kStd.refined(1.5).n() == 96);
    CHECK_THROWS_AS(GridSpec2D(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec2D(8, -1.0), std::invalid_argument);
}

TEST_CASE("sampling the gaussian family") {
    const auto g = sample(AnalyticSignal::gaussian(), GridSpec2D(4, 2.0));
    double top = 0.0;
    for (const auto& q : g.values) {
        CHECK(q.x == 0.0);
        CHECK(q.y == 0.0);
        CHECK(q.z == 0.0);
        top = std::max(top, q.w);
    }
    for (int a : {1, 2}) {
        for (int b : {1, 2}) CHECK(g.at(a, b).w == top);
    }

    const auto gi = sample(AnalyticSignal::gaussian(Quaternion::i()), GridSpec2D(8, 2.0));
    for (const auto& q : gi.values) CHECK((q.w == 0.0 && q.y == 0.0 && q.z == 0.0));

    const GridSpec2D s(9, 2.25);  // spacing 0.5, nodes on multiples of 0.5
    const auto sh = sample(AnalyticSignal::gaussian(1.0, std::numbers::pi, {1.0, 0.0}), s);
    int best1 = 0, best2 = 0;
    for (int a = 0; a < s.n(); ++a) {
        for (int b = 0; b < s.n(); ++b) {
            if (sh.at(a, b).w > sh.at(best1, best2).w) best1 = a, best2 = b;
        }
    }
    CHECK(s.point(best1) == 1.0);
    CHECK(s.point(best2) == 0.0);
}

TEST_CASE("modulated atom evaluation order") {
    GaussianAtom atom;
    atom.coeff = Quaternion(0.5, 1.0, -0.25, 2.0);
    atom.mod_i = 1.3;
    atom.mod_j = -0.7;
    atom.shift = {0.2, -0.1};
    const double t1 = 0.4, t2 = -0.3;
    const double env = std::exp(-std::numbers::pi * ((t1 - 0.2) * (t1 - 0.2) + (t2 + 0.1) * (t2 + 0.1)));
    const auto expected = unit_exp(Axis::I, 1.3 * t1) * atom.coeff * env * unit_exp(Axis::J, -0.7 * t2);
    CHECK(near(atom(t1, t2), expected, 1e-15));
    CHECK(norm(atom(t1, t2)) <= norm(atom.coeff));
}

TEST_CASE("signal text round trip") {
    const auto f = parse_signal("coeff=1,1,0,0;alpha=2;shift=0.5,-1;modi=3;modj=-1");
    REQUIRE(f.atoms().size() == 1);
    const auto& a = f.atoms()[0];
    CHECK(a.coeff == Quaternion(1, 1, 0, 0));
    CHECK(a.alpha == 2.0);
    CHECK(a.shift == Vec2{0.5, -1.0});
    CHECK(a.mod_i == 3.0);
    CHECK(a.mod_j == -1.0);
    const auto back = parse_signal(f.describe());
    CHECK(back(0.3, 0.1) == f(0.3, 0.1));
    CHECK(parse_signal("zero").is_zero());
    const auto sum = parse_signal("shift=0.5,0|coeff=-1,0,0,0;shift=-0.5,0");
    CHECK(sum.atoms().size() == 2);
    CHECK(sum(0.0, 0.3) == Quaternion(0.0));
    CHECK_THROWS_AS(parse_signal("alpha=-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_signal("beta=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_signal("coeff=1,2"), std::invalid_argument);
}

TEST_CASE("quadrature of the unit gaussian") {
    const auto start = std::chrono::steady_clock::now();
    const auto g = sample(AnalyticSignal::gaussian(), kStd);
    CHECK(near(integrate(g), Quaternion(1.0), 1e-6));
    CHECK(near(integrate(sample(AnalyticSignal(), kStd)), Quaternion(), 0.0));
    CHECK(near(integrate(sample(AnalyticSignal::gaussian(Quaternion::i()), kStd)), Quaternion::i(), 1e-6));
    CHECK(l2_norm(g) == Approx(1.0 / std::numbers::sqrt2).margin(1e-6));
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 1.0);
}

TEST_CASE("inner products") {
    const auto f = sample(AnalyticSignal::gaussian(), kStd);
    const auto fi = sample(AnalyticSignal::gaussian(Quaternion::i()), kStd);
    CHECK(near(inner_product(f, f), Quaternion(0.5), 1e-6));
    CHECK(near(inner_product(f, fi), Quaternion(0, -0.5), 1e-6));
    const auto zero = sample(AnalyticSignal(), kStd);
    CHECK(inner_product(zero, zero) == Quaternion());
    CHECK(l2_norm(zero) == 0.0);
    CHECK(l2_norm(sample(AnalyticSignal::gaussian(Quaternion(1, 1, 1, 1)), kStd)) ==
          Approx(std::numbers::sqrt2).margin(1e-6));
    CHECK_THROWS_AS(inner_product(f, sample(AnalyticSignal::gaussian(), GridSpec2D(32, 6.0))), ShapeError);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const GridSpec2D s(16, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        SignalGrid a(s), b(s);
        for (auto& q : a.values) q = Quaternion(U(rng), U(rng), U(rng), U(rng));
        for (auto& q : b.values) q = Quaternion(U(rng), U(rng), U(rng), U(rng));
        CHECK(near(inner_product(a, b), conj(inner_product(b, a)), 1e-12));
        const auto ip = inner_product(a, a);
        CHECK(std::fabs(ip.x) + std::fabs(ip.y) + std::fabs(ip.z) <= 1e-12);
        CHECK(ip.w >= 0.0);
    }
}

TEST_CASE("integration is linear") {
    const auto f = AnalyticSignal::gaussian(Quaternion(0.2, 1, 0, -1), 2.0, {0.3, 0.1});
    const auto g = AnalyticSignal::gaussian(Quaternion(1, 0, 2, 0), 1.0, {-0.5, 0.4});
    const auto If = integrate(sample(f, kStd)), Ig = integrate(sample(g, kStd));
    CHECK(near(integrate(sample(f + g, kStd)), If + Ig, 1e-13));
    CHECK(near(integrate(sample(2.5 * f, kStd)), 2.5 * If, 1e-13));
}

TEST_CASE("quadrature converges under refinement") {
    for (double alpha : {std::numbers::pi / 4, std::numbers::pi, 4.0}) {
        const double L = std::max(6.0, 6.0 / std::sqrt(alpha));
        const double exact = std::numbers::pi / alpha;
        const auto f = AnalyticSignal::gaussian(1.0, alpha);
        double previous = 1e300;
        for (int n = 4; n <= 256; n *= 2) {
            const double err = std::fabs(integrate(sample(f, GridSpec2D(n, L))).w - exact);
            if (previous < 1e-10) break;
            CHECK(err < previous);
            previous = err;
        }
        CHECK(previous < 1e-10);
    }
}

TEST_CASE("signal csv round trip") {
    const auto g = sample(AnalyticSignal::gaussian(Quaternion(1, -2, 0.5, 3), 1.7, {0.1, 0.2}), GridSpec2D(8, 2.0));
    std::stringstream ss;
    write_signal_csv(ss, g);
    const std::string text = ss.str();
    CHECK(text.rfind("k1,k2,t1,t2,w,x,y,z\n", 0) == 0);
    const auto back = read_signal_csv(ss);
    CHECK(back.spec == g.spec);
    CHECK(back.values == g.values);
    std::stringstream bad("a,b\n");
    CHECK_THROWS_AS(read_signal_csv(bad), std::invalid_argument);
}
