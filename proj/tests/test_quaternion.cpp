#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qwvd/error.hpp"
#include "qwvd/quaternion.hpp"

using namespace qwvd;
using Catch::Approx;

namespace {

bool near(const Quaternion& a, const Quaternion& b, double tol) { return max_abs_component(a - b) <= tol; }

const double kC = 1.0 / std::sqrt(2.0 * std::numbers::pi) * std::numbers::sqrt2 / 2.0;  // 0.28209...

}  // namespace

TEST_CASE("multiplication table") {
    const auto i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    CHECK(i * j == k);
    CHECK(j * k == i);
    CHECK(k * i == j);
    CHECK(j * i == -k);
    CHECK(k * j == -i);
    CHECK(i * k == -j);
    CHECK(i * i == Quaternion(-1));
    CHECK(j * j == Quaternion(-1));
    CHECK(k * k == Quaternion(-1));
    CHECK(mul(Quaternion(1, 1), Quaternion(1, 0, 1)) == Quaternion(1, 1, 1, 1));
}

TEST_CASE("conjugate and norm") {
    CHECK(conj(Quaternion(1, 1, 1, 1)) == Quaternion(1, -1, -1, -1));
    const Quaternion p(2, -3);
    CHECK(conj(conj(p)) == p);
    const auto i = Quaternion::i(), j = Quaternion::j();
    CHECK(conj(i * j) == conj(j) * conj(i));
    CHECK(conj(i * j) == -Quaternion::k());
    CHECK(norm(Quaternion(1, 1, 1, 1)) == 2.0);
    CHECK(norm(Quaternion()) == 0.0);
    CHECK(norm(Quaternion(1, 1) * Quaternion(1, 0, 1)) == Approx(2.0).epsilon(1e-15));
    const Quaternion q(0.3, -1.2, 0.7, 2.5);
    CHECK(near(q * conj(q), Quaternion(norm2(q)), 1e-15));
    CHECK(near(q * inverse(q), Quaternion(1), 1e-15));
}

TEST_CASE("unit exponentials") {
    CHECK(near(unit_exp(Axis::I, std::numbers::pi / 2), Quaternion::i(), 1e-16));
    CHECK(unit_exp(Axis::J, 0.0) == Quaternion(1));
    const auto p = unit_exp(Axis::I, -std::numbers::pi / 4) * unit_exp(Axis::J, -std::numbers::pi / 4);
    CHECK(near(p, Quaternion(0.5, -0.5, -0.5, 0.5), 1e-15));
    CHECK(norm(unit_exp(Axis::J, 1.234)) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("inverse square-root prefactor") {
    CHECK(near(inv_sqrt_2pib(Axis::I, 1.0), Quaternion(kC, -kC), 1e-15));
    CHECK(near(inv_sqrt_2pib(Axis::J, 1.0), Quaternion(kC, 0, -kC), 1e-15));
    CHECK(near(inv_sqrt_2pib(Axis::I, -1.0), Quaternion(kC, kC), 1e-15));
    CHECK(kC == Approx(0.28209).margin(1e-5));
    CHECK_THROWS_AS(inv_sqrt_2pib(Axis::I, 0.0), DomainError);
    CHECK_THROWS_AS(sqrt_2pib(Axis::J, 0.0), DomainError);

    for (double b : {1.0, -1.0, 2.5, -0.3}) {
        for (Axis axis : {Axis::I, Axis::J}) {
            const auto s = inv_sqrt_2pib(axis, b);
            // s^2 * (2 pi b axis) = 1
            const auto target = axis_complex(axis, 0.0, 2.0 * std::numbers::pi * b);
            CHECK(near(s * s * target, Quaternion(1), 1e-12));
            CHECK(near(s * sqrt_2pib(axis, b), Quaternion(1), 1e-15));
        }
    }
}

TEST_CASE("randomized algebra laws") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    auto draw = [&] { return Quaternion(U(rng), U(rng), U(rng), U(rng)); };
    double worst_norm = 0.0, worst_conj = 0.0, worst_exp = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const auto p = draw(), q = draw();
        const double lhs = norm(p * q), rhs = norm(p) * norm(q);
        worst_norm = std::max(worst_norm, std::fabs(lhs - rhs) / std::max(rhs, 1e-300));
        worst_conj = std::max(worst_conj, max_abs_component(conj(p * q) - conj(q) * conj(p)));
        const double a = U(rng), b = U(rng);
        const Axis axis = n % 2 ? Axis::I : Axis::J;
        worst_exp = std::max(worst_exp, max_abs_component(unit_exp(axis, a) * unit_exp(axis, b) - unit_exp(axis, a + b)));
    }
    CHECK(worst_norm <= 1e-12);
    CHECK(worst_conj <= 1e-14);
    CHECK(worst_exp <= 1e-12);
}
