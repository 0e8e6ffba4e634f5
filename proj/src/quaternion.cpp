#include "qwvd/quaternion.hpp"

#include "qwvd/error.hpp"

namespace qwvd {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Quaternion inv_sqrt_2pib(Axis axis, double b) {
    if (b == 0.0) {
        throw DomainError("inv_sqrt_2pib: b must be nonzero");
    }
    const double sign = b > 0.0 ? 1.0 : -1.0;
    return unit_exp(axis, -sign * std::numbers::pi / 4.0) / std::sqrt(kTwoPi * std::fabs(b));
}

Quaternion sqrt_2pib(Axis axis, double b) {
    if (b == 0.0) {
        throw DomainError("sqrt_2pib: b must be nonzero");
    }
    const double sign = b > 0.0 ? 1.0 : -1.0;
    return unit_exp(axis, sign * std::numbers::pi / 4.0) * std::sqrt(kTwoPi * std::fabs(b));
}

}  // namespace qwvd
