#pragma once

#include <cmath>
#include <numbers>
#include <ostream>

namespace qwvd {

/// Real quaternion w + x i + y j + z k.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr Quaternion& operator+=(const Quaternion& q) {
        w += q.w;
        x += q.x;
        y += q.y;
        z += q.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& q) {
        w -= q.w;
        x -= q.x;
        y -= q.y;
        z -= q.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
constexpr Quaternion operator-(const Quaternion& p) { return {-p.w, -p.x, -p.y, -p.z}; }
constexpr Quaternion operator*(Quaternion p, double s) { return p *= s; }
constexpr Quaternion operator*(double s, Quaternion p) { return p *= s; }
constexpr Quaternion operator/(Quaternion p, double s) { return p *= (1.0 / s); }

/// Hamilton product. Order matters: i*j = k but j*i = -k.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }

constexpr Quaternion conj(const Quaternion& p) { return {p.w, -p.x, -p.y, -p.z}; }

constexpr double norm2(const Quaternion& p) {
    return p.w * p.w + p.x * p.x + p.y * p.y + p.z * p.z;
}

inline double norm(const Quaternion& p) { return std::sqrt(norm2(p)); }

/// Multiplicative inverse; undefined (inf/nan components) for p = 0.
constexpr Quaternion inverse(const Quaternion& p) { return conj(p) / norm2(p); }

inline double max_abs_component(const Quaternion& p) {
    return std::fmax(std::fmax(std::fabs(p.w), std::fabs(p.x)),
                     std::fmax(std::fabs(p.y), std::fabs(p.z)));
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

/// Imaginary unit carrying a one-sided kernel: i multiplies from the left,
/// j from the right.
enum class Axis { I, J };

constexpr Quaternion axis_unit(Axis axis) {
    return axis == Axis::I ? Quaternion::i() : Quaternion::j();
}

/// re + im * axis
constexpr Quaternion axis_complex(Axis axis, double re, double im) {
    return axis == Axis::I ? Quaternion{re, im, 0.0, 0.0} : Quaternion{re, 0.0, im, 0.0};
}

/// e^{axis * theta} = cos(theta) + axis * sin(theta)
inline Quaternion unit_exp(Axis axis, double theta) {
    return axis_complex(axis, std::cos(theta), std::sin(theta));
}

/// Principal branch of 1 / sqrt(2 pi b axis), b != 0. Throws DomainError for b == 0.
Quaternion inv_sqrt_2pib(Axis axis, double b);

/// Principal branch of sqrt(2 pi b axis); the exact inverse of inv_sqrt_2pib.
Quaternion sqrt_2pib(Axis axis, double b);

}  // namespace qwvd
