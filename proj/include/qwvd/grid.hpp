#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "qwvd/quaternion.hpp"

namespace qwvd {

using Vec2 = std::array<double, 2>;

/// Quaternion-valued function on R^2.
using SignalFn = std::function<Quaternion(double, double)>;

/// Uniform centered midpoint grid on [-L, L] per axis:
/// t_k = -L + (k + 1/2) * spacing, spacing = 2L / n.
/// Odd n places a sample exactly at the origin.
class GridSpec2D {
   public:
    GridSpec2D(int n, double half_width);

    int n() const { return n_; }
    double half_width() const { return half_width_; }
    double spacing() const { return spacing_; }
    double point(int k) const { return -half_width_ + (k + 0.5) * spacing_; }
    std::vector<double> points() const;
    /// Area of one quadrature cell.
    double cell_area() const { return spacing_ * spacing_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    /// Refined grid with round(n * factor) samples on the same interval.
    GridSpec2D refined(double factor) const;

    friend bool operator==(const GridSpec2D& a, const GridSpec2D& b) {
        return a.n_ == b.n_ && a.half_width_ == b.half_width_;
    }

   private:
    int n_;
    double half_width_;
    double spacing_;
};

/// unit_exp(i, mod_i t1) * coeff * exp(-alpha |t - shift|^2) * unit_exp(j, mod_j t2)
struct GaussianAtom {
    Quaternion coeff{1.0};
    double alpha = std::numbers::pi;
    Vec2 shift{0.0, 0.0};
    double mod_i = 0.0;
    double mod_j = 0.0;

    Quaternion operator()(double t1, double t2) const;
};

/// Closed-form test signal: a finite sum of Gaussian atoms. A single atom is
/// the common case; sums express superpositions such as f + g or odd
/// differences of shifted Gaussians.
class AnalyticSignal {
   public:
    AnalyticSignal() = default;  // the zero signal
    explicit AnalyticSignal(GaussianAtom atom);
    explicit AnalyticSignal(std::vector<GaussianAtom> atoms);

    /// coeff * exp(-alpha |t - shift|^2), unmodulated.
    static AnalyticSignal gaussian(Quaternion coeff = 1.0, double alpha = std::numbers::pi,
                                   Vec2 shift = {0.0, 0.0});

    Quaternion operator()(double t1, double t2) const;
    Quaternion operator()(const Vec2& t) const { return (*this)(t[0], t[1]); }

    const std::vector<GaussianAtom>& atoms() const { return atoms_; }
    bool is_zero() const { return atoms_.empty(); }

    /// Sum of the atoms of both signals.
    friend AnalyticSignal operator+(const AnalyticSignal& f, const AnalyticSignal& g);
    /// Real scaling of every atom coefficient.
    friend AnalyticSignal operator*(double s, const AnalyticSignal& f);

    /// Text form accepted by parse_signal.
    std::string describe() const;

   private:
    std::vector<GaussianAtom> atoms_;
};

/// Parses `coeff=w,x,y,z;alpha=a;shift=s1,s2;modi=m;modj=m`; missing keys take
/// the unit-Gaussian defaults. Atoms of a sum are separated by '|'. The literal
/// `zero` gives the zero signal. Throws std::invalid_argument on bad input.
AnalyticSignal parse_signal(const std::string& text);

/// Sampled quaternion signal, row-major values[k1 * n + k2].
struct SignalGrid {
    GridSpec2D spec;
    std::vector<Quaternion> values;

    explicit SignalGrid(GridSpec2D s) : spec(s), values(s.size()) {}

    Quaternion& at(int k1, int k2) { return values[static_cast<std::size_t>(k1) * spec.n() + k2]; }
    const Quaternion& at(int k1, int k2) const {
        return values[static_cast<std::size_t>(k1) * spec.n() + k2];
    }
};

SignalGrid sample(const AnalyticSignal& f, const GridSpec2D& spec);
SignalGrid sample(const SignalFn& f, const GridSpec2D& spec);

/// Midpoint rule: sum of values times cell area.
Quaternion integrate(const SignalGrid& g);

/// <f, g> = integral of f(t) conj(g(t)). Throws ShapeError on mismatched grids.
Quaternion inner_product(const SignalGrid& f, const SignalGrid& g);

double l2_norm(const SignalGrid& f);

/// CSV with header k1,k2,t1,t2,w,x,y,z, row-major, 17 significant digits.
void write_signal_csv(std::ostream& os, const SignalGrid& g);
/// Inverse of write_signal_csv; recovers n and L from the rows.
SignalGrid read_signal_csv(std::istream& is);

}  // namespace qwvd
