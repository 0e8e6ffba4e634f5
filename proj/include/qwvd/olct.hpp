#pragma once

#include <span>
#include <vector>

#include "qwvd/grid.hpp"
#include "qwvd/quaternion.hpp"

namespace qwvd {

/// Augmented matrix [a b | r; c d | s] with ad - bc = 1.
struct OLCTParams {
    double a = 0.0;
    double b = 1.0;
    double c = -1.0;
    double d = 0.0;
    double r = 0.0;
    double s = 0.0;

    /// Validated constructor; throws DeterminantError when |ad - bc - 1| > 1e-12.
    static OLCTParams make(double a, double b, double c, double d, double r = 0.0, double s = 0.0);

    double determinant() const { return a * d - b * c; }

    friend bool operator==(const OLCTParams&, const OLCTParams&) = default;
};

/// Offset-free special case (r = s = 0).
OLCTParams qlct_params(double a, double b, double c, double d);
/// (0, 1, -1, 0 | 0, 0): the quaternion Fourier case.
OLCTParams qft_params();

/// A1 drives the left i-kernel, A2 the right j-kernel.
struct ParamPair {
    OLCTParams A1 = qft_params();
    OLCTParams A2 = qft_params();

    static ParamPair same(const OLCTParams& A) { return {A, A}; }
    const OLCTParams& operator[](Axis axis) const { return axis == Axis::I ? A1 : A2; }

    friend bool operator==(const ParamPair&, const ParamPair&) = default;
};

/// Phase of the kernel: [a t^2 + 2t(r-u) - 2u(dr - bs) + d u^2 + d r^2] / (2b).
double kernel_phase(const OLCTParams& A, double t, double u);

/// inv_sqrt_2pib(axis, b) * e^{axis * phase}. With inverse = true returns the
/// conjugate (the inverse-transform kernel at the same arguments).
/// Throws DegenerateParameterError for b = 0.
Quaternion kernel(Axis axis, const OLCTParams& A, double t, double u, bool inverse = false);

/// Precomputed left (axis i) and right (axis j) kernel matrices for a separable
/// two-sided midpoint sum
///
///   out(o1, o2) = weight * sum_{k1,k2} left(o1, k1) * values(k1, k2) * right(k2, o2).
///
/// Forward tables integrate over time points and output frequencies; inverse
/// tables integrate over frequencies with conjugated kernels and output times.
/// Evaluating one output or the full output block performs the same floating
/// point operations in the same order.
class KernelTables {
   public:
    enum class Direction { Forward, Inverse };

    KernelTables(const ParamPair& params, std::span<const double> in1, std::span<const double> in2,
                 std::span<const double> out1, std::span<const double> out2, Direction direction);

    std::size_t in1() const { return in1_; }
    std::size_t in2() const { return in2_; }
    std::size_t out1() const { return out1_; }
    std::size_t out2() const { return out2_; }

    const Quaternion& left(std::size_t o1, std::size_t k1) const { return left_[o1 * in1_ + k1]; }
    const Quaternion& right(std::size_t k2, std::size_t o2) const { return right_[k2 * out2_ + o2]; }

    /// values has in1 * in2 entries; out receives out1 * out2 entries.
    void apply(std::span<const Quaternion> values, double weight, std::span<Quaternion> out) const;
    Quaternion apply_one(std::span<const Quaternion> values, double weight, std::size_t o1,
                         std::size_t o2) const;

   private:
    void left_contract(std::span<const Quaternion> values, std::size_t o1,
                       std::vector<Quaternion>& partial) const;

    std::size_t in1_, in2_, out1_, out2_;
    std::vector<Quaternion> left_;
    std::vector<Quaternion> right_;
};

/// Two-sided transform sum K^i(t1,u1) f(t) K^j(t2,u2) over the grid.
Quaternion qolct_forward(const AnalyticSignal& f, const ParamPair& params, Vec2 u,
                         const GridSpec2D& spec);
Quaternion qolct_forward(const SignalGrid& f, const ParamPair& params, Vec2 u);
/// Forward transform sampled on a whole u-grid.
SignalGrid qolct_forward_grid(const SignalGrid& f, const ParamPair& params, const GridSpec2D& u_spec);

/// Inverse transform: sum over the u-grid of conj K^i(t1,u1) F(u) conj K^j(t2,u2).
Quaternion qolct_inverse(const SignalGrid& transform, const ParamPair& params, Vec2 t);

}  // namespace qwvd
