#include "qwvd/olct.hpp"

#include <cmath>
#include <string>

#include "qwvd/error.hpp"
#include "text_util.hpp"

namespace qwvd {

OLCTParams OLCTParams::make(double a, double b, double c, double d, double r, double s) {
    OLCTParams A{a, b, c, d, r, s};
    const double det = A.determinant();
    if (!(std::fabs(det - 1.0) <= 1e-12)) {
        throw DeterminantError("parameter matrix determinant ad - bc = " + detail::fmt17(det) +
                               ", must equal 1");
    }
    return A;
}

OLCTParams qlct_params(double a, double b, double c, double d) {
    return OLCTParams::make(a, b, c, d, 0.0, 0.0);
}

OLCTParams qft_params() { return OLCTParams{0.0, 1.0, -1.0, 0.0, 0.0, 0.0}; }

double kernel_phase(const OLCTParams& A, double t, double u) {
    return (A.a * t * t + 2.0 * t * (A.r - u) - 2.0 * u * (A.d * A.r - A.b * A.s) + A.d * u * u +
            A.d * A.r * A.r) /
           (2.0 * A.b);
}

Quaternion kernel(Axis axis, const OLCTParams& A, double t, double u, bool inverse) {
    if (A.b == 0.0) {
        throw DegenerateParameterError("kernel: b = 0 has no integral kernel (chirp branch)");
    }
    const Quaternion k = inv_sqrt_2pib(axis, A.b) * unit_exp(axis, kernel_phase(A, t, u));
    return inverse ? conj(k) : k;
}

KernelTables::KernelTables(const ParamPair& params, std::span<const double> in1,
                           std::span<const double> in2, std::span<const double> out1,
                           std::span<const double> out2, Direction direction)
    : in1_(in1.size()),
      in2_(in2.size()),
      out1_(out1.size()),
      out2_(out2.size()),
      left_(in1_ * out1_),
      right_(in2_ * out2_) {
    const bool forward = direction == Direction::Forward;
    for (std::size_t o = 0; o < out1_; ++o) {
        for (std::size_t k = 0; k < in1_; ++k) {
            left_[o * in1_ + k] = forward ? kernel(Axis::I, params.A1, in1[k], out1[o])
                                          : kernel(Axis::I, params.A1, out1[o], in1[k], true);
        }
    }
    for (std::size_t k = 0; k < in2_; ++k) {
        for (std::size_t o = 0; o < out2_; ++o) {
            right_[k * out2_ + o] = forward ? kernel(Axis::J, params.A2, in2[k], out2[o])
                                            : kernel(Axis::J, params.A2, out2[o], in2[k], true);
        }
    }
}

void KernelTables::left_contract(std::span<const Quaternion> values, std::size_t o1,
                                 std::vector<Quaternion>& partial) const {
    partial.assign(in2_, Quaternion{});
    for (std::size_t k1 = 0; k1 < in1_; ++k1) {
        const Quaternion l = left(o1, k1);
        const Quaternion* row = values.data() + k1 * in2_;
        for (std::size_t k2 = 0; k2 < in2_; ++k2) partial[k2] += l * row[k2];
    }
}

void KernelTables::apply(std::span<const Quaternion> values, double weight,
                         std::span<Quaternion> out) const {
    if (values.size() != in1_ * in2_ || out.size() != out1_ * out2_) {
        throw ShapeError("KernelTables::apply: size mismatch");
    }
    std::vector<Quaternion> partial;
    for (std::size_t o1 = 0; o1 < out1_; ++o1) {
        left_contract(values, o1, partial);
        for (std::size_t o2 = 0; o2 < out2_; ++o2) {
            Quaternion acc;
            for (std::size_t k2 = 0; k2 < in2_; ++k2) acc += partial[k2] * right(k2, o2);
            out[o1 * out2_ + o2] = acc * weight;
        }
    }
}

Quaternion KernelTables::apply_one(std::span<const Quaternion> values, double weight,
                                   std::size_t o1, std::size_t o2) const {
    if (values.size() != in1_ * in2_) throw ShapeError("KernelTables::apply_one: size mismatch");
    std::vector<Quaternion> partial;
    left_contract(values, o1, partial);
    Quaternion acc;
    for (std::size_t k2 = 0; k2 < in2_; ++k2) acc += partial[k2] * right(k2, o2);
    return acc * weight;
}

Quaternion qolct_forward(const AnalyticSignal& f, const ParamPair& params, Vec2 u,
                         const GridSpec2D& spec) {
    return qolct_forward(sample(f, spec), params, u);
}

Quaternion qolct_forward(const SignalGrid& f, const ParamPair& params, Vec2 u) {
    const auto t = f.spec.points();
    const double u1[] = {u[0]};
    const double u2[] = {u[1]};
    const KernelTables tables(params, t, t, u1, u2, KernelTables::Direction::Forward);
    return tables.apply_one(f.values, f.spec.cell_area(), 0, 0);
}

SignalGrid qolct_forward_grid(const SignalGrid& f, const ParamPair& params,
                              const GridSpec2D& u_spec) {
    const auto t = f.spec.points();
    const auto u = u_spec.points();
    const KernelTables tables(params, t, t, u, u, KernelTables::Direction::Forward);
    SignalGrid out(u_spec);
    tables.apply(f.values, f.spec.cell_area(), out.values);
    return out;
}

Quaternion qolct_inverse(const SignalGrid& transform, const ParamPair& params, Vec2 t) {
    const auto u = transform.spec.points();
    const double t1[] = {t[0]};
    const double t2[] = {t[1]};
    const KernelTables tables(params, u, u, t1, t2, KernelTables::Direction::Inverse);
    return tables.apply_one(transform.values, transform.spec.cell_area(), 0, 0);
}

}  // namespace qwvd
