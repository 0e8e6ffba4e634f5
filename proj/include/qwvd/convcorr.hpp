#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qwvd/grid.hpp"
#include "qwvd/olct.hpp"
#include "qwvd/wvd.hpp"

namespace qwvd {

/// Reading of the second half-shifted factor in the WVD of a convolved signal.
enum class SecondFactor {
    ConjOfConvolution,        ///< conj((f * g)(t - n/2)), the plain WVD of f * g
    ConvolutionOfConjugates,  ///< (conj f * conj g)(t - n/2)
};

/// Sign of the r2^2 term in the right prefactor phase d2 (u2^2 +- r2^2).
enum class CorrSign { StatementPlus, ProofMinus };

struct TheoremVariant {
    SecondFactor second_factor = SecondFactor::ConjOfConvolution;
    CorrSign corr_sign = CorrSign::StatementPlus;

    /// e.g. "conj-conv/plus"
    std::string label() const;
    static std::array<TheoremVariant, 4> all();

    friend bool operator==(const TheoremVariant&, const TheoremVariant&) = default;
};

std::string to_string(SecondFactor v);  // "conj-conv" | "conv-conj"
std::string to_string(CorrSign v);      // "plus" | "minus"
SecondFactor parse_second_factor(const std::string& text);
CorrSign parse_corr_sign(const std::string& text);

/// Convolution weight e^{-axis (a/b) 2 z (t - z)}. Throws DegenerateParameterError for b = 0.
Quaternion weight_psi(Axis axis, const OLCTParams& A, double z, double t);
/// Correlation chirp e^{axis (a/b) 2 z (z + t)}.
Quaternion correlation_weight(Axis axis, const OLCTParams& A, double z, double t);

/// (f * g)(t) = sum_z psi_i(z1,t1) f(z) g(t - z) psi_j(z2,t2) dz with f sampled
/// once on z_spec; g is evaluated exactly at t - z.
class ConvolutionOperator {
   public:
    ConvolutionOperator(const SignalFn& f, SignalFn g, const ParamPair& params, const GridSpec2D& z_spec);
    Quaternion operator()(double t1, double t2) const;

   private:
    SignalGrid f_;
    SignalFn g_;
    ParamPair params_;
};

/// (f o g)(t) = sum_z e^{i(a1/b1)2z1(z1+t1)} conj f(z) g(z + t) e^{j(a2/b2)2z2(z2+t2)} dz.
class CorrelationOperator {
   public:
    CorrelationOperator(const SignalFn& f, SignalFn g, const ParamPair& params, const GridSpec2D& z_spec);
    Quaternion operator()(double t1, double t2) const;

   private:
    SignalGrid conj_f_;
    SignalFn g_;
    ParamPair params_;
};

Quaternion convolve(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params, Vec2 t,
                    const GridSpec2D& z_spec);
Quaternion correlate(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params, Vec2 t,
                     const GridSpec2D& z_spec);

/// Discrete convolution/correlation of samples on an odd-n grid (a lattice
/// through the origin); results on the same lattice, samples outside count as 0.
SignalGrid convolve_sampled(const SignalGrid& f, const SignalGrid& g, const ParamPair& params);
SignalGrid correlate_sampled(const SignalGrid& f, const SignalGrid& g, const ParamPair& params);

/// Which operator a theorem is about.
enum class Operation { Convolution, Correlation };

/// Results for a probe set t_list x u_list, stored [ti * u_list.size() + ui].
using ProbeValues = std::vector<Quaternion>;

/// Left-hand side: WVD-QOLCT of the convolved/correlated signal by nested
/// quadrature (outer n_spec, inner z_spec), operator values cached per point.
ProbeValues wvd_of_operation(Operation op, const AnalyticSignal& f, const AnalyticSignal& g,
                             const ParamPair& params, std::span<const Vec2> t_list,
                             std::span<const Vec2> u_list, const GridSpec2D& n_spec,
                             const GridSpec2D& z_spec, SecondFactor second, bool serial = false);

Quaternion wvd_of_convolution(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                              Vec2 t, Vec2 u, const GridSpec2D& n_spec, const GridSpec2D& z_spec,
                              SecondFactor second);
Quaternion wvd_of_correlation(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                              Vec2 t, Vec2 u, const GridSpec2D& n_spec, const GridSpec2D& z_spec,
                              SecondFactor second);

/// Independent route for the left-hand side: sample f, g on an odd-n lattice,
/// form the discrete operator, then take the grid-only WVD. Every probe t
/// must be a lattice node (throws std::invalid_argument otherwise).
ProbeValues wvd_of_operation_sampled(Operation op, const AnalyticSignal& f, const AnalyticSignal& g,
                                     const ParamPair& params, std::span<const Vec2> t_list,
                                     std::span<const Vec2> u_list, const GridSpec2D& lattice,
                                     SecondFactor second);

/// Prefactors multiplying the w-integral from the left (axis i) and right (axis j).
struct Prefactors {
    Quaternion left;
    Quaternion right;
};

/// Prefactor layout: the full offset form, the offset-free form (r = s = 0)
/// and the Fourier form (constants sqrt(2 pi i), sqrt(2 pi j)).
enum class RhsForm { General, Qlct, Qft };

/// sqrt(2 pi b1 i) e^{-i/(2b1)[d1(u1^2+r1^2) - 2u1(d1r1-b1s1)]} and the j analogue
/// with d2(u2^2 +- r2^2) selected by sign.
Prefactors conv_theorem_prefactors(const ParamPair& params, Vec2 u, CorrSign sign);
/// As above with +2u(dr - bs) in both phases.
Prefactors corr_theorem_prefactors(const ParamPair& params, Vec2 u, CorrSign sign);
/// sqrt(2 pi b i) e^{-i d u^2 / (2b)} forms; requires r = s = 0 on both axes.
Prefactors qlct_theorem_prefactors(const ParamPair& params, Vec2 u);
/// sqrt(2 pi i), sqrt(2 pi j).
Prefactors qft_theorem_prefactors();

/// Picks Qft for Fourier parameters, Qlct when r = s = 0, General otherwise.
RhsForm natural_form(const ParamPair& params);
std::string to_string(RhsForm form);

/// Bare w-integral of the right-hand side, without the prefactors.
ProbeValues theorem_rhs_integral(Operation op, const AnalyticSignal& f, const AnalyticSignal& g,
                                 const ParamPair& params, std::span<const Vec2> t_list,
                                 std::span<const Vec2> u_list, const GridSpec2D& w_spec,
                                 const GridSpec2D& n_spec, bool serial = false);

/// Prefactors for one probe frequency.
Prefactors theorem_prefactors(Operation op, const ParamPair& params, Vec2 u, CorrSign sign, RhsForm form);

/// Right-hand side of the convolution theorem:
///   left * { sum_w e^{-i(a1/b1)4w1(t1-w1)} W_ff(w,u) W_gg(t-w,u) e^{-j(a2/b2)4w2(t2-w2)} dw } * right
/// Correlation: chirps e^{+i(a1/b1)4w1(t1+w1)}, factors W_ff(w,-u) W_gg(t+w,u).
/// Auto-WVD values are computed once per distinct point.
ProbeValues theorem_rhs(Operation op, const AnalyticSignal& f, const AnalyticSignal& g,
                        const ParamPair& params, std::span<const Vec2> t_list,
                        std::span<const Vec2> u_list, const GridSpec2D& w_spec,
                        const GridSpec2D& n_spec, CorrSign sign, RhsForm form = RhsForm::General,
                        bool serial = false);

Quaternion conv_theorem_rhs(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                            Vec2 t, Vec2 u, const GridSpec2D& w_spec, const GridSpec2D& n_spec,
                            CorrSign sign = CorrSign::StatementPlus);
Quaternion corr_theorem_rhs(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                            Vec2 t, Vec2 u, const GridSpec2D& w_spec, const GridSpec2D& n_spec,
                            CorrSign sign = CorrSign::StatementPlus);

}  // namespace qwvd
