#include "qwvd/convcorr.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "qwvd/error.hpp"
#include "qwvd/parallel.hpp"

namespace qwvd {

namespace {

struct PointKey {
    std::uint64_t a, b;
    friend bool operator==(const PointKey&, const PointKey&) = default;
};

struct PointKeyHash {
    std::size_t operator()(const PointKey& k) const {
        return std::hash<std::uint64_t>{}(k.a * 0x9E3779B97F4A7C15ull ^ k.b);
    }
};

// +0.0 folds -0.0 onto the same key.
PointKey key_of(double t1, double t2) {
    return {std::bit_cast<std::uint64_t>(t1 + 0.0), std::bit_cast<std::uint64_t>(t2 + 0.0)};
}

// Memoized function values. Filled once (possibly in parallel), then read-only.
template <class Value>
class PointTable {
   public:
    template <class Eval>
    void fill(const std::vector<Vec2>& points, Eval&& eval, bool serial) {
        std::vector<Vec2> missing;
        std::unordered_map<PointKey, std::size_t, PointKeyHash> seen;
        for (const auto& p : points) {
            const auto key = key_of(p[0], p[1]);
            if (table_.count(key) || seen.count(key)) continue;
            seen.emplace(key, missing.size());
            missing.push_back(p);
        }
        std::vector<Value> values(missing.size());
        parallel_for(missing.size(), [&](std::size_t m) { values[m] = eval(missing[m]); }, serial);
        for (std::size_t m = 0; m < missing.size(); ++m) {
            table_.emplace(key_of(missing[m][0], missing[m][1]), std::move(values[m]));
        }
    }

    const Value* find(double t1, double t2) const {
        const auto it = table_.find(key_of(t1, t2));
        return it == table_.end() ? nullptr : &it->second;
    }

    const Value& at(double t1, double t2) const {
        const Value* v = find(t1, t2);
        if (!v) throw std::logic_error("PointTable: point was not prefilled");
        return *v;
    }

   private:
    std::unordered_map<PointKey, Value, PointKeyHash> table_;
};

void require_main_branch(const ParamPair& params, const char* what) {
    if (params.A1.b == 0.0 || params.A2.b == 0.0) {
        throw DegenerateParameterError(std::string(what) + ": requires b1, b2 != 0");
    }
}

SignalFn conj_fn(SignalFn f) {
    return [f = std::move(f)](double a, double b) { return conj(f(a, b)); };
}

SignalFn as_fn(const AnalyticSignal& f) {
    return [f](double a, double b) { return f(a, b); };
}

int lattice_node(const GridSpec2D& lattice, double t) {
    const double pos = (t + lattice.half_width()) / lattice.spacing() - 0.5;
    const long k = std::lround(pos);
    if (k < 0 || k >= lattice.n() || std::fabs(lattice.point(static_cast<int>(k)) - t) >
                                         1e-9 * lattice.spacing()) {
        throw std::invalid_argument("probe point is not a lattice node");
    }
    return static_cast<int>(k);
}

}  // namespace

std::string to_string(SecondFactor v) {
    return v == SecondFactor::ConjOfConvolution ? "conj-conv" : "conv-conj";
}

std::string to_string(CorrSign v) { return v == CorrSign::StatementPlus ? "plus" : "minus"; }

SecondFactor parse_second_factor(const std::string& text) {
    if (text == "conj-conv") return SecondFactor::ConjOfConvolution;
    if (text == "conv-conj") return SecondFactor::ConvolutionOfConjugates;
    throw std::invalid_argument("second factor must be conj-conv or conv-conj, got '" + text + "'");
}

CorrSign parse_corr_sign(const std::string& text) {
    if (text == "plus") return CorrSign::StatementPlus;
    if (text == "minus") return CorrSign::ProofMinus;
    throw std::invalid_argument("corr sign must be plus or minus, got '" + text + "'");
}

std::string TheoremVariant::label() const {
    return to_string(second_factor) + "/" + to_string(corr_sign);
}

std::array<TheoremVariant, 4> TheoremVariant::all() {
    return {{{SecondFactor::ConjOfConvolution, CorrSign::StatementPlus},
             {SecondFactor::ConjOfConvolution, CorrSign::ProofMinus},
             {SecondFactor::ConvolutionOfConjugates, CorrSign::StatementPlus},
             {SecondFactor::ConvolutionOfConjugates, CorrSign::ProofMinus}}};
}

Quaternion weight_psi(Axis axis, const OLCTParams& A, double z, double t) {
    if (A.b == 0.0) throw DegenerateParameterError("weight_psi: b = 0");
    return unit_exp(axis, -(A.a / A.b) * 2.0 * z * (t - z));
}

Quaternion correlation_weight(Axis axis, const OLCTParams& A, double z, double t) {
    if (A.b == 0.0) throw DegenerateParameterError("correlation_weight: b = 0");
    return unit_exp(axis, (A.a / A.b) * 2.0 * z * (z + t));
}

ConvolutionOperator::ConvolutionOperator(const SignalFn& f, SignalFn g, const ParamPair& params,
                                         const GridSpec2D& z_spec)
    : f_(sample(f, z_spec)), g_(std::move(g)), params_(params) {
    require_main_branch(params, "convolve");
}

Quaternion ConvolutionOperator::operator()(double t1, double t2) const {
    const auto& spec = f_.spec;
    const int n = spec.n();
    const bool chirp1 = params_.A1.a != 0.0;
    const bool chirp2 = params_.A2.a != 0.0;
    std::vector<Quaternion> psi2(n);
    for (int k = 0; k < n; ++k) psi2[k] = weight_psi(Axis::J, params_.A2, spec.point(k), t2);
    Quaternion acc;
    for (int k1 = 0; k1 < n; ++k1) {
        const double z1 = spec.point(k1);
        Quaternion inner;
        for (int k2 = 0; k2 < n; ++k2) {
            Quaternion term = f_.at(k1, k2) * g_(t1 - z1, t2 - spec.point(k2));
            if (chirp2) term = term * psi2[k2];
            inner += term;
        }
        acc += chirp1 ? weight_psi(Axis::I, params_.A1, z1, t1) * inner : inner;
    }
    return acc * spec.cell_area();
}

CorrelationOperator::CorrelationOperator(const SignalFn& f, SignalFn g, const ParamPair& params,
                                         const GridSpec2D& z_spec)
    : conj_f_(conj(sample(f, z_spec))), g_(std::move(g)), params_(params) {
    require_main_branch(params, "correlate");
}

Quaternion CorrelationOperator::operator()(double t1, double t2) const {
    const auto& spec = conj_f_.spec;
    const int n = spec.n();
    const bool chirp1 = params_.A1.a != 0.0;
    const bool chirp2 = params_.A2.a != 0.0;
    std::vector<Quaternion> w2(n);
    for (int k = 0; k < n; ++k) w2[k] = correlation_weight(Axis::J, params_.A2, spec.point(k), t2);
    Quaternion acc;
    for (int k1 = 0; k1 < n; ++k1) {
        const double z1 = spec.point(k1);
        Quaternion inner;
        for (int k2 = 0; k2 < n; ++k2) {
            Quaternion term = conj_f_.at(k1, k2) * g_(z1 + t1, spec.point(k2) + t2);
            if (chirp2) term = term * w2[k2];
            inner += term;
        }
        acc += chirp1 ? correlation_weight(Axis::I, params_.A1, z1, t1) * inner : inner;
    }
    return acc * spec.cell_area();
}

Quaternion convolve(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params, Vec2 t,
                    const GridSpec2D& z_spec) {
    return ConvolutionOperator(as_fn(f), as_fn(g), params, z_spec)(t[0], t[1]);
}

Quaternion correlate(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params, Vec2 t,
                     const GridSpec2D& z_spec) {
    return CorrelationOperator(as_fn(f), as_fn(g), params, z_spec)(t[0], t[1]);
}

namespace {

// Discrete operator on an odd lattice. For convolution the partner index of
// (output j, summation m) is j - m + c, for correlation m + j - c.
SignalGrid sampled_operation(Operation op, const SignalGrid& f, const SignalGrid& g,
                             const ParamPair& params) {
    if (!(f.spec == g.spec)) throw ShapeError("sampled operation: grid specs differ");
    const int n = f.spec.n();
    if (n % 2 == 0) throw ShapeError("sampled operation: lattice needs an odd sample count");
    require_main_branch(params, "sampled operation");
    const int c = (n - 1) / 2;
    const auto pts = f.spec.points();
    // weight tables indexed [output * n + summation]
    std::vector<Quaternion> w1(static_cast<std::size_t>(n) * n), w2(w1.size());
    for (int j = 0; j < n; ++j) {
        for (int m = 0; m < n; ++m) {
            if (op == Operation::Convolution) {
                w1[j * n + m] = weight_psi(Axis::I, params.A1, pts[m], pts[j]);
                w2[j * n + m] = weight_psi(Axis::J, params.A2, pts[m], pts[j]);
            } else {
                w1[j * n + m] = correlation_weight(Axis::I, params.A1, pts[m], pts[j]);
                w2[j * n + m] = correlation_weight(Axis::J, params.A2, pts[m], pts[j]);
            }
        }
    }
    const SignalGrid left = op == Operation::Convolution ? f : conj(f);
    auto partner = [&](int j, int m) { return op == Operation::Convolution ? j - m + c : m + j - c; };
    SignalGrid out(f.spec);
    for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) {
            Quaternion acc;
            for (int m1 = 0; m1 < n; ++m1) {
                const int p1 = partner(j1, m1);
                if (p1 < 0 || p1 >= n) continue;
                Quaternion inner;
                for (int m2 = 0; m2 < n; ++m2) {
                    const int p2 = partner(j2, m2);
                    if (p2 < 0 || p2 >= n) continue;
                    inner += left.at(m1, m2) * g.at(p1, p2) * w2[j2 * n + m2];
                }
                acc += w1[j1 * n + m1] * inner;
            }
            out.at(j1, j2) = acc * f.spec.cell_area();
        }
    }
    return out;
}

}  // namespace

SignalGrid convolve_sampled(const SignalGrid& f, const SignalGrid& g, const ParamPair& params) {
    return sampled_operation(Operation::Convolution, f, g, params);
}

SignalGrid correlate_sampled(const SignalGrid& f, const SignalGrid& g, const ParamPair& params) {
    return sampled_operation(Operation::Correlation, f, g, params);
}

ProbeValues wvd_of_operation(Operation op, const AnalyticSignal& f, const AnalyticSignal& g,
                             const ParamPair& params, std::span<const Vec2> t_list,
                             std::span<const Vec2> u_list, const GridSpec2D& n_spec,
                             const GridSpec2D& z_spec, SecondFactor second, bool serial) {
    require_main_branch(params, "wvd_of_operation");
    auto make = [&](const SignalFn& a, const SignalFn& b) -> SignalFn {
        if (op == Operation::Convolution) return ConvolutionOperator(a, b, params, z_spec);
        return CorrelationOperator(a, b, params, z_spec);
    };
    const SignalFn first = make(as_fn(f), as_fn(g));
    const bool separate_second = second == SecondFactor::ConvolutionOfConjugates;
    const SignalFn second_raw = separate_second ? make(conj_fn(as_fn(f)), conj_fn(as_fn(g))) : first;

    std::vector<Vec2> plus, minus;
    for (const auto& t : t_list) {
        for (int k1 = 0; k1 < n_spec.n(); ++k1) {
            for (int k2 = 0; k2 < n_spec.n(); ++k2) {
                const double h1 = 0.5 * n_spec.point(k1);
                const double h2 = 0.5 * n_spec.point(k2);
                plus.push_back({t[0] + h1, t[1] + h2});
                minus.push_back({t[0] - h1, t[1] - h2});
            }
        }
    }
    PointTable<Quaternion> first_table, second_table;
    auto eval_first = [&](const Vec2& p) { return first(p[0], p[1]); };
    auto eval_second = [&](const Vec2& p) { return second_raw(p[0], p[1]); };
    if (separate_second) {
        first_table.fill(plus, eval_first, serial);
        second_table.fill(minus, eval_second, serial);
    } else {
        plus.insert(plus.end(), minus.begin(), minus.end());
        first_table.fill(plus, eval_first, serial);
    }
    const auto& second_source = separate_second ? second_table : first_table;
    ProductFactors factors{
        [&](double a, double b) { return first_table.at(a, b); },
        separate_second ? SignalFn([&](double a, double b) { return second_source.at(a, b); })
                        : SignalFn([&](double a, double b) { return conj(first_table.at(a, b)); })};

    ProbeValues out;
    out.reserve(t_list.size() * u_list.size());
    for (const auto& t : t_list) {
        const auto values = wvd_points(factors, params, t, u_list, n_spec);
        out.insert(out.end(), values.begin(), values.end());
    }
    return out;
}

Quaternion wvd_of_convolution(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                              Vec2 t, Vec2 u, const GridSpec2D& n_spec, const GridSpec2D& z_spec,
                              SecondFactor second) {
    const Vec2 ts[] = {t};
    const Vec2 us[] = {u};
    return wvd_of_operation(Operation::Convolution, f, g, params, ts, us, n_spec, z_spec, second).front();
}

Quaternion wvd_of_correlation(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                              Vec2 t, Vec2 u, const GridSpec2D& n_spec, const GridSpec2D& z_spec,
                              SecondFactor second) {
    const Vec2 ts[] = {t};
    const Vec2 us[] = {u};
    return wvd_of_operation(Operation::Correlation, f, g, params, ts, us, n_spec, z_spec, second).front();
}

ProbeValues wvd_of_operation_sampled(Operation op, const AnalyticSignal& f, const AnalyticSignal& g,
                                     const ParamPair& params, std::span<const Vec2> t_list,
                                     std::span<const Vec2> u_list, const GridSpec2D& lattice,
                                     SecondFactor second) {
    const SignalGrid fs = sample(f, lattice);
    const SignalGrid gs = sample(g, lattice);
    const SignalGrid first = sampled_operation(op, fs, gs, params);
    const SignalGrid second_factor = second == SecondFactor::ConjOfConvolution
                                         ? conj(first)
                                         : sampled_operation(op, conj(fs), conj(gs), params);
    ProbeValues out;
    out.reserve(t_list.size() * u_list.size());
    for (const auto& t : t_list) {
        const int k1 = lattice_node(lattice, t[0]);
        const int k2 = lattice_node(lattice, t[1]);
        for (const auto& u : u_list) {
            out.push_back(wvd_point_sampled(first, second_factor, params, k1, k2, u));
        }
    }
    return out;
}

namespace {

double r2_term(const OLCTParams& A, CorrSign sign) {
    return sign == CorrSign::StatementPlus ? A.r * A.r : -A.r * A.r;
}

// offset_sign = -1 for the convolution phase [.. - 2u(dr - bs)], +1 for correlation.
Prefactors offset_prefactors(const ParamPair& params, Vec2 u, CorrSign sign, double offset_sign) {
    const auto& A1 = params.A1;
    const auto& A2 = params.A2;
    const double phase1 =
        -(A1.d * (u[0] * u[0] + A1.r * A1.r) + offset_sign * 2.0 * u[0] * (A1.d * A1.r - A1.b * A1.s)) /
        (2.0 * A1.b);
    const double phase2 =
        -(A2.d * (u[1] * u[1] + r2_term(A2, sign)) + offset_sign * 2.0 * u[1] * (A2.d * A2.r - A2.b * A2.s)) /
        (2.0 * A2.b);
    return {sqrt_2pib(Axis::I, A1.b) * unit_exp(Axis::I, phase1),
            sqrt_2pib(Axis::J, A2.b) * unit_exp(Axis::J, phase2)};
}

bool is_offset_free(const OLCTParams& A) { return A.r == 0.0 && A.s == 0.0; }

}  // namespace

Prefactors conv_theorem_prefactors(const ParamPair& params, Vec2 u, CorrSign sign) {
    require_main_branch(params, "conv_theorem_prefactors");
    return offset_prefactors(params, u, sign, -1.0);
}

Prefactors corr_theorem_prefactors(const ParamPair& params, Vec2 u, CorrSign sign) {
    require_main_branch(params, "corr_theorem_prefactors");
    return offset_prefactors(params, u, sign, 1.0);
}

Prefactors qlct_theorem_prefactors(const ParamPair& params, Vec2 u) {
    require_main_branch(params, "qlct_theorem_prefactors");
    if (!is_offset_free(params.A1) || !is_offset_free(params.A2)) {
        throw DomainError("qlct_theorem_prefactors: requires r = s = 0");
    }
    const auto& A1 = params.A1;
    const auto& A2 = params.A2;
    return {sqrt_2pib(Axis::I, A1.b) * unit_exp(Axis::I, -A1.d * u[0] * u[0] / (2.0 * A1.b)),
            sqrt_2pib(Axis::J, A2.b) * unit_exp(Axis::J, -A2.d * u[1] * u[1] / (2.0 * A2.b))};
}

Prefactors qft_theorem_prefactors() { return {sqrt_2pib(Axis::I, 1.0), sqrt_2pib(Axis::J, 1.0)}; }

RhsForm natural_form(const ParamPair& params) {
    if (params.A1 == qft_params() && params.A2 == qft_params()) return RhsForm::Qft;
    if (is_offset_free(params.A1) && is_offset_free(params.A2)) return RhsForm::Qlct;
    return RhsForm::General;
}

std::string to_string(RhsForm form) {
    switch (form) {
        case RhsForm::General: return "general";
        case RhsForm::Qlct: return "qlct";
        case RhsForm::Qft: return "qft";
    }
    return "general";
}

ProbeValues theorem_rhs_integral(Operation op, const AnalyticSignal& f, const AnalyticSignal& g,
                                 const ParamPair& params, std::span<const Vec2> t_list,
                                 std::span<const Vec2> u_list, const GridSpec2D& w_spec,
                                 const GridSpec2D& n_spec, bool serial) {
    require_main_branch(params, "theorem_rhs");
    const bool conv = op == Operation::Convolution;
    const auto& A1 = params.A1;
    const auto& A2 = params.A2;
    const auto w = w_spec.points();
    const int nw = w_spec.n();

    std::vector<Vec2> f_freqs(u_list.begin(), u_list.end());
    if (!conv) {
        for (auto& u : f_freqs) u = {-u[0], -u[1]};
    }
    const std::vector<Vec2> g_freqs(u_list.begin(), u_list.end());

    std::vector<Vec2> f_points, g_points;
    for (int k1 = 0; k1 < nw; ++k1) {
        for (int k2 = 0; k2 < nw; ++k2) f_points.push_back({w[k1], w[k2]});
    }
    const double dir = conv ? -1.0 : 1.0;
    for (const auto& t : t_list) {
        for (const auto& p : f_points) g_points.push_back({t[0] + dir * p[0], t[1] + dir * p[1]});
    }

    const auto ff = correlation_factors(f, f);
    const auto gg = correlation_factors(g, g);
    PointTable<std::vector<Quaternion>> wf, wg;
    wf.fill(f_points, [&](const Vec2& p) { return wvd_points(ff, params, p, f_freqs, n_spec); }, serial);
    wg.fill(g_points, [&](const Vec2& p) { return wvd_points(gg, params, p, g_freqs, n_spec); }, serial);

    ProbeValues out;
    out.reserve(t_list.size() * u_list.size());
    std::vector<Quaternion> chirp1(nw), chirp2(nw);
    for (const auto& t : t_list) {
        for (int k = 0; k < nw; ++k) {
            if (conv) {
                chirp1[k] = unit_exp(Axis::I, -(A1.a / A1.b) * 4.0 * w[k] * (t[0] - w[k]));
                chirp2[k] = unit_exp(Axis::J, -(A2.a / A2.b) * 4.0 * w[k] * (t[1] - w[k]));
            } else {
                chirp1[k] = unit_exp(Axis::I, (A1.a / A1.b) * 4.0 * w[k] * (t[0] + w[k]));
                chirp2[k] = unit_exp(Axis::J, (A2.a / A2.b) * 4.0 * w[k] * (t[1] + w[k]));
            }
        }
        for (std::size_t ui = 0; ui < u_list.size(); ++ui) {
            Quaternion acc;
            for (int k1 = 0; k1 < nw; ++k1) {
                Quaternion inner;
                for (int k2 = 0; k2 < nw; ++k2) {
                    const auto& vf = wf.at(w[k1], w[k2])[ui];
                    const auto& vg = wg.at(t[0] + dir * w[k1], t[1] + dir * w[k2])[ui];
                    inner += vf * vg * chirp2[k2];
                }
                acc += chirp1[k1] * inner;
            }
            out.push_back(acc * w_spec.cell_area());
        }
    }
    return out;
}

Prefactors theorem_prefactors(Operation op, const ParamPair& params, Vec2 u, CorrSign sign, RhsForm form) {
    switch (form) {
        case RhsForm::Qlct: return qlct_theorem_prefactors(params, u);
        case RhsForm::Qft: return qft_theorem_prefactors();
        case RhsForm::General: break;
    }
    return op == Operation::Convolution ? conv_theorem_prefactors(params, u, sign)
                                        : corr_theorem_prefactors(params, u, sign);
}

ProbeValues theorem_rhs(Operation op, const AnalyticSignal& f, const AnalyticSignal& g,
                        const ParamPair& params, std::span<const Vec2> t_list,
                        std::span<const Vec2> u_list, const GridSpec2D& w_spec,
                        const GridSpec2D& n_spec, CorrSign sign, RhsForm form, bool serial) {
    ProbeValues out = theorem_rhs_integral(op, f, g, params, t_list, u_list, w_spec, n_spec, serial);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto pre = theorem_prefactors(op, params, u_list[i % u_list.size()], sign, form);
        out[i] = pre.left * out[i] * pre.right;
    }
    return out;
}

Quaternion conv_theorem_rhs(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                            Vec2 t, Vec2 u, const GridSpec2D& w_spec, const GridSpec2D& n_spec,
                            CorrSign sign) {
    const Vec2 ts[] = {t};
    const Vec2 us[] = {u};
    return theorem_rhs(Operation::Convolution, f, g, params, ts, us, w_spec, n_spec, sign).front();
}

Quaternion corr_theorem_rhs(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                            Vec2 t, Vec2 u, const GridSpec2D& w_spec, const GridSpec2D& n_spec,
                            CorrSign sign) {
    const Vec2 ts[] = {t};
    const Vec2 us[] = {u};
    return theorem_rhs(Operation::Correlation, f, g, params, ts, us, w_spec, n_spec, sign).front();
}

}  // namespace qwvd
