#include "qwvd/wvd.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "qwvd/error.hpp"
#include "qwvd/parallel.hpp"
#include "text_util.hpp"

namespace qwvd {

namespace {

// Principal square root of d as an element of the axis plane.
Quaternion sqrt_on_axis(Axis axis, double d) {
    return d >= 0.0 ? Quaternion{std::sqrt(d)} : axis_complex(axis, 0.0, std::sqrt(-d));
}

// sqrt(d) e^{axis (c d (u - r)^2 / 2 + u r)}: the b = 0 chirp factor.
Quaternion degenerate_chirp(Axis axis, const OLCTParams& A, double u) {
    const double du = u - A.r;
    return sqrt_on_axis(axis, A.d) * unit_exp(axis, 0.5 * A.c * A.d * du * du + u * A.r);
}

// Half offset d (u - r) / 2 substituted for n/2 on a b = 0 axis.
double degenerate_offset(const OLCTParams& A, double u) { return 0.5 * A.d * (u - A.r); }

std::vector<Quaternion> product_table(const ProductFactors& factors, Vec2 t,
                                      std::span<const double> n) {
    const std::size_t m = n.size();
    std::vector<Quaternion> h(m * m);
    for (std::size_t k1 = 0; k1 < m; ++k1) {
        const double half1 = 0.5 * n[k1];
        for (std::size_t k2 = 0; k2 < m; ++k2) {
            const double half2 = 0.5 * n[k2];
            h[k1 * m + k2] =
                factors.first(t[0] + half1, t[1] + half2) * factors.second(t[0] - half1, t[1] - half2);
        }
    }
    return h;
}

bool main_branch(const ParamPair& params) { return params.A1.b != 0.0 && params.A2.b != 0.0; }

Quaternion degenerate_point(const ProductFactors& factors, const ParamPair& params, Vec2 t, Vec2 u,
                            const GridSpec2D& n_spec) {
    const auto& A1 = params.A1;
    const auto& A2 = params.A2;
    const double dn = n_spec.spacing();
    if (A1.b == 0.0 && A2.b == 0.0) {
        const double h1 = degenerate_offset(A1, u[0]);
        const double h2 = degenerate_offset(A2, u[1]);
        return degenerate_chirp(Axis::I, A1, u[0]) * factors.first(t[0] + h1, t[1] + h2) *
               factors.second(t[0] - h1, t[1] - h2) * degenerate_chirp(Axis::J, A2, u[1]);
    }
    if (A1.b == 0.0) {
        const double h1 = degenerate_offset(A1, u[0]);
        Quaternion acc;
        for (int k = 0; k < n_spec.n(); ++k) {
            const double n2 = n_spec.point(k);
            acc += factors.first(t[0] + h1, t[1] + 0.5 * n2) * factors.second(t[0] - h1, t[1] - 0.5 * n2) *
                   kernel(Axis::J, A2, n2, u[1]);
        }
        return degenerate_chirp(Axis::I, A1, u[0]) * (acc * dn);
    }
    const double h2 = degenerate_offset(A2, u[1]);
    Quaternion acc;
    for (int k = 0; k < n_spec.n(); ++k) {
        const double n1 = n_spec.point(k);
        acc += kernel(Axis::I, A1, n1, u[0]) * factors.first(t[0] + 0.5 * n1, t[1] + h2) *
               factors.second(t[0] - 0.5 * n1, t[1] - h2);
    }
    return (acc * dn) * degenerate_chirp(Axis::J, A2, u[1]);
}

}  // namespace

Quaternion corr_product(const AnalyticSignal& f, const AnalyticSignal& g, Vec2 t, Vec2 n) {
    return f(t[0] + 0.5 * n[0], t[1] + 0.5 * n[1]) * conj(g(t[0] - 0.5 * n[0], t[1] - 0.5 * n[1]));
}

ProductFactors correlation_factors(const AnalyticSignal& f, const AnalyticSignal& g) {
    return {[f](double a, double b) { return f(a, b); },
            [g](double a, double b) { return conj(g(a, b)); }};
}

Quaternion wvd_point(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                     Vec2 t, Vec2 u, const GridSpec2D& n_spec) {
    return wvd_point(correlation_factors(f, g), params, t, u, n_spec);
}

Quaternion wvd_point(const ProductFactors& factors, const ParamPair& params, Vec2 t, Vec2 u,
                     const GridSpec2D& n_spec) {
    const Vec2 u_list[] = {u};
    return wvd_points(factors, params, t, u_list, n_spec).front();
}

std::vector<Quaternion> wvd_points(const ProductFactors& factors, const ParamPair& params, Vec2 t,
                                   std::span<const Vec2> u_list, const GridSpec2D& n_spec) {
    std::vector<Quaternion> out(u_list.size());
    if (!main_branch(params)) {
        for (std::size_t m = 0; m < u_list.size(); ++m) {
            out[m] = degenerate_point(factors, params, t, u_list[m], n_spec);
        }
        return out;
    }
    const auto n = n_spec.points();
    std::vector<double> u1(u_list.size()), u2(u_list.size());
    for (std::size_t m = 0; m < u_list.size(); ++m) {
        u1[m] = u_list[m][0];
        u2[m] = u_list[m][1];
    }
    const KernelTables tables(params, n, n, u1, u2, KernelTables::Direction::Forward);
    const auto h = product_table(factors, t, n);
    for (std::size_t m = 0; m < u_list.size(); ++m) {
        out[m] = tables.apply_one(h, n_spec.cell_area(), m, m);
    }
    return out;
}

WVDGrid wvd_grid(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                 const GridSpec2D& t_spec, const GridSpec2D& u_spec, const GridSpec2D& n_spec,
                 bool serial) {
    WVDGrid w(t_spec, u_spec);
    const auto factors = correlation_factors(f, g);
    const auto t = t_spec.points();
    const auto u = u_spec.points();
    const std::size_t nu = u_spec.size();
    if (!main_branch(params)) {
        parallel_for(
            t_spec.size(),
            [&](std::size_t ti) {
                const Vec2 tp{t[ti / t_spec.n()], t[ti % t_spec.n()]};
                for (std::size_t ui = 0; ui < nu; ++ui) {
                    const Vec2 up{u[ui / u_spec.n()], u[ui % u_spec.n()]};
                    w.values[ti * nu + ui] = degenerate_point(factors, params, tp, up, n_spec);
                }
            },
            serial);
        return w;
    }
    const auto n = n_spec.points();
    const KernelTables tables(params, n, n, u, u, KernelTables::Direction::Forward);
    parallel_for(
        t_spec.size(),
        [&](std::size_t ti) {
            const Vec2 tp{t[ti / t_spec.n()], t[ti % t_spec.n()]};
            const auto h = product_table(factors, tp, n);
            tables.apply(h, n_spec.cell_area(), std::span(w.values).subspan(ti * nu, nu));
        },
        serial);
    return w;
}

SignalGrid wvd_u_slice(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                       Vec2 t, const GridSpec2D& u_spec, const GridSpec2D& n_spec) {
    SignalGrid out(u_spec);
    const auto factors = correlation_factors(f, g);
    if (!main_branch(params)) {
        for (int k1 = 0; k1 < u_spec.n(); ++k1) {
            for (int k2 = 0; k2 < u_spec.n(); ++k2) {
                out.at(k1, k2) =
                    degenerate_point(factors, params, t, {u_spec.point(k1), u_spec.point(k2)}, n_spec);
            }
        }
        return out;
    }
    const auto n = n_spec.points();
    const auto u = u_spec.points();
    const KernelTables tables(params, n, n, u, u, KernelTables::Direction::Forward);
    tables.apply(product_table(factors, t, n), n_spec.cell_area(), out.values);
    return out;
}

SignalGrid wvd_t_slice(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                       Vec2 u, const GridSpec2D& t_spec, const GridSpec2D& n_spec, bool serial) {
    SignalGrid out(t_spec);
    const auto factors = correlation_factors(f, g);
    const Vec2 u_list[] = {u};
    parallel_for(
        t_spec.size(),
        [&](std::size_t ti) {
            const Vec2 tp{t_spec.point(static_cast<int>(ti) / t_spec.n()),
                          t_spec.point(static_cast<int>(ti) % t_spec.n())};
            out.values[ti] = wvd_points(factors, params, tp, u_list, n_spec).front();
        },
        serial);
    return out;
}

Quaternion wvd_point_sampled(const SignalGrid& first, const SignalGrid& second_factor,
                             const ParamPair& params, int k1, int k2, Vec2 u) {
    if (!(first.spec == second_factor.spec)) throw ShapeError("wvd_point_sampled: grid specs differ");
    if (!main_branch(params)) {
        throw DegenerateParameterError("wvd_point_sampled: requires b1, b2 != 0");
    }
    const int n = first.spec.n();
    if (k1 < 0 || k1 >= n || k2 < 0 || k2 >= n) throw ShapeError("wvd_point_sampled: node outside grid");
    const double step = 2.0 * first.spec.spacing();
    const int m1 = std::min(k1, n - 1 - k1);
    const int m2 = std::min(k2, n - 1 - k2);
    std::vector<double> off1, off2;
    for (int m = -m1; m <= m1; ++m) off1.push_back(m * step);
    for (int m = -m2; m <= m2; ++m) off2.push_back(m * step);
    std::vector<Quaternion> h(off1.size() * off2.size());
    for (int a = -m1; a <= m1; ++a) {
        for (int b = -m2; b <= m2; ++b) {
            h[static_cast<std::size_t>(a + m1) * off2.size() + (b + m2)] =
                first.at(k1 + a, k2 + b) * second_factor.at(k1 - a, k2 - b);
        }
    }
    const double u1[] = {u[0]};
    const double u2[] = {u[1]};
    const KernelTables tables(params, off1, off2, u1, u2, KernelTables::Direction::Forward);
    return tables.apply_one(h, step * step, 0, 0);
}

SignalGrid conj(const SignalGrid& g) {
    SignalGrid out(g.spec);
    for (std::size_t n = 0; n < g.values.size(); ++n) out.values[n] = conj(g.values[n]);
    return out;
}

Quaternion reconstruct(const SignalGrid& w_slice_at_half_t, const Quaternion& g_at_origin,
                       const ParamPair& params, Vec2 t) {
    if (!(norm(g_at_origin) > 1e-12)) {
        throw ReconstructionUndefinedError("reconstruct: g(0) vanishes, reconstruction undefined");
    }
    return inverse(conj(g_at_origin)) * qolct_inverse(w_slice_at_half_t, params, t);
}

Quaternion reconstruct(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                       Vec2 t, const GridSpec2D& u_spec, const GridSpec2D& n_spec) {
    const Quaternion g0 = g(0.0, 0.0);
    if (!(norm(g0) > 1e-12)) {
        throw ReconstructionUndefinedError("reconstruct: g(0) vanishes, reconstruction undefined");
    }
    const auto slice = wvd_u_slice(f, g, params, {0.5 * t[0], 0.5 * t[1]}, u_spec, n_spec);
    return reconstruct(slice, g0, params, t);
}

Quaternion wvd_inner_product(const WVDGrid& w1, const WVDGrid& w2) {
    if (!(w1.t_spec == w2.t_spec) || !(w1.u_spec == w2.u_spec)) {
        throw ShapeError("wvd_inner_product: grid specs differ");
    }
    Quaternion sum;
    for (std::size_t n = 0; n < w1.values.size(); ++n) sum += w1.values[n] * conj(w2.values[n]);
    return sum * (w1.t_spec.cell_area() * w1.u_spec.cell_area());
}

void write_wvd_csv(std::ostream& os, const WVDGrid& w) {
    using detail::fmt17;
    os << "kt1,kt2,ku1,ku2,t1,t2,u1,u2,w,x,y,z\n";
    const int nt = w.t_spec.n();
    const int nu = w.u_spec.n();
    for (int a = 0; a < nt; ++a) {
        for (int b = 0; b < nt; ++b) {
            for (int c = 0; c < nu; ++c) {
                for (int d = 0; d < nu; ++d) {
                    const auto& v = w.at(a, b, c, d);
                    os << a << ',' << b << ',' << c << ',' << d << ',' << fmt17(w.t_spec.point(a)) << ','
                       << fmt17(w.t_spec.point(b)) << ',' << fmt17(w.u_spec.point(c)) << ','
                       << fmt17(w.u_spec.point(d)) << ',' << fmt17(v.w) << ',' << fmt17(v.x) << ','
                       << fmt17(v.y) << ',' << fmt17(v.z) << '\n';
                }
            }
        }
    }
}

void write_pgm(std::ostream& os, const SignalGrid& slice) {
    const int n = slice.spec.n();
    double peak = 0.0;
    for (const auto& v : slice.values) peak = std::max(peak, norm(v));
    os << "P2\n" << n << ' ' << n << "\n255\n";
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            const long level = peak > 0.0 ? std::lround(255.0 * norm(slice.at(k1, k2)) / peak) : 0;
            os << level << (k2 + 1 < n ? ' ' : '\n');
        }
    }
}

}  // namespace qwvd
