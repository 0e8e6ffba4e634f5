#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "qwvd/grid.hpp"
#include "qwvd/olct.hpp"

namespace qwvd {

/// W(t, u) sampled on t_spec x u_spec, indexed (kt1, kt2, ku1, ku2) row-major.
struct WVDGrid {
    GridSpec2D t_spec;
    GridSpec2D u_spec;
    std::vector<Quaternion> values;

    WVDGrid(GridSpec2D t, GridSpec2D u) : t_spec(t), u_spec(u), values(t.size() * u.size()) {}

    std::size_t index(int kt1, int kt2, int ku1, int ku2) const {
        const std::size_t t = static_cast<std::size_t>(kt1) * t_spec.n() + kt2;
        const std::size_t u = static_cast<std::size_t>(ku1) * u_spec.n() + ku2;
        return t * u_spec.size() + u;
    }
    Quaternion& at(int kt1, int kt2, int ku1, int ku2) { return values[index(kt1, kt2, ku1, ku2)]; }
    const Quaternion& at(int kt1, int kt2, int ku1, int ku2) const {
        return values[index(kt1, kt2, ku1, ku2)];
    }
};

/// h(t, n) = f(t + n/2) conj(g(t - n/2)).
Quaternion corr_product(const AnalyticSignal& f, const AnalyticSignal& g, Vec2 t, Vec2 n);

/// The two half-shifted factors of a correlation product. `second` is used as
/// is (no conjugation), which lets callers substitute alternative second factors.
struct ProductFactors {
    SignalFn first;
    SignalFn second;
};

/// Factors f and conj(g) of the ordinary correlation product.
ProductFactors correlation_factors(const AnalyticSignal& f, const AnalyticSignal& g);

/// WVD-QOLCT at a single (t, u). Dispatches on b1, b2 = 0:
///  - b1, b2 != 0: midpoint sum over n_spec of K^i(n1,u1) h(t,n) K^j(n2,u2);
///  - one b zero: chirp multiplication on that axis, 1D sum on the other;
///  - both zero: pure chirp product, n_spec unused.
Quaternion wvd_point(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                     Vec2 t, Vec2 u, const GridSpec2D& n_spec);
Quaternion wvd_point(const ProductFactors& factors, const ParamPair& params, Vec2 t, Vec2 u,
                     const GridSpec2D& n_spec);

/// W(t, u_m) for a list of frequencies, sharing one correlation-product table.
/// Each entry is bit-identical to wvd_point at the same arguments.
std::vector<Quaternion> wvd_points(const ProductFactors& factors, const ParamPair& params, Vec2 t,
                                   std::span<const Vec2> u_list, const GridSpec2D& n_spec);

/// Full 4D distribution; cells are independent and bit-identical to wvd_point.
WVDGrid wvd_grid(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                 const GridSpec2D& t_spec, const GridSpec2D& u_spec, const GridSpec2D& n_spec,
                 bool serial = false);

/// u -> W(t, u) on u_spec.
SignalGrid wvd_u_slice(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                       Vec2 t, const GridSpec2D& u_spec, const GridSpec2D& n_spec);
/// t -> W(t, u) on t_spec.
SignalGrid wvd_t_slice(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                       Vec2 u, const GridSpec2D& t_spec, const GridSpec2D& n_spec, bool serial = false);

/// Grid-only variant for sampled inputs. t must be the grid node (k1, k2);
/// offsets n = 2 m spacing keep t +- n/2 on the grid, with m limited by the
/// grid edges. second_factor is used without conjugation.
Quaternion wvd_point_sampled(const SignalGrid& first, const SignalGrid& second_factor,
                             const ParamPair& params, int k1, int k2, Vec2 u);

/// Grid holding conj of every sample.
SignalGrid conj(const SignalGrid& g);

/// Recovers f(t) from u -> W(t/2, u): (1 / conj g(0)) times the inverse
/// transform evaluated at t, the reciprocal applied from the left.
/// Throws ReconstructionUndefinedError when |g(0)| <= 1e-12.
Quaternion reconstruct(const SignalGrid& w_slice_at_half_t, const Quaternion& g_at_origin,
                       const ParamPair& params, Vec2 t);
/// Same, computing the slice W(t/2, .) on u_spec on demand.
Quaternion reconstruct(const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& params,
                       Vec2 t, const GridSpec2D& u_spec, const GridSpec2D& n_spec);

/// <W1, W2> = sum W1 conj(W2) dt du. Throws ShapeError on mismatched grids.
Quaternion wvd_inner_product(const WVDGrid& w1, const WVDGrid& w2);

/// CSV header kt1,kt2,ku1,ku2,t1,t2,u1,u2,w,x,y,z.
void write_wvd_csv(std::ostream& os, const WVDGrid& w);

/// Plain PGM (P2) magnitude heatmap, 8-bit, linearly scaled to the maximum.
/// Rows follow the first index.
void write_pgm(std::ostream& os, const SignalGrid& slice);

}  // namespace qwvd
