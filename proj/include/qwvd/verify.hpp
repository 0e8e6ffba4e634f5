#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwvd/convcorr.hpp"
#include "qwvd/grid.hpp"
#include "qwvd/olct.hpp"

namespace qwvd {

/// Grid sizes shared by the verifications. Half-widths left at 0 are derived
/// from L: t uses L/2, u uses L * max(1, |a| + |b|) over both parameter sets,
/// n and w use L. The signal grid (norms, inner products, convolution
/// variable) always spans [-L, L].
struct GridSet {
    int n_t = 24;
    int n_u = 24;
    int n_n = 48;
    int n_w = 48;
    int n_s = 64;
    double L = 6.0;
    double L_t = 0.0;
    double L_u = 0.0;
    double L_n = 0.0;
    double L_w = 0.0;

    /// n_t = n_u = n, n_n = n_w = 2n; n_s stays at its default.
    static GridSet from_n(int n, double L = 6.0);

    /// All sample counts multiplied by factor (rounded).
    GridSet scaled(double factor) const;

    GridSpec2D t_spec(const ParamPair& params) const;
    GridSpec2D u_spec(const ParamPair& params) const;
    GridSpec2D n_spec() const;
    GridSpec2D w_spec() const;
    GridSpec2D s_spec() const;

    nlohmann::ordered_json to_json(const ParamPair& params) const;
};

/// Probe times {-1,0,1}^2 and frequencies {(0,0), (1,-1)}.
std::vector<Vec2> default_t_probes();
std::vector<Vec2> default_u_probes();

struct VerificationReport {
    std::string theorem_id;
    ParamPair params;
    std::vector<std::string> signals;
    nlohmann::ordered_json grids;
    std::optional<TheoremVariant> variant;
    double residual = 0.0;
    double tolerance = 0.0;
    std::optional<double> bound_margin;
    bool pass = false;
    bool theorem_mismatch = false;
    std::optional<double> oracle_residual;
    std::optional<double> runtime_seconds;
    std::optional<std::string> error;
    std::vector<std::string> notes;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    /// "-" when no variant applies.
    std::string variant_label() const;
    /// A failure that should change the exit status (mismatch diagnostics do not).
    bool counts_as_failure() const { return !pass && !theorem_mismatch; }
};

/// |a - b| / max(|a|, |b|, 1e-30).
double relative_residual(const Quaternion& a, const Quaternion& b);
/// max_i |a_i - b_i| / max(max|a|, max|b|, 1e-30).
double sup_relative_residual(std::span<const Quaternion> a, std::span<const Quaternion> b);

nlohmann::ordered_json to_json(const OLCTParams& A);
nlohmann::ordered_json to_json(const ParamPair& params);
nlohmann::ordered_json to_json(const VerificationReport& report);
/// Accepts {"A1": {"a":..,"b":..,...}, "A2": {...}}; validates the determinant.
ParamPair params_from_json(const nlohmann::json& j);

struct VerifyOptions {
    bool serial = false;
    /// Record runtime_seconds in the report (off for byte-stable output).
    bool record_runtime = true;
};

VerificationReport verify_boundedness(const AnalyticSignal& f, const AnalyticSignal& g,
                                      const ParamPair& params, const GridSet& grids,
                                      const VerifyOptions& opts = {});
VerificationReport verify_nonlinearity(const AnalyticSignal& f, const AnalyticSignal& g,
                                       const ParamPair& params, const GridSet& grids,
                                       const VerifyOptions& opts = {});
VerificationReport verify_reconstruction(const AnalyticSignal& f, const AnalyticSignal& g,
                                         const ParamPair& params, const GridSet& grids,
                                         const VerifyOptions& opts = {});
VerificationReport verify_orthogonality(const AnalyticSignal& f1, const AnalyticSignal& g1,
                                        const AnalyticSignal& f2, const AnalyticSignal& g2,
                                        const ParamPair& params, const GridSet& grids,
                                        const VerifyOptions& opts = {});
VerificationReport verify_plancherel(const AnalyticSignal& f, const AnalyticSignal& g,
                                     const ParamPair& params, const GridSet& grids,
                                     const VerifyOptions& opts = {});
VerificationReport verify_inversion(const AnalyticSignal& f, const AnalyticSignal& g,
                                    const ParamPair& params, const GridSet& grids,
                                    const VerifyOptions& opts = {});

/// One report per requested variant. Both left-hand routes and the bare
/// right-hand integral are computed once and shared across variants; the
/// mismatch flag is set on every report when no variant of the four passes
/// while the two left-hand routes agree.
std::vector<VerificationReport> verify_operation_theorem(Operation op, const AnalyticSignal& f,
                                                         const AnalyticSignal& g,
                                                         const ParamPair& params, const GridSet& grids,
                                                         std::span<const TheoremVariant> variants,
                                                         const VerifyOptions& opts = {});

VerificationReport verify_convolution(const AnalyticSignal& f, const AnalyticSignal& g,
                                      const ParamPair& params, const GridSet& grids,
                                      const TheoremVariant& variant, const VerifyOptions& opts = {});
VerificationReport verify_correlation(const AnalyticSignal& f, const AnalyticSignal& g,
                                      const ParamPair& params, const GridSet& grids,
                                      const TheoremVariant& variant, const VerifyOptions& opts = {});

/// The eight theorem ids in report order.
const std::vector<std::string>& theorem_ids();

/// Runs one theorem by id with the default pairing of signals
/// (orthogonality uses f1 = f, g1 = g, f2 = g, g2 = f).
std::vector<VerificationReport> verify_by_id(const std::string& id, const AnalyticSignal& f,
                                             const AnalyticSignal& g, const ParamPair& params,
                                             const GridSet& grids, const TheoremVariant& variant,
                                             const VerifyOptions& opts = {});

/// CSV header theorem,variant,residual,tolerance,pass.
void write_summary_csv(std::ostream& os, std::span<const VerificationReport> reports);

}  // namespace qwvd
