#include "qwvd/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "qwvd/error.hpp"
#include "qwvd/parallel.hpp"
#include "text_util.hpp"

namespace qwvd::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

const std::vector<std::string> kCommands = {"wvd", "qolct", "convolve", "correlate", "verify", "sweep"};

// Settings in the order they are applied; "n" comes before the per-grid sizes.
const std::vector<std::string> kKeys = {
    "theorem", "A1",  "A2",  "signal_f", "signal_g", "signal_csv",    "n",         "n_t",
    "n_u",     "n_n", "n_w", "n_s",      "L",        "L_t",           "L_u",       "L_n",
    "L_w",     "second_factor", "corr_sign", "sweep_variants", "scales", "serial", "out",
    "t",       "u",   "slice", "heatmap", "csv"};

std::string normalize_key(std::string key) {
    for (auto& c : key) {
        if (c == '-') c = '_';
    }
    return key;
}

std::string json_to_setting(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return detail::fmt17(v.get<double>());
    if (v.is_array()) {
        std::string out;
        for (const auto& item : v) {
            if (!out.empty()) out += ',';
            out += json_to_setting(item, key);
        }
        return out;
    }
    if (v.is_object() && (key == "A1" || key == "A2")) {
        std::string out;
        for (const char* k : {"a", "b", "c", "d", "r", "s"}) {
            if (!out.empty()) out += ',';
            out += v.contains(k) ? json_to_setting(v.at(k), key) : "0";
        }
        return out;
    }
    throw UsageError("config key '" + key + "' has an unsupported value");
}

bool parse_bool(const std::string& text, const std::string& what) {
    const std::string s = detail::trim(text);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw UsageError(what + " expects true or false, got '" + text + "'");
}

int parse_count(const std::string& text, const std::string& what) {
    const double v = detail::parse_double(text, what);
    if (v != std::floor(v)) throw UsageError(what + " must be an integer");
    if (v < 8) throw UsageError(what + " must be at least 8, got " + text);
    if (v > 4096) throw UsageError(what + " is unreasonably large: " + text);
    return static_cast<int>(v);
}

double parse_width(const std::string& text, const std::string& what) {
    const double v = detail::parse_double(text, what);
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(what + " must be positive, got " + text);
    return v;
}

Vec2 parse_vec2(const std::string& text, const std::string& what) {
    const auto v = detail::parse_list(text, 2, what);
    return {v[0], v[1]};
}

OLCTParams parse_olct(const std::string& text, const std::string& what) {
    const auto parts = detail::split(text, ',');
    if (parts.size() != 4 && parts.size() != 6) {
        throw UsageError(what + " expects a,b,c,d or a,b,c,d,r,s");
    }
    const auto v = detail::parse_list(text, parts.size(), what);
    return OLCTParams::make(v[0], v[1], v[2], v[3], v.size() == 6 ? v[4] : 0.0, v.size() == 6 ? v[5] : 0.0);
}

AnalyticSignal checked_signal(const std::string& text, const std::string& what) {
    AnalyticSignal s;
    try {
        s = parse_signal(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(what + ": " + e.what());
    }
    for (const auto& atom : s.atoms()) {
        if (!(atom.alpha > 0.0)) throw UsageError(what + ": alpha must be positive");
    }
    return s;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "theorem") c.theorem = value;
    else if (key == "A1") c.params.A1 = parse_olct(value, "--A1");
    else if (key == "A2") c.params.A2 = parse_olct(value, "--A2");
    else if (key == "signal_f") c.signal_f = value;
    else if (key == "signal_g") c.signal_g = value;
    else if (key == "signal_csv") c.signal_csv = value;
    else if (key == "n") {
        const int n = parse_count(value, "--n");
        const int keep_s = c.grids.n_s;
        c.grids = GridSet::from_n(n, c.grids.L);
        c.grids.n_s = keep_s;
    } else if (key == "n_t") c.grids.n_t = parse_count(value, "--n-t");
    else if (key == "n_u") c.grids.n_u = parse_count(value, "--n-u");
    else if (key == "n_n") c.grids.n_n = parse_count(value, "--n-n");
    else if (key == "n_w") c.grids.n_w = parse_count(value, "--n-w");
    else if (key == "n_s") c.grids.n_s = parse_count(value, "--n-s");
    else if (key == "L") c.grids.L = parse_width(value, "--L");
    else if (key == "L_t") c.grids.L_t = parse_width(value, "--L-t");
    else if (key == "L_u") c.grids.L_u = parse_width(value, "--L-u");
    else if (key == "L_n") c.grids.L_n = parse_width(value, "--L-n");
    else if (key == "L_w") c.grids.L_w = parse_width(value, "--L-w");
    else if (key == "second_factor") c.variant.second_factor = parse_second_factor(value);
    else if (key == "corr_sign") c.variant.corr_sign = parse_corr_sign(value);
    else if (key == "sweep_variants") c.sweep_variants = parse_bool(value, "--sweep-variants");
    else if (key == "scales") {
        c.scales.clear();
        for (const auto& part : detail::split(value, ',')) {
            c.scales.push_back(parse_width(part, "--scales"));
        }
        if (c.scales.empty()) throw UsageError("--scales needs at least one value");
    } else if (key == "serial") c.serial = parse_bool(value, "--serial");
    else if (key == "out") c.out_dir = value;
    else if (key == "t") c.t = parse_vec2(value, "--t");
    else if (key == "u") c.u = parse_vec2(value, "--u");
    else if (key == "slice") c.slice = value;
    else if (key == "heatmap") c.heatmap = value;
    else if (key == "csv") c.csv = value;
    else throw UsageError("unknown setting '" + key + "'");
}

void validate(const RunConfig& c) {
    checked_signal(c.signal_f, "--signal-f");
    checked_signal(c.signal_g, "--signal-g");
    if (c.command == "verify") {
        if (c.theorem.empty()) throw UsageError("verify needs a theorem name or 'all'");
        const auto& ids = theorem_ids();
        if (c.theorem != "all" && std::find(ids.begin(), ids.end(), c.theorem) == ids.end()) {
            throw UsageError("unknown theorem '" + c.theorem + "'");
        }
    }
    if (c.command == "sweep") {
        if (c.theorem.empty()) throw UsageError("sweep needs --theorem");
        const auto& ids = theorem_ids();
        if (std::find(ids.begin(), ids.end(), c.theorem) == ids.end()) {
            throw UsageError("unknown theorem '" + c.theorem + "'");
        }
    }
    if (!c.slice.empty() && c.slice.rfind("t=", 0) != 0 && c.slice.rfind("u=", 0) != 0) {
        throw UsageError("--slice expects t=a,b or u=a,b");
    }
    if (!c.slice.empty()) parse_vec2(c.slice.substr(2), "--slice");
    if (!c.heatmap.empty() && c.command == "wvd" && c.slice.empty()) {
        throw UsageError("--heatmap with wvd needs --slice");
    }
    if (c.out_dir.empty()) throw UsageError("--out must not be empty");
}

ordered_json vec_json(const std::optional<Vec2>& v) {
    return v ? ordered_json::array({(*v)[0], (*v)[1]}) : ordered_json(nullptr);
}

std::string fmt_q(const Quaternion& q) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.10g %.10g %.10g %.10g", q.w, q.x, q.y, q.z);
    return buf;
}

class Outputs {
   public:
    explicit Outputs(const RunConfig& c) : dir_(c.out_dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
    }

    fs::path resolve(const std::string& name) const {
        const fs::path p(name);
        return p.is_absolute() ? p : dir_ / p;
    }

    template <class Writer>
    void write(const std::string& name, Writer&& writer) {
        const fs::path path = resolve(name);
        std::error_code ec;
        if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
        writer(os);
        os.flush();
        if (!os) throw IoError("failed writing '" + path.string() + "'");
        files_.push_back(name);
    }

    void write_meta(const RunConfig& c, int status) {
        ordered_json meta;
        meta["command"] = c.command;
        meta["config"] = c.to_json();
        meta["exit_status"] = status;
        meta["outputs"] = files_;
        write("meta.json", [&](std::ostream& os) { os << meta.dump(2) << '\n'; });
    }

   private:
    fs::path dir_;
    std::vector<std::string> files_;
};

std::string report_name(const VerificationReport& r, const std::string& suffix) {
    std::string name = "reports/" + r.theorem_id;
    if (r.variant) name += "_" + to_string(r.variant->second_factor) + "_" + to_string(r.variant->corr_sign);
    return name + suffix + ".json";
}

std::string status_word(const VerificationReport& r) {
    if (r.pass) return "PASS";
    if (r.theorem_mismatch) return "MISMATCH";
    return r.error ? "ERROR" : "FAIL";
}

std::string scale_suffix(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_x%g", s);
    return buf;
}

int run_reports(const RunConfig& c, const std::vector<std::string>& ids, const std::vector<double>& scales,
                bool tag_scale, Outputs& outputs, std::ostream& out) {
    const auto f = checked_signal(c.signal_f, "--signal-f");
    const auto g = checked_signal(c.signal_g, "--signal-g");
    VerifyOptions opts{c.serial, !c.serial};
    std::vector<VerificationReport> reports;
    std::vector<std::string> names;
    std::ostringstream timings;
    timings << "theorem,variant,scale,seconds\n";
    for (double scale : scales) {
        const GridSet grids = scale == 1.0 ? c.grids : c.grids.scaled(scale);
        for (const auto& id : ids) {
            const auto start = std::chrono::steady_clock::now();
            std::vector<VerificationReport> batch;
            const bool variant_theorem = id == "convolution" || id == "correlation";
            if (variant_theorem && c.sweep_variants) {
                const auto all = TheoremVariant::all();
                batch = verify_operation_theorem(
                    id == "convolution" ? Operation::Convolution : Operation::Correlation, f, g, c.params,
                    grids, all, opts);
            } else {
                batch = verify_by_id(id, f, g, c.params, grids, c.variant, opts);
            }
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            for (auto& r : batch) {
                timings << r.theorem_id << ',' << r.variant_label() << ',' << scale << ',' << seconds << '\n';
                names.push_back(report_name(r, tag_scale ? scale_suffix(scale) : ""));
                out << r.theorem_id << ' ' << r.variant_label() << (tag_scale ? scale_suffix(scale) : "")
                    << " residual=" << detail::fmt17(r.residual) << " tolerance=" << detail::fmt17(r.tolerance)
                    << ' ' << status_word(r) << '\n';
                reports.push_back(std::move(r));
            }
        }
    }
    bool failed = false;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        outputs.write(names[i], [&](std::ostream& os) { os << to_json(reports[i]).dump(2) << '\n'; });
        failed = failed || reports[i].counts_as_failure();
    }
    outputs.write("summary.csv", [&](std::ostream& os) { write_summary_csv(os, reports); });
    outputs.write("timings.csv", [&](std::ostream& os) { os << timings.str(); });
    return failed ? kIdentityFailed : kOk;
}

SignalGrid operator_grid(const SignalFn& op, const GridSpec2D& spec, bool serial) {
    SignalGrid out(spec);
    const auto pts = spec.points();
    parallel_for(
        static_cast<std::size_t>(spec.n()),
        [&](std::size_t k1) {
            for (int k2 = 0; k2 < spec.n(); ++k2) out.at(static_cast<int>(k1), k2) = op(pts[k1], pts[k2]);
        },
        serial);
    return out;
}

SignalGrid load_signal_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read signal CSV '" + path + "'");
    try {
        return read_signal_csv(is);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("signal CSV '") + path + "': " + e.what());
    }
}

void write_grid_outputs(const RunConfig& c, Outputs& outputs, const SignalGrid& grid,
                        const std::string& default_csv) {
    outputs.write(c.csv.empty() ? default_csv : c.csv, [&](std::ostream& os) { write_signal_csv(os, grid); });
    if (!c.heatmap.empty()) outputs.write(c.heatmap, [&](std::ostream& os) { write_pgm(os, grid); });
}

int run_wvd(const RunConfig& c, Outputs& outputs, std::ostream& out) {
    const auto f = checked_signal(c.signal_f, "--signal-f");
    const auto g = checked_signal(c.signal_g, "--signal-g");
    const auto t_spec = c.grids.t_spec(c.params);
    const auto u_spec = c.grids.u_spec(c.params);
    const auto n_spec = c.grids.n_spec();
    if (!c.slice.empty()) {
        const Vec2 at = parse_vec2(c.slice.substr(2), "--slice");
        const bool fixed_t = c.slice[0] == 't';
        const auto grid = fixed_t ? wvd_u_slice(f, g, c.params, at, u_spec, n_spec)
                                  : wvd_t_slice(f, g, c.params, at, t_spec, n_spec, c.serial);
        write_grid_outputs(c, outputs, grid, fixed_t ? "wvd_u_slice.csv" : "wvd_t_slice.csv");
        out << "wvd slice " << c.slice << " written (" << grid.spec.n() << "x" << grid.spec.n() << ")\n";
        return kOk;
    }
    if (c.t && c.u) {
        out << "wvd t=(" << (*c.t)[0] << "," << (*c.t)[1] << ") u=(" << (*c.u)[0] << "," << (*c.u)[1]
            << "): " << fmt_q(wvd_point(f, g, c.params, *c.t, *c.u, n_spec)) << '\n';
        return kOk;
    }
    const auto w = wvd_grid(f, g, c.params, t_spec, u_spec, n_spec, c.serial);
    outputs.write(c.csv.empty() ? "wvd.csv" : c.csv, [&](std::ostream& os) { write_wvd_csv(os, w); });
    out << "wvd grid written (" << w.values.size() << " cells)\n";
    return kOk;
}

int run_qolct(const RunConfig& c, Outputs& outputs, std::ostream& out) {
    const SignalGrid f = c.signal_csv.empty() ? sample(checked_signal(c.signal_f, "--signal-f"), c.grids.s_spec())
                                              : load_signal_csv(c.signal_csv);
    if (c.u) {
        out << "qolct u=(" << (*c.u)[0] << "," << (*c.u)[1] << "): " << fmt_q(qolct_forward(f, c.params, *c.u))
            << '\n';
        return kOk;
    }
    const auto grid = qolct_forward_grid(f, c.params, c.grids.u_spec(c.params));
    write_grid_outputs(c, outputs, grid, "qolct.csv");
    out << "qolct grid written (" << grid.spec.n() << "x" << grid.spec.n() << ")\n";
    return kOk;
}

int run_operator(const RunConfig& c, Outputs& outputs, std::ostream& out) {
    const auto f = checked_signal(c.signal_f, "--signal-f");
    const auto g = checked_signal(c.signal_g, "--signal-g");
    const auto z = c.grids.s_spec();
    const bool conv = c.command == "convolve";
    SignalFn op;
    if (conv) op = ConvolutionOperator([f](double a, double b) { return f(a, b); },
                                       [g](double a, double b) { return g(a, b); }, c.params, z);
    else op = CorrelationOperator([f](double a, double b) { return f(a, b); },
                                  [g](double a, double b) { return g(a, b); }, c.params, z);
    if (c.t) {
        out << c.command << " t=(" << (*c.t)[0] << "," << (*c.t)[1] << "): " << fmt_q(op((*c.t)[0], (*c.t)[1]))
            << '\n';
        return kOk;
    }
    const auto grid = operator_grid(op, z, c.serial);
    write_grid_outputs(c, outputs, grid, c.command + ".csv");
    out << c.command << " grid written (" << z.n() << "x" << z.n() << ")\n";
    return kOk;
}

}  // namespace

ordered_json RunConfig::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["theorem"] = theorem;
    j["signal_f"] = signal_f;
    j["signal_g"] = signal_g;
    j["signal_csv"] = signal_csv;
    j["params"] = qwvd::to_json(params);
    j["grids"] = grids.to_json(params);
    j["second_factor"] = to_string(variant.second_factor);
    j["corr_sign"] = to_string(variant.corr_sign);
    j["sweep_variants"] = sweep_variants;
    j["scales"] = scales;
    j["serial"] = serial;
    j["out"] = out_dir;
    j["t"] = vec_json(t);
    j["u"] = vec_json(u);
    j["slice"] = slice;
    j["heatmap"] = heatmap;
    j["csv"] = csv;
    return j;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Quaternion offset linear canonical Wigner-Ville toolkit", "qwvd"};
    std::string command, target, config_path;
    app.add_option("command", command, "wvd | qolct | convolve | correlate | verify | sweep")
        ->required()
        ->check(CLI::IsMember(kCommands));
    app.add_option("target", target, "verify target: a theorem name or 'all'");
    app.add_option("--config", config_path, "JSON file with settings; flags take precedence");

    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_opts;
    auto text = [&](const std::string& key, const std::string& flag, const std::string& help) {
        flag_opts[key] = app.add_option(flag, flag_values[key], help);
    };
    text("A1", "--A1", "a,b,c,d[,r,s] for the left (i) kernel");
    text("A2", "--A2", "a,b,c,d[,r,s] for the right (j) kernel");
    text("signal_f", "--signal-f", "coeff=w,x,y,z;alpha=..;shift=..,..;modi=..;modj=..");
    text("signal_g", "--signal-g", "second signal, same syntax");
    text("signal_csv", "--signal-csv", "sampled input for qolct (k1,k2,t1,t2,w,x,y,z)");
    text("n", "--n", "n_t = n_u = N, n_n = n_w = 2N");
    text("n_t", "--n-t", "time grid size");
    text("n_u", "--n-u", "frequency grid size");
    text("n_n", "--n-n", "lag grid size");
    text("n_w", "--n-w", "w-integration grid size");
    text("n_s", "--n-s", "signal / convolution grid size");
    text("L", "--L", "half-width of the signal grid");
    text("L_t", "--L-t", "time grid half-width (default L/2)");
    text("L_u", "--L-u", "frequency grid half-width (default L*max(1,|a|+|b|))");
    text("L_n", "--L-n", "lag grid half-width (default L)");
    text("L_w", "--L-w", "w grid half-width (default L)");
    text("second_factor", "--second-factor", "conj-conv | conv-conj");
    text("corr_sign", "--corr-sign", "plus | minus");
    text("scales", "--scales", "sweep grid scale factors, comma separated");
    text("theorem_flag", "--theorem", "theorem for sweep");
    text("out", "--out", "output directory (default $QWVD_OUT or qwvd_out)");
    text("t", "--t", "time point t1,t2");
    text("u", "--u", "frequency point u1,u2");
    text("slice", "--slice", "t=a,b (u-slice) or u=a,b (t-slice)");
    text("heatmap", "--heatmap", "PGM heatmap path");
    text("csv", "--csv", "CSV output path");
    bool sweep_variants = false, serial = false;
    auto* sweep_opt = app.add_flag("--sweep-variants", sweep_variants, "evaluate all four theorem variants");
    auto* serial_opt = app.add_flag("--serial", serial, "single worker, byte-stable reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig c;
    c.command = command;
    if (const char* env = std::getenv("QWVD_OUT"); env && *env) c.out_dir = env;

    std::map<std::string, std::string> settings;
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) throw IoError("cannot read config '" + config_path + "'");
        nlohmann::json j;
        try {
            is >> j;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config '" + config_path + "' is not valid JSON: " + e.what());
        }
        if (!j.is_object()) throw UsageError("config must be a JSON object");
        for (const auto& [key, value] : j.items()) {
            const std::string k = normalize_key(key);
            if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end()) {
                throw UsageError("unknown config key '" + key + "'");
            }
            settings[k] = json_to_setting(value, k);
        }
    }
    for (const auto& [key, opt] : flag_opts) {
        if (opt->count() == 0) continue;
        settings[key == "theorem_flag" ? "theorem" : key] = flag_values[key];
    }
    if (!target.empty()) settings["theorem"] = target;
    if (sweep_opt->count()) settings["sweep_variants"] = sweep_variants ? "true" : "false";
    if (serial_opt->count()) settings["serial"] = serial ? "true" : "false";

    for (const auto& key : kKeys) {
        if (const auto it = settings.find(key); it != settings.end()) {
            try {
                apply_setting(c, key, it->second);
            } catch (const DeterminantError&) {
                throw;
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
    }
    validate(c);
    return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream&) {
    Outputs outputs(c);
    int status = kOk;
    if (c.command == "wvd") status = run_wvd(c, outputs, out);
    else if (c.command == "qolct") status = run_qolct(c, outputs, out);
    else if (c.command == "convolve" || c.command == "correlate") status = run_operator(c, outputs, out);
    else if (c.command == "verify") {
        const auto ids = c.theorem == "all" ? theorem_ids() : std::vector<std::string>{c.theorem};
        status = run_reports(c, ids, {1.0}, false, outputs, out);
    } else if (c.command == "sweep") {
        status = run_reports(c, {c.theorem}, c.scales, true, outputs, out);
    } else {
        throw UsageError("unknown command '" + c.command + "'");
    }
    outputs.write_meta(c, status);
    return status;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const auto config = parse_args(argc, argv, out);
        if (!config) return kOk;
        return run(*config, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DeterminantError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace qwvd::cli
