#include "qwvd/grid.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "qwvd/error.hpp"
#include "text_util.hpp"

namespace qwvd {

GridSpec2D::GridSpec2D(int n, double half_width)
    : n_(n), half_width_(half_width), spacing_(2.0 * half_width / n) {
    if (n <= 0) throw std::invalid_argument("GridSpec2D: n must be positive");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("GridSpec2D: half width must be positive and finite");
    }
}

std::vector<double> GridSpec2D::points() const {
    std::vector<double> out(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) out[k] = point(k);
    return out;
}

GridSpec2D GridSpec2D::refined(double factor) const {
    return GridSpec2D(static_cast<int>(std::lround(n_ * factor)), half_width_);
}

Quaternion GaussianAtom::operator()(double t1, double t2) const {
    const double d1 = t1 - shift[0];
    const double d2 = t2 - shift[1];
    Quaternion v = coeff * std::exp(-alpha * (d1 * d1 + d2 * d2));
    if (mod_i != 0.0) v = unit_exp(Axis::I, mod_i * t1) * v;
    if (mod_j != 0.0) v = v * unit_exp(Axis::J, mod_j * t2);
    return v;
}

AnalyticSignal::AnalyticSignal(GaussianAtom atom) : atoms_{atom} {
    if (!(atom.alpha > 0.0)) throw std::invalid_argument("AnalyticSignal: alpha must be > 0");
}

AnalyticSignal::AnalyticSignal(std::vector<GaussianAtom> atoms) : atoms_(std::move(atoms)) {
    for (const auto& a : atoms_) {
        if (!(a.alpha > 0.0)) throw std::invalid_argument("AnalyticSignal: alpha must be > 0");
    }
}

AnalyticSignal AnalyticSignal::gaussian(Quaternion coeff, double alpha, Vec2 shift) {
    GaussianAtom atom;
    atom.coeff = coeff;
    atom.alpha = alpha;
    atom.shift = shift;
    return AnalyticSignal(atom);
}

Quaternion AnalyticSignal::operator()(double t1, double t2) const {
    Quaternion sum;
    for (const auto& a : atoms_) sum += a(t1, t2);
    return sum;
}

AnalyticSignal operator+(const AnalyticSignal& f, const AnalyticSignal& g) {
    std::vector<GaussianAtom> atoms = f.atoms_;
    atoms.insert(atoms.end(), g.atoms_.begin(), g.atoms_.end());
    return AnalyticSignal(std::move(atoms));
}

AnalyticSignal operator*(double s, const AnalyticSignal& f) {
    std::vector<GaussianAtom> atoms = f.atoms_;
    for (auto& a : atoms) a.coeff = s * a.coeff;
    return AnalyticSignal(std::move(atoms));
}

std::string AnalyticSignal::describe() const {
    if (atoms_.empty()) return "zero";
    using detail::fmt17;
    std::string out;
    for (std::size_t n = 0; n < atoms_.size(); ++n) {
        const auto& a = atoms_[n];
        if (n > 0) out += '|';
        out += "coeff=" + fmt17(a.coeff.w) + ',' + fmt17(a.coeff.x) + ',' + fmt17(a.coeff.y) + ',' +
               fmt17(a.coeff.z) + ";alpha=" + fmt17(a.alpha) + ";shift=" + fmt17(a.shift[0]) + ',' +
               fmt17(a.shift[1]) + ";modi=" + fmt17(a.mod_i) + ";modj=" + fmt17(a.mod_j);
    }
    return out;
}

AnalyticSignal parse_signal(const std::string& text) {
    using namespace detail;
    if (trim(text) == "zero") return AnalyticSignal{};
    std::vector<GaussianAtom> atoms;
    for (const auto& atom_text : split(text, '|')) {
        GaussianAtom atom;
        for (const auto& field : split(atom_text, ';')) {
            if (trim(field).empty()) continue;
            const auto eq = field.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("signal field without '=': '" + field + "'");
            }
            const std::string key = trim(field.substr(0, eq));
            const std::string value = field.substr(eq + 1);
            if (key == "coeff") {
                const auto c = parse_list(value, 4, "coeff");
                atom.coeff = {c[0], c[1], c[2], c[3]};
            } else if (key == "alpha") {
                atom.alpha = parse_double(value, "alpha");
            } else if (key == "shift") {
                const auto s = parse_list(value, 2, "shift");
                atom.shift = {s[0], s[1]};
            } else if (key == "modi") {
                atom.mod_i = parse_double(value, "modi");
            } else if (key == "modj") {
                atom.mod_j = parse_double(value, "modj");
            } else {
                throw std::invalid_argument("unknown signal field '" + key + "'");
            }
        }
        if (!(atom.alpha > 0.0)) throw std::invalid_argument("signal alpha must be > 0");
        atoms.push_back(atom);
    }
    return AnalyticSignal(std::move(atoms));
}

SignalGrid sample(const AnalyticSignal& f, const GridSpec2D& spec) {
    SignalGrid g(spec);
    for (int k1 = 0; k1 < spec.n(); ++k1) {
        for (int k2 = 0; k2 < spec.n(); ++k2) g.at(k1, k2) = f(spec.point(k1), spec.point(k2));
    }
    return g;
}

SignalGrid sample(const SignalFn& f, const GridSpec2D& spec) {
    SignalGrid g(spec);
    for (int k1 = 0; k1 < spec.n(); ++k1) {
        for (int k2 = 0; k2 < spec.n(); ++k2) g.at(k1, k2) = f(spec.point(k1), spec.point(k2));
    }
    return g;
}

Quaternion integrate(const SignalGrid& g) {
    Quaternion sum;
    for (const auto& v : g.values) sum += v;
    return sum * g.spec.cell_area();
}

Quaternion inner_product(const SignalGrid& f, const SignalGrid& g) {
    if (!(f.spec == g.spec)) throw ShapeError("inner_product: grid specs differ");
    Quaternion sum;
    for (std::size_t n = 0; n < f.values.size(); ++n) sum += f.values[n] * conj(g.values[n]);
    return sum * f.spec.cell_area();
}

double l2_norm(const SignalGrid& f) {
    // <f,f> has an exactly-zero vector part in exact arithmetic; sum |f|^2 directly.
    double sum = 0.0;
    for (const auto& v : f.values) sum += norm2(v);
    return std::sqrt(sum * f.spec.cell_area());
}

void write_signal_csv(std::ostream& os, const SignalGrid& g) {
    using detail::fmt17;
    os << "k1,k2,t1,t2,w,x,y,z\n";
    for (int k1 = 0; k1 < g.spec.n(); ++k1) {
        for (int k2 = 0; k2 < g.spec.n(); ++k2) {
            const auto& v = g.at(k1, k2);
            os << k1 << ',' << k2 << ',' << fmt17(g.spec.point(k1)) << ',' << fmt17(g.spec.point(k2))
               << ',' << fmt17(v.w) << ',' << fmt17(v.x) << ',' << fmt17(v.y) << ',' << fmt17(v.z)
               << '\n';
        }
    }
}

SignalGrid read_signal_csv(std::istream& is) {
    using namespace detail;
    std::string line;
    if (!std::getline(is, line) || trim(line) != "k1,k2,t1,t2,w,x,y,z") {
        throw std::invalid_argument("signal CSV: missing or wrong header");
    }
    struct Row {
        int k1, k2;
        double t1;
        Quaternion v;
    };
    std::vector<Row> rows;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 8) throw std::invalid_argument("signal CSV: expected 8 fields");
        rows.push_back({std::stoi(f[0]), std::stoi(f[1]), parse_double(f[2], "t1"),
                        {parse_double(f[4], "w"), parse_double(f[5], "x"), parse_double(f[6], "y"),
                         parse_double(f[7], "z")}});
    }
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
    if (n <= 0 || static_cast<std::size_t>(n) * n != rows.size()) {
        throw std::invalid_argument("signal CSV: row count is not a square");
    }
    // t1 at k1 = 0 is -L + spacing/2 = -L (1 - 1/n).
    const double half_width = -rows.front().t1 / (1.0 - 0.5 * 2.0 / n);
    SignalGrid g(GridSpec2D(n, half_width));
    for (const auto& r : rows) {
        if (r.k1 < 0 || r.k1 >= n || r.k2 < 0 || r.k2 >= n) {
            throw std::invalid_argument("signal CSV: index out of range");
        }
        g.at(r.k1, r.k2) = r.v;
    }
    return g;
}

}  // namespace qwvd
