#include "stieltjes/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stieltjes/errors.hpp"

namespace stieltjes {
namespace {

// Maps a dotted field path back to the line where its key appears. The
// document is small, so a forward scan for each key in turn is enough.
class Locator {
public:
    Locator(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    int line_of(const std::vector<std::string>& path) const {
        std::size_t pos = 0;
        for (const auto& key : path) {
            const auto hit = text_.find('"' + key + '"', pos);
            if (hit == std::string::npos) break;
            pos = hit;
        }
        return line_at(pos);
    }

    int line_at(std::size_t byte) const {
        byte = std::min(byte, text_.size());
        return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(byte), '\n'));
    }

    [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& why,
                           ErrorKind kind = ErrorKind::MalformedSpec) const {
        std::string field;
        for (const auto& p : path) field += (field.empty() ? "" : ".") + p;
        throw Error(kind, source_ + ":" + std::to_string(line_of(path)) + ": field '" + field + "': " + why);
    }

    const std::string& source() const { return source_; }

private:
    const std::string& text_;
    std::string source_;
};

Json parse_document(const std::string& text, const Locator& loc) {
    try {
        Json j = Json::parse(text);
        if (!j.is_object()) throw Error(ErrorKind::MalformedSpec, loc.source() + ":1: document must be a JSON object");
        return j;
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::MalformedSpec, loc.source() + ":" + std::to_string(loc.line_at(e.byte ? e.byte - 1 : 0)) +
                                                  ": invalid JSON (" + e.what() + ")");
    }
}

double get_number(const Json& obj, const std::string& key, const Locator& loc, std::vector<std::string> path) {
    if (!obj.contains(key)) loc.fail(path, "missing");
    const Json& v = obj.at(key);
    if (!v.is_number()) loc.fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) loc.fail(path, "must be finite");
    return x;
}

std::vector<double> get_numbers(const Json& obj, const std::string& key, const Locator& loc,
                                const std::vector<std::string>& path) {
    const Json& v = obj.at(key);
    if (!v.is_array()) loc.fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) loc.fail(path, "entry " + std::to_string(i) + " is not a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::vector<std::pair<double, double>> get_nodes(const Json& obj, const Locator& loc,
                                                 const std::vector<std::string>& path) {
    if (!obj.contains("nodes")) loc.fail(path, "missing");
    const Json& v = obj.at("nodes");
    if (!v.is_array() || v.empty()) loc.fail(path, "expected a non-empty array of [x, y] pairs");
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Json& p = v[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            loc.fail(path, "entry " + std::to_string(i) + " is not an [x, y] pair of numbers");
        out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
}

std::string get_string(const Json& obj, const std::string& key, const Locator& loc,
                       const std::vector<std::string>& path) {
    if (!obj.contains(key)) loc.fail(path, "missing");
    if (!obj.at(key).is_string()) loc.fail(path, "expected a string");
    return obj.at(key).get<std::string>();
}

// The message of an Error without its "Kind: " prefix.
std::string bare_message(const Error& e) {
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    const std::string what = e.what();
    return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

PiecewiseFunction build_function(const Json& obj, const Derivator& d, const Locator& loc,
                                 std::vector<std::string> path) {
    auto at = [&](const std::string& key) {
        auto p = path;
        p.push_back(key);
        return p;
    };
    if (!obj.is_object()) loc.fail(path.empty() ? std::vector<std::string>{"kind"} : path, "expected an object");
    const std::string kind = get_string(obj, "kind", loc, at("kind"));
    try {
        if (kind == "constant") return PiecewiseFunction::constant(get_number(obj, "value", loc, at("value")));
        if (kind == "piecewise_affine") return PiecewiseFunction::interpolant({get_nodes(obj, loc, at("nodes"))});
        if (kind == "polynomial") {
            if (!obj.contains("coeffs")) loc.fail(at("coeffs"), "missing");
            auto c = get_numbers(obj, "coeffs", loc, at("coeffs"));
            if (c.empty() || c.size() > 4) loc.fail(at("coeffs"), "expected 1 to 4 coefficients");
            return PiecewiseFunction::polynomial(std::move(c));
        }
        if (kind == "indicator") {
            const IntervalSet set = parse_interval_set(get_string(obj, "set", loc, at("set")));
            const double scale = obj.contains("scale") ? get_number(obj, "scale", loc, at("scale")) : 1.0;
            const auto ind = PiecewiseFunction::indicator(set);
            return scale == 1.0 ? ind : scale * ind;
        }
        if (kind == "g") return PiecewiseFunction::derivator_value(d);
        if (kind == "g_tilde") return PiecewiseFunction::variation(d);
        if (kind == "composed") {
            const std::string inner = get_string(obj, "inner", loc, at("inner"));
            const InterpolantSpec spec{get_nodes(obj, loc, at("nodes"))};
            if (inner == "g_tilde") return PiecewiseFunction::composed(spec, d.variation_derivator());
            if (inner == "g") {
                if (!d.nondecreasing()) loc.fail(at("inner"), "g is not nondecreasing; use g_tilde");
                return PiecewiseFunction::composed(spec, d);
            }
            loc.fail(at("inner"), "expected \"g\" or \"g_tilde\"");
        }
        if (kind == "triangular") {
            const double depth = get_number(obj, "depth", loc, at("depth"));
            if (depth < 1 || depth != std::floor(depth) || depth > 1e6) loc.fail(at("depth"), "expected a positive integer");
            return PiecewiseFunction::triangular_wave(static_cast<int>(depth));
        }
        if (kind == "sum") {
            if (!obj.contains("terms") || !obj.at("terms").is_array()) loc.fail(at("terms"), "expected an array");
            std::vector<std::pair<double, PiecewiseFunction>> terms;
            for (const Json& term : obj.at("terms")) {
                if (!term.is_object() || !term.contains("function")) loc.fail(at("terms"), "each term needs a function");
                const double w = term.contains("weight") ? get_number(term, "weight", loc, at("weight")) : 1.0;
                terms.emplace_back(w, build_function(term.at("function"), d, loc, at("function")));
            }
            return PiecewiseFunction::sum(std::move(terms));
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::MalformedSpec && e.kind() != ErrorKind::DuplicateAbscissa) throw;
        if (bare_message(e).rfind(loc.source() + ":", 0) == 0) throw;
        loc.fail(at("kind"), bare_message(e), e.kind());
    }
    loc.fail(at("kind"), "unknown function kind \"" + kind + "\"");
}

std::string set_text(const IntervalSet& s) { return s.empty() ? "∅" : s.to_string(); }

std::string points_text(const std::vector<double>& v) {
    if (v.empty()) return "∅";
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
    return out + "}";
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string kind_name(DerivatorKind k) { return k == DerivatorKind::Oscillator ? "oscillator" : "piecewise_affine"; }

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::MalformedSpec, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DerivatorSpec parse_derivator_spec(const std::string& text, const std::string& source) {
    const Locator loc(text, source);
    const Json doc = parse_document(text, loc);
    DerivatorSpec spec;
    const std::string kind = get_string(doc, "kind", loc, {"kind"});
    if (kind == "oscillator") {
        spec.kind = DerivatorKind::Oscillator;
        if (!doc.contains("oscillator") || !doc.at("oscillator").is_object()) loc.fail({"oscillator"}, "expected an object");
        const Json& osc = doc.at("oscillator");
        const double n = get_number(osc, "N", loc, {"oscillator", "N"});
        if (n < 1 || n != std::floor(n) || n > 1e7) loc.fail({"oscillator", "N"}, "expected a positive integer");
        spec.oscillator_depth = static_cast<int>(n);
        if (osc.contains("r")) {
            spec.oscillator_r = get_number(osc, "r", loc, {"oscillator", "r"});
            if (std::abs(spec.oscillator_r - 1.0 / 3.0) > 1e-12) loc.fail({"oscillator", "r"}, "only r = 1/3 is supported");
        }
        return spec;
    }
    if (kind != "piecewise_affine") loc.fail({"kind"}, "expected \"piecewise_affine\" or \"oscillator\"");
    std::vector<double> domain;
    if (doc.contains("domain")) {
        domain = get_numbers(doc, "domain", loc, {"domain"});
        if (domain.size() != 2 || !(domain[0] < domain[1])) loc.fail({"domain"}, "expected [a, b] with a < b");
    }
    if (doc.contains("breakpoints")) {
        spec.breakpoints = get_numbers(doc, "breakpoints", loc, {"breakpoints"});
    } else if (!domain.empty()) {
        spec.breakpoints = domain;
    } else {
        loc.fail({"breakpoints"}, "missing (and no domain given)");
    }
    if (!domain.empty() && !spec.breakpoints.empty() &&
        (spec.breakpoints.front() != domain[0] || spec.breakpoints.back() != domain[1]))
        loc.fail({"domain"}, "does not match the first and last breakpoints");
    if (!doc.contains("slopes")) loc.fail({"slopes"}, "missing");
    spec.slopes = get_numbers(doc, "slopes", loc, {"slopes"});
    if (doc.contains("jumps")) spec.jumps = get_numbers(doc, "jumps", loc, {"jumps"});
    if (doc.contains("base_value")) spec.base_value = get_number(doc, "base_value", loc, {"base_value"});
    try {
        (void)Derivator::from_spec(spec);
    } catch (const Error& e) {
        const std::string msg = bare_message(e);
        for (const char* field : {"breakpoints", "slopes", "jumps", "base_value"})
            if (msg.rfind(field, 0) == 0) loc.fail({field}, msg, e.kind());
        throw Error(e.kind(), source + ": " + msg);
    }
    return spec;
}

Derivator load_derivator(const std::string& path) {
    return Derivator::from_spec(parse_derivator_spec(read_file(path), path));
}

Json to_json(const DerivatorSpec& spec) {
    Json j;
    j["kind"] = kind_name(spec.kind);
    if (spec.kind == DerivatorKind::Oscillator) {
        j["oscillator"] = {{"N", spec.oscillator_depth}, {"r", spec.oscillator_r}};
        return j;
    }
    j["domain"] = {spec.breakpoints.front(), spec.breakpoints.back()};
    j["breakpoints"] = spec.breakpoints;
    j["slopes"] = spec.slopes;
    j["jumps"] = spec.jumps;
    if (spec.base_value) j["base_value"] = *spec.base_value;
    return j;
}

PiecewiseFunction parse_function_spec(const std::string& text, const Derivator& d, const std::string& source) {
    const Locator loc(text, source);
    return build_function(parse_document(text, loc), d, loc, {});
}

PiecewiseFunction load_function(const std::string& path, const Derivator& d) {
    return parse_function_spec(read_file(path), d, path);
}

Analysis analyze(const Derivator& d) {
    Analysis out;
    out.kind = d.kind();
    out.a = d.a();
    out.b = d.b();
    out.admissible = d.admissible();
    const auto& t = d.breakpoints();
    const auto& j = d.jumps();
    for (std::size_t i = 0; i < t.size(); ++i)
        if (j[i] != 0.0) out.atoms.emplace_back(t[i], j[i]);
    std::vector<Interval> comps;
    for (const auto& c : d.constancy_components()) {
        comps.push_back({c.lo, c.hi, false, false});
        for (const double e : {c.lo, c.hi}) {
            const PointKind k = d.classify_point(e).kind;
            if (k == PointKind::NPlus) out.n_plus.push_back(e);
            if (k == PointKind::NMinus) out.n_minus.push_back(e);
        }
    }
    out.constancy = IntervalSet(std::move(comps));
    out.hahn = hahn_decomposition(d);
    out.total_variation = d.variation_at(d.b());
    out.g_at_b = d.evaluate(d.b());

    std::vector<double> probes;
    if (d.kind() == DerivatorKind::Oscillator) probes.push_back(d.a());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < d.tail_end()) continue;
        probes.push_back(t[i]);
        if (i + 1 < t.size()) probes.push_back(0.5 * (t[i] + t[i + 1]));
    }
    out.phi_min = 1.0;
    out.phi_certified = true;
    bool first = true;
    for (const double p : probes) {
        const PhiEstimate e = phi(d, p);
        if (first || e.value < out.phi_min) out.phi_min = e.value;
        first = false;
        out.phi_certified = out.phi_certified && e.certified;
    }
    return out;
}

Json to_json(const Analysis& a) {
    Json j;
    j["kind"] = kind_name(a.kind);
    j["domain"] = {a.a, a.b};
    j["admissible"] = a.admissible;
    Json atoms = Json::array();
    for (const auto& [t, jump] : a.atoms) atoms.push_back({{"t", t}, {"jump", jump}});
    j["D_g"] = atoms;
    j["C_g"] = a.constancy.to_string();
    j["N_g_plus"] = a.n_plus;
    j["N_g_minus"] = a.n_minus;
    j["A_g_plus"] = a.hahn.positive_part.to_string();
    j["A_g_minus"] = a.hahn.negative_part.to_string();
    j["total_variation"] = a.total_variation;
    j["g_at_b"] = a.g_at_b;
    j["phi_min"] = a.phi_min;
    j["phi_certified"] = a.phi_certified;
    return j;
}

std::string to_text(const Analysis& a) {
    std::ostringstream os;
    os << "derivator: " << kind_name(a.kind) << " on [" << format_number(a.a) << "," << format_number(a.b) << "]"
       << (a.admissible ? "" : " (endpoint admissibility not checked)") << "\n";
    std::string atoms;
    for (const auto& [t, jump] : a.atoms)
        atoms += (atoms.empty() ? "" : ", ") + format_number(t) + " (J=" + format_number(jump) + ")";
    os << "D_g = " << (atoms.empty() ? "∅" : "{" + atoms + "}") << "\n";
    os << "C_g = " << set_text(a.constancy) << "\n";
    os << "N_g+ = " << points_text(a.n_plus) << "\n";
    os << "N_g- = " << points_text(a.n_minus) << "\n";
    os << "A_g+ = " << set_text(a.hahn.positive_part) << "\n";
    os << "A_g- = " << set_text(a.hahn.negative_part) << "\n";
    os << "var(g) on [a,b] = " << format_number(a.total_variation) << "\n";
    os << "g(b) = " << format_number(a.g_at_b) << "\n";
    os << "phi min over structural points = " << format_number(a.phi_min)
       << (a.phi_certified ? " (certified)" : " (sampled)") << "\n";
    return os.str();
}

Json to_json(const PointClass& p) {
    Json j;
    j["class"] = to_string(p.kind);
    j["t_star"] = p.t_star;
    if (p.component >= 0) j["component"] = p.component;
    return j;
}

Json to_json(const DerivativeEstimate& e, double t) {
    Json j;
    j["t"] = t;
    j["point"] = to_json(e.point);
    j["exists"] = e.exists;
    j["value"] = e.exists ? number_or_null(e.value) : Json(nullptr);
    j["left"] = e.left_estimate ? number_or_null(*e.left_estimate) : Json(nullptr);
    j["right"] = e.right_estimate ? number_or_null(*e.right_estimate) : Json(nullptr);
    j["method"] = e.method == DerivativeMethod::JumpFormula ? "jump_formula" : "limit_extrapolation";
    j["error_estimate"] = number_or_null(e.error_estimate);
    j["reason"] = e.reason;
    return j;
}

std::string to_text(const DerivativeEstimate& e, double t) {
    std::ostringstream os;
    if (e.exists) {
        os << "f'_g(" << format_number(t) << ") = " << format_number(e.value) << "  [" << to_string(e.point.kind)
           << ", t*=" << format_number(e.point.t_star) << ", "
           << (e.method == DerivativeMethod::JumpFormula ? "jump formula" : "extrapolated") << "]\n";
        return os.str();
    }
    os << "not g-differentiable";
    if (e.left_estimate && e.right_estimate)
        os << ": left=" << format_number(*e.left_estimate) << " right=" << format_number(*e.right_estimate);
    else if (!e.reason.empty())
        os << ": " << e.reason;
    os << "\n";
    return os.str();
}

Json to_json(const PhiEstimate& e, double t) {
    Json j;
    j["t"] = t;
    j["phi"] = e.value;
    j["certified"] = e.certified;
    j["samples"] = e.sample_sequence.size();
    return j;
}

std::string to_text(const PhiEstimate& e, double t) {
    return "phi(" + format_number(t) + ") = " + format_number(e.value) +
           (e.certified ? " (certified)" : " (sampled, " + std::to_string(e.sample_sequence.size()) + " ratios)") + "\n";
}

Json to_json(const FtcReport& r) {
    Json j;
    j["check"] = r.check;
    j["n_points"] = r.n_points;
    j["max_error"] = number_or_null(r.max_error);
    j["tol"] = r.tol;
    j["verdict"] = r.verdict ? "pass" : "fail";
    j["detail"] = r.detail;
    Json pts = Json::array();
    for (const auto& p : r.points)
        pts.push_back({{"t", p.t},
                       {"class", to_string(p.kind)},
                       {"phi", number_or_null(p.phi)},
                       {"expected", number_or_null(p.expected)},
                       {"estimate", number_or_null(p.estimate)},
                       {"error", number_or_null(p.error)},
                       {"pass", p.pass},
                       {"note", p.note}});
    j["points"] = pts;
    return j;
}

std::string to_text(const FtcReport& r) {
    std::ostringstream os;
    os << r.check << ": " << (r.verdict ? "PASS" : "FAIL") << "  points=" << r.n_points
       << "  max_error=" << format_number(r.max_error) << "  tol=" << format_number(r.tol) << "\n";
    if (!r.detail.empty()) os << "  " << r.detail << "\n";
    for (const auto& p : r.points)
        if (!p.pass)
            os << "  failed at t=" << format_number(p.t) << " (" << to_string(p.kind) << "): expected "
               << format_number(p.expected) << ", got " << format_number(p.estimate)
               << (p.note.empty() ? "" : " [" + p.note + "]") << "\n";
    return os.str();
}

Json to_json(const WitnessReport& r) {
    Json j;
    j["sequence"] = r.sequence;
    j["threshold"] = r.threshold;
    j["threshold_index"] = r.threshold_index ? Json(*r.threshold_index) : Json(nullptr);
    j["growth_exponent"] = number_or_null(r.growth_exponent);
    if (r.ratio_m > 0) {
        j["ratio_m"] = r.ratio_m;
        j["growth_ratio"] = number_or_null(r.growth_ratio);
    }
    j["divergent"] = r.divergent;
    j["verdict"] = r.verdict;
    Json rows = Json::array();
    for (const auto& w : r.rows)
        rows.push_back({{"n", w.n},
                        {"x", w.x},
                        {"g", w.g},
                        {"F", w.F},
                        {"quotient", number_or_null(w.quotient)},
                        {"reference", number_or_null(w.reference)}});
    j["rows"] = rows;
    return j;
}

std::string to_text(const WitnessReport& r) {
    std::ostringstream os;
    os << "sequence: " << r.sequence << "\n";
    os << "rows: " << r.rows.size() << "  threshold " << format_number(r.threshold) << " reached at n="
       << (r.threshold_index ? std::to_string(*r.threshold_index) : "never") << "\n";
    os << "growth exponent: " << format_number(r.growth_exponent) << "\n";
    if (r.ratio_m > 0) os << "Q(x_{16m})/Q(x_{2m}) at m=" << r.ratio_m << ": " << format_number(r.growth_ratio) << "\n";
    // Rows at n = 1, 2, 4, 8, ... and the last one.
    for (std::size_t i = 0; i < r.rows.size(); i = 2 * i + 1) {
        const auto& w = r.rows[i];
        os << "  n=" << w.n << "  x=" << format_number(w.x) << "  quotient=" << format_number(w.quotient)
           << "  reference=" << format_number(w.reference) << "\n";
    }
    if (!r.rows.empty()) {
        const auto& w = r.rows.back();
        os << "  n=" << w.n << "  x=" << format_number(w.x) << "  quotient=" << format_number(w.quotient)
           << "  reference=" << format_number(w.reference) << "\n";
    }
    os << "verdict: " << r.verdict << "\n";
    return os.str();
}

Json to_json(const Approximation& a, double epsilon, const Boundary& boundary) {
    Json j;
    j["epsilon"] = epsilon;
    j["boundary"] = to_string(boundary.kind);
    j["construction"] = a.construction;
    j["l1g_error"] = a.l1g_error;
    j["certified"] = a.l1g_error < epsilon;
    j["a"] = a.a;
    j["b"] = a.b;
    j["a_star"] = a.a_star;
    j["ell"] = a.ell;
    j["r"] = a.r ? Json(*a.r) : Json(nullptr);
    j["s"] = a.s ? Json(*a.s) : Json(nullptr);
    j["cells"] = a.cells;
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace stieltjes
