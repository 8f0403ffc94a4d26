// Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
// 2 malformed input.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stieltjes/corpus.hpp"
#include "stieltjes/counterexamples.hpp"
#include "stieltjes/density.hpp"
#include "stieltjes/derivative.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/ftc.hpp"
#include "stieltjes/integral.hpp"
#include "stieltjes/io.hpp"
#include "stieltjes/measure.hpp"

using namespace stieltjes;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct Globals {
    std::uint64_t seed = 0;
    bool json = false;
    std::string out;
};

int emit(const Globals& g, const std::string& text, const Json& report, bool pass) {
    if (g.json)
        std::cout << dump(report);
    else
        std::cout << text;
    if (!g.out.empty()) {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) throw Error(ErrorKind::MalformedSpec, g.out + ": cannot write report");
        f << dump(report);
    }
    return pass ? kPass : kCheckFailed;
}

MeasureKind parse_kind(const std::string& s) {
    if (s == "signed") return MeasureKind::Signed;
    if (s == "positive") return MeasureKind::Positive;
    if (s == "negative") return MeasureKind::Negative;
    if (s == "total") return MeasureKind::Total;
    throw Error(ErrorKind::MalformedSpec, "--kind: expected signed, positive, negative or total");
}

IntervalSet set_or_domain(const std::string& text, const Derivator& d) {
    return text.empty() ? IntervalSet::half_open(d.a(), d.b()) : parse_interval_set(text);
}

int run_analyze(const Globals& g, const std::string& spec) {
    const Analysis a = analyze(load_derivator(spec));
    return emit(g, to_text(a), to_json(a), true);
}

int run_measure(const Globals& g, const std::string& spec, const std::string& set_text, const std::string& kind) {
    const Derivator d = load_derivator(spec);
    const IntervalSet set = set_or_domain(set_text, d);
    Json j;
    j["set"] = set.to_string();
    std::ostringstream os;
    const std::vector<std::string> kinds =
        kind.empty() ? std::vector<std::string>{"signed", "positive", "negative", "total"} : std::vector{kind};
    for (const auto& k : kinds) {
        const double v = measure_of(d, set, parse_kind(k));
        j[k] = v;
        os << "mu_g[" << k << "](" << set.to_string() << ") = " << format_number(v) << "\n";
    }
    return emit(g, os.str(), j, true);
}

int run_integrate(const Globals& g, const std::string& spec, const std::string& fspec, const std::string& set_text,
                  const std::string& kind, int oracle_depth) {
    const Derivator d = load_derivator(spec);
    const PiecewiseFunction f = load_function(fspec, d);
    const IntervalSet set = set_or_domain(set_text, d);
    const IntegralResult r = integrate_with_bound(f, d, set, parse_kind(kind));
    Json j;
    j["set"] = set.to_string();
    j["kind"] = kind;
    j["value"] = r.value;
    j["tail_bound"] = r.tail_bound;
    std::ostringstream os;
    os << "integral over " << set.to_string() << " (" << kind << ") = " << format_number(r.value);
    if (r.tail_bound > 0.0) os << "  (tail bound " << format_number(r.tail_bound) << ")";
    os << "\n";
    bool pass = true;
    if (oracle_depth > 0) {
        if (kind != "signed" || set.parts().size() != 1 || !set.parts()[0].lo_closed || set.parts()[0].hi_closed ||
            set.parts()[0].is_point())
            throw Error(ErrorKind::MalformedSpec, "--oracle-depth needs a signed integral over a single [x,y)");
        const auto& p = set.parts()[0];
        const double o = rs_refinement_oracle(f, d, p.lo, p.hi, oracle_depth);
        const double diff = std::abs(o - r.value);
        pass = diff <= 1e-6 * (1.0 + std::abs(r.value));
        j["oracle_depth"] = oracle_depth;
        j["oracle"] = o;
        j["oracle_difference"] = diff;
        os << "refinement sum at depth " << oracle_depth << " = " << format_number(o) << "  |difference| = "
           << format_number(diff) << "\n";
    }
    return emit(g, os.str(), j, pass);
}

int run_derive(const Globals& g, const std::string& spec, const std::string& fspec, double t, double tol) {
    const Derivator d = load_derivator(spec);
    const PiecewiseFunction f = load_function(fspec, d);
    const DerivativeEstimate e = g_derivative(f, d, t, tol);
    return emit(g, to_text(e, t), to_json(e, t), e.exists);
}

int run_phi(const Globals& g, const std::string& spec, double t) {
    const Derivator d = load_derivator(spec);
    const PhiEstimate e = phi(d, t);
    return emit(g, to_text(e, t), to_json(e, t), e.value > 0.0);
}

struct SuiteTally {
    int pass = 0;
    int fail = 0;
    double max_error = 0.0;

    void add(const FtcReport& r) {
        (r.verdict ? pass : fail)++;
        if (std::isfinite(r.max_error)) max_error = std::max(max_error, r.max_error);
    }
};

FtcReport run_suite(const std::string& suite, const PiecewiseFunction& f, const Derivator& d, int samples,
                    std::optional<double> tol, std::uint64_t seed) {
    if (suite == "ae") return check_ftc_ae(f, d, samples, tol.value_or(1e-6));
    if (suite == "barrow") return check_barrow(primitive(f, d), tol.value_or(1e-9));
    EverywhereOptions opts;
    opts.seed = seed;
    return check_ftc_everywhere(f, d, tol.value_or(1e-6), opts);
}

// A thrown check error becomes a failed report so corpus runs keep going.
FtcReport guarded_suite(const std::string& suite, const PiecewiseFunction& f, const Derivator& d, int samples,
                        std::optional<double> tol, std::uint64_t seed) {
    try {
        return run_suite(suite, f, d, samples, tol, seed);
    } catch (const Error& e) {
        FtcReport r;
        r.check = suite;
        r.verdict = false;
        r.max_error = std::nan("");
        r.detail = e.what();
        return r;
    }
}

int run_ftc_files(const Globals& g, const std::string& suite, const std::string& spec, const std::string& fspec,
                  int samples, std::optional<double> tol) {
    const Derivator d = load_derivator(spec);
    const PiecewiseFunction f = load_function(fspec, d);
    const std::vector<std::string> suites =
        suite == "all" ? std::vector<std::string>{"ae", "barrow", "everywhere"} : std::vector{suite};
    Json j;
    j["derivator"] = spec;
    j["function"] = fspec;
    j["seed"] = g.seed;
    std::string text;
    bool pass = true;
    for (const auto& s : suites) {
        const FtcReport r = run_suite(s, f, d, samples, tol, g.seed);
        pass = pass && r.verdict;
        j[s] = to_json(r);
        text += to_text(r);
    }
    return emit(g, text, j, pass);
}

// Corpus members: "ae" and "barrow" use the continuous piecewise-affine f,
// "everywhere" uses the g-continuous P_A o g~.
int run_ftc_corpus(const Globals& g, const std::string& suite, int count, int samples, std::optional<double> tol) {
    const auto corpus = make_corpus(count, g.seed);
    const std::vector<std::string> suites =
        suite == "all" ? std::vector<std::string>{"ae", "barrow", "everywhere"} : std::vector{suite};
    Json j;
    j["seed"] = g.seed;
    j["corpus_size"] = count;
    Json members = Json::array();
    std::vector<SuiteTally> tally(suites.size());
    std::string failures;
    for (const auto& m : corpus) {
        Json mj;
        mj["index"] = m.index;
        mj["derivator"] = to_json(m.spec);
        for (std::size_t i = 0; i < suites.size(); ++i) {
            const PiecewiseFunction& f = suites[i] == "everywhere" ? m.h : m.f;
            const FtcReport r = guarded_suite(suites[i], f, m.d, samples, tol, g.seed);
            tally[i].add(r);
            mj[suites[i]] = {{"verdict", r.verdict ? "pass" : "fail"},
                             {"points", r.n_points},
                             {"max_error", std::isfinite(r.max_error) ? Json(r.max_error) : Json(nullptr)}};
            if (!r.verdict) failures += "  member " + std::to_string(m.index) + " " + suites[i] + ": " + r.detail + "\n";
        }
        members.push_back(mj);
    }
    std::ostringstream os;
    os << "corpus of " << count << " (seed " << g.seed << ")\n";
    bool pass = true;
    Json summary;
    for (std::size_t i = 0; i < suites.size(); ++i) {
        pass = pass && tally[i].fail == 0;
        summary[suites[i]] = {{"pass", tally[i].pass}, {"fail", tally[i].fail}, {"max_error", tally[i].max_error}};
        os << suites[i] << ": " << tally[i].pass << " pass, " << tally[i].fail
           << " fail, max_error=" << format_number(tally[i].max_error) << "\n";
    }
    os << failures;
    j["summary"] = summary;
    j["members"] = members;
    return emit(g, os.str(), j, pass);
}

int run_approximate(const Globals& g, const std::string& spec, const std::string& fspec, double eps,
                    const std::string& boundary_name, double alpha, double beta, const std::vector<double>& sub,
                    const std::string& csv, int resolution) {
    const Derivator d = load_derivator(spec);
    const PiecewiseFunction f = load_function(fspec, d);
    Boundary boundary;
    if (boundary_name == "clamped")
        boundary = Boundary::clamped(alpha, beta);
    else if (boundary_name == "jump-start")
        boundary = Boundary::jump_start(beta);
    else if (boundary_name != "free")
        throw Error(ErrorKind::MalformedSpec, "--boundary: expected free, clamped or jump-start");
    ApproxOptions opts;
    if (!sub.empty()) opts.subinterval = std::pair{sub[0], sub[1]};
    const Approximation ap = approximate_in_L1g(f, d, eps, boundary, opts);
    const bool pass = ap.l1g_error < eps;
    std::ostringstream os;
    os << "construction: " << ap.construction << "\n"
       << "||f - h||_L1g on [" << format_number(ap.a) << "," << format_number(ap.b)
       << ") = " << format_number(ap.l1g_error) << (pass ? " < " : " >= ") << format_number(eps) << "\n"
       << "cells: " << ap.cells << "\n";
    if (!csv.empty()) {
        std::ofstream out(csv, std::ios::binary);
        if (!out) throw Error(ErrorKind::MalformedSpec, csv + ": cannot write");
        out << "t,f,h\n";
        char line[128];
        for (int i = 0; i < resolution; ++i) {
            const double t = ap.a + (ap.b - ap.a) * i / (resolution - 1);
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", t, f(t), ap.h(t));
            out << line;
        }
        os << "wrote " << csv << "\n";
    }
    return emit(g, os.str(), to_json(ap, eps, boundary), pass);
}

int run_example2(const Globals& g, const std::string& figures, bool check_series, long n, long report_n,
                 long witness, double threshold) {
    std::ostringstream os;
    Json j;
    bool pass = true;
    const bool nothing = figures.empty() && !check_series && report_n <= 0 && witness <= 0;
    if (check_series || nothing) {
        const Rational s = series_identity_check(n);
        const double v = s.convert_to<double>();
        const Rational diff = abs(s - Rational(1, 6));
        const double dv = diff.convert_to<double>();
        // The partial sums approach 1/6 like 1/(3 N^2).
        const bool ok = dv <= 1.0 / (static_cast<double>(n) * static_cast<double>(n));
        pass = pass && ok;
        char buf[160];
        std::snprintf(buf, sizeof buf, "partial sum N=%ld: %.17g  |S_N - 1/6| = %.6e\n", n, v, dv);
        os << buf;
        j["series"] = {{"N", n}, {"partial_sum", v}, {"abs_difference", dv}, {"pass", ok}};
    }
    if (report_n > 0) {
        const WitnessReport r = oscillator_report(report_n, threshold);
        pass = pass && r.divergent;
        os << to_text(r);
        j["oscillator_report"] = to_json(r);
    }
    if (witness > 0) {
        const Derivator d = build_oscillator(static_cast<int>(witness) + 64);
        const auto [f, r] = necessity_witness(d, 0.0, oscillator_approach(witness), 1e-6, threshold);
        pass = pass && r.divergent;
        os << to_text(r);
        j["necessity_witness"] = to_json(r);
    }
    if (!figures.empty()) {
        const auto paths = write_figure_data(figures, 50);
        Json files = Json::array();
        for (const auto& p : paths) {
            os << "wrote " << p << "\n";
            files.push_back(p);
        }
        j["figures"] = files;
    }
    return emit(g, os.str(), j, pass);
}

bool is_input_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::MalformedSpec:
        case ErrorKind::NonAdmissibleEndpoint:
        case ErrorKind::OutOfDomain:
        case ErrorKind::DuplicateAbscissa:
        case ErrorKind::OutOfRange:
        case ErrorKind::BoundaryHypothesisViolated:
        case ErrorKind::NondecreasingRequired: return true;
        default: return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stieltjes calculus for derivators of bounded variation"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Seed for all randomized sampling")->default_val(0);
    app.add_flag("--json", g.json, "Print the JSON report instead of text");
    app.add_option("--out", g.out, "Also write the JSON report to this file");

    std::string spec, fspec, set_text, kind, integrate_kind, suite = "all", boundary = "free", figures, csv;
    double t = 0.0, tol = 1e-6, eps = 0.01, alpha = 0.0, beta = 0.0, threshold = 10.0;
    std::optional<double> suite_tol;
    int oracle_depth = 0, samples = 64, corpus = 0, resolution = 2001;
    long n = 1000, report_n = 0, witness = 0;
    bool check_series = false;
    std::vector<double> sub;

    auto* analyze_cmd = app.add_subcommand("analyze", "Classify a derivator: D_g, C_g, N_g+-, Hahn sets, phi");
    analyze_cmd->add_option("spec", spec, "Derivator spec file")->required();

    auto* measure_cmd = app.add_subcommand("measure", "Signed, positive, negative and total measure of a set");
    measure_cmd->add_option("spec", spec, "Derivator spec file")->required();
    measure_cmd->add_option("--set", set_text, "Interval set, e.g. \"[0,1), {2}\" (default [a,b))");
    measure_cmd->add_option("--kind", kind, "signed|positive|negative|total (default all)");

    auto* integrate_cmd = app.add_subcommand("integrate", "Integral of f against mu_g over a set");
    integrate_cmd->add_option("spec", spec, "Derivator spec file")->required();
    integrate_cmd->add_option("fspec", fspec, "Function spec file")->required();
    integrate_cmd->add_option("--set", set_text, "Interval set (default [a,b))");
    integrate_cmd->add_option("--kind", integrate_kind, "signed|positive|negative|total")->default_val("signed");
    integrate_cmd->add_option("--oracle-depth", oracle_depth, "Compare with the refinement sum at this depth");

    auto* derive_cmd = app.add_subcommand("derive", "Stieltjes derivative of f with respect to g at a point");
    derive_cmd->add_option("spec", spec, "Derivator spec file")->required();
    derive_cmd->add_option("fspec", fspec, "Function spec file")->required();
    derive_cmd->add_option("--at", t, "Point")->required();
    derive_cmd->add_option("--tol", tol, "Convergence tolerance")->default_val(1e-6);

    auto* phi_cmd = app.add_subcommand("phi", "liminf of |dg| / |dg~| at a point");
    phi_cmd->add_option("spec", spec, "Derivator spec file")->required();
    phi_cmd->add_option("--at", t, "Point")->required();

    auto* ftc_cmd = app.add_subcommand("ftc-check", "Fundamental theorem checks on a pair or on the seeded corpus");
    ftc_cmd->add_option("spec", spec, "Derivator spec file");
    ftc_cmd->add_option("fspec", fspec, "Function spec file");
    ftc_cmd->add_option("--suite", suite, "ae|barrow|everywhere|all")
        ->check(CLI::IsMember({"ae", "barrow", "everywhere", "all"}))
        ->default_val("all");
    ftc_cmd->add_option("--corpus", corpus, "Run on this many seeded corpus members instead of files");
    ftc_cmd->add_option("--samples", samples, "Mass-placed samples for the a.e. check")->default_val(64);
    ftc_cmd->add_option("--tol", suite_tol, "Tolerance (default 1e-6, barrow 1e-9)");

    auto* approx_cmd = app.add_subcommand("approximate", "g-continuous approximant within eps in L1_g");
    approx_cmd->add_option("spec", spec, "Derivator spec file")->required();
    approx_cmd->add_option("fspec", fspec, "Function spec file")->required();
    approx_cmd->add_option("--eps", eps, "Target L1_g distance")->default_val(0.01);
    approx_cmd->add_option("--boundary", boundary, "free|clamped|jump-start")->default_val("free");
    approx_cmd->add_option("--alpha", alpha, "h(a) for clamped");
    approx_cmd->add_option("--beta", beta, "h(b) for clamped and jump-start");
    approx_cmd->add_option("--sub", sub, "Subinterval a b")->expected(2);
    approx_cmd->add_option("--csv", csv, "Write t,f,h samples to this file");
    approx_cmd->add_option("--resolution", resolution, "CSV rows")->default_val(2001)->check(CLI::Range(2, 1000000));

    auto* ex2_cmd = app.add_subcommand("example2", "Oscillator counterexample: series, quotient growth, figures");
    ex2_cmd->add_option("--figures", figures, "Directory for the three figure CSV files");
    ex2_cmd->add_flag("--check-series", check_series, "Print the partial sum and its distance from 1/6");
    ex2_cmd->add_option("--n", n, "Partial sum length")->default_val(1000)->check(CLI::Range(1L, 10000000L));
    ex2_cmd->add_option("--report", report_n, "Quotient Q(x_{2n}) table for n up to this value");
    ex2_cmd->add_option("--witness", witness, "Necessity witness along this many approach points");
    ex2_cmd->add_option("--threshold", threshold, "Divergence threshold")->default_val(10.0);

    for (auto* sub_cmd : app.get_subcommands({})) sub_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*analyze_cmd) return run_analyze(g, spec);
        if (*measure_cmd) return run_measure(g, spec, set_text, kind);
        if (*integrate_cmd) return run_integrate(g, spec, fspec, set_text, integrate_kind, oracle_depth);
        if (*derive_cmd) return run_derive(g, spec, fspec, t, tol);
        if (*phi_cmd) return run_phi(g, spec, t);
        if (*ftc_cmd) {
            if (corpus > 0) return run_ftc_corpus(g, suite, corpus, samples, suite_tol);
            if (spec.empty() || fspec.empty())
                throw Error(ErrorKind::MalformedSpec, "ftc-check needs spec and fspec files, or --corpus N");
            return run_ftc_files(g, suite, spec, fspec, samples, suite_tol);
        }
        if (*approx_cmd) return run_approximate(g, spec, fspec, eps, boundary, alpha, beta, sub, csv, resolution);
        if (*ex2_cmd) return run_example2(g, figures, check_series, n, report_n, witness, threshold);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_input_error(e.kind()) ? kInputError : kCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
