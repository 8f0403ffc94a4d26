#include "stieltjes/counterexamples.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "stieltjes/density.hpp"
#include "stieltjes/derivative.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/integral.hpp"
#include "stieltjes/measure.hpp"
#include "stieltjes/oscillator_shape.hpp"

namespace stieltjes {

namespace {

double pow43(double x) { return x * std::cbrt(x); }

double fit_exponent(const std::vector<WitnessRow>& rows, long lo, long hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const WitnessRow& r : rows) {
        if (r.n < lo || r.n > hi || !(r.quotient > 0.0)) continue;
        const double x = std::log(static_cast<double>(r.n)), y = std::log(r.quotient);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return 0.0;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

[[noreturn]] void unsuitable(const std::string& what) { throw Error(ErrorKind::SequenceUnsuitable, what); }

}  // namespace

Rational alpha_exact(long n) {
    if (n < 1) throw Error(ErrorKind::OutOfRange, "alpha_n needs n >= 1");
    return n == 1 ? Rational(1, 2) : Rational(1, n);
}

std::vector<Rational> x_recursion(long n) {
    std::vector<Rational> x;
    x.reserve(static_cast<std::size_t>(std::max(n, 1L)));
    x.push_back(Rational(1));
    for (long m = 2; m <= n; ++m) {
        const long k = m / 2;
        if (m % 2 == 0)
            x.push_back(x.back() / (1 + alpha_exact(k)));
        else
            x.push_back((1 - alpha_exact(k)) * x.back());
    }
    return x;
}

Rational x_closed_form(long n) {
    if (n < 1) throw Error(ErrorKind::OutOfRange, "x_n needs n >= 1");
    if (n == 1) return Rational(1);
    if (n == 2) return Rational(2, 3);
    const long k = n / 2;
    if (n % 2 == 0) return Rational(2, 3 * (k - 1) * (k + 1));
    return Rational(2, 3 * k * (k + 1));
}

SequenceTerm example_sequences(long n) {
    return {alpha_exact(n), x_recursion(n).back()};
}

Rational series_identity_check(long N) {
    if (N < 1) throw Error(ErrorKind::OutOfRange, "series needs N >= 1");
    Rational sum(0), prod(1);
    for (long k = 1; k <= N; ++k) {
        const Rational a = alpha_exact(k);
        prod *= (1 - a) / (1 + a);
        const Rational b = alpha_exact(k + 1);
        sum += b / (1 + b) * prod;
    }
    return sum;
}

Derivator build_oscillator(int N) {
    if (N < 2) throw Error(ErrorKind::OutOfRange, "oscillator depth must be at least 2");
    return Derivator::oscillator(N);
}

double psi(const Derivator& d, double t) {
    if (!(t > d.a())) throw Error(ErrorKind::OutOfRange, "psi is defined for t > 0");
    return d(t) / (d.variation_at(t) - d.variation_at(d.a()));
}

PiecewiseFunction triangular_f(int N) { return PiecewiseFunction::triangular_wave(N); }

double s_height(long n) {
    const double xn = oscillator::x(n), xm = oscillator::x(n + 1);
    return (pow43(xn) - pow43(xm)) / (xn - xm);
}

double F_closed_form(double t) {
    if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorKind::OutOfRange, "F is evaluated on (0, 1]");
    const long k = oscillator::locate(t);
    const double xk = oscillator::x(k), xm = oscillator::x(k + 1);
    if (t == xk) return 0.5 * pow43(xk);
    // rising slope of the triangle whose peak height is s_k
    const double sigma = 2.0 * s_height(k) / (xk - xm);
    const double mid = 0.5 * (xk + xm);
    if (t >= mid) return 0.5 * pow43(xk) - 0.5 * sigma * (xk - t) * (xk - t);
    return 0.5 * pow43(xm) + 0.5 * sigma * (t - xm) * (t - xm);
}

std::optional<double> Q_at(double t) {
    if (!(t > 0.0 && t <= 1.0)) return std::nullopt;
    const long n = oscillator::locate(t);
    if (n % 2 == 1 && t == oscillator::x(n)) return std::nullopt;
    const double g = oscillator::value(t);
    if (g == 0.0) return std::nullopt;
    return F_closed_form(t) / g;
}

WitnessReport oscillator_report(long N, double threshold) {
    if (N < 4) throw Error(ErrorKind::OutOfRange, "oscillator report needs N >= 4");
    WitnessReport rep;
    rep.sequence = "x_{2n}";
    rep.threshold = threshold;
    for (long n = 1; n <= N; ++n) {
        WitnessRow row;
        row.n = n;
        row.x = oscillator::x(2 * n);
        row.g = oscillator::value(row.x);
        row.F = F_closed_form(row.x);
        row.quotient = row.F / row.g;
        row.reference = std::cbrt(row.x) / (2.0 * (n == 1 ? 0.5 : 1.0 / n));
        if (!rep.threshold_index && row.quotient > threshold) rep.threshold_index = n;
        rep.rows.push_back(row);
    }
    rep.ratio_m = N / 8;
    if (rep.ratio_m >= 1) rep.growth_ratio = rep.rows[8 * rep.ratio_m - 1].quotient / rep.rows[rep.ratio_m - 1].quotient;
    rep.growth_exponent = fit_exponent(rep.rows, std::max(4L, N / 8), N);
    const bool ratio_ok = rep.growth_ratio >= 1.9 && rep.growth_ratio <= 2.1;
    rep.divergent = ratio_ok && rep.threshold_index.has_value();
    rep.verdict = rep.divergent ? "divergence detected" : "inconclusive";
    return rep;
}

ApproachSpec oscillator_approach(long count) {
    ApproachSpec spec{"x_{2n}", {}};
    for (long n = 1; n <= count; ++n) spec.points.push_back(oscillator::x(2 * n));
    return spec;
}

std::pair<PiecewiseFunction, WitnessReport> necessity_witness(const Derivator& d, double t, const ApproachSpec& approach,
                                                              double tol, double threshold) {
    const PhiEstimate ph = phi(d, t, tol);
    if (ph.value > tol || (ph.certified && ph.value > 0.0))
        throw Error(ErrorKind::PhiNotZero, "phi(" + format_number(t) + ")=" + format_number(ph.value));
    const std::vector<double>& x = approach.points;
    const std::size_t K = x.size();
    if (K < 3) unsuitable("the approach sequence needs at least three points");
    if (d.tail_end() > x.back()) unsuitable("the derivator depth does not resolve the last sequence point");
    const double gt = d(t);
    for (std::size_t i = 0; i < K; ++i) {
        if (!(x[i] > t && x[i] <= d.b())) unsuitable("sequence points must lie in (t, b]");
        if (i > 0 && !(x[i] < x[i - 1])) unsuitable("sequence must be strictly decreasing");
        if (i > 0 && !(std::abs(d(x[i]) - gt) < std::abs(d(x[i - 1]) - gt)))
            unsuitable("|g(x_n) - g(t)| is not strictly decreasing at n=" + std::to_string(i + 1));
        if ((d(x[i]) - gt) * (d(x[0]) - gt) <= 0.0) unsuitable("g(x_n) - g(t) changes sign");
    }

    const HahnSets hahn = hahn_decomposition(d);
    const Derivator gv = d.variation_derivator();
    auto chi_at = [&](const IntervalSet& set, double s) { return set.contains(d.classify_point(s).t_star) ? 1.0 : 0.0; };

    // segment n (0-based) is [x_{n+1}, x_n]
    std::vector<double> M(K - 1), eps(K - 1), dv(K - 1);
    std::vector<PiecewiseFunction> pieces{PiecewiseFunction::constant(0.0)};
    std::vector<double> breaks{x[K - 1]};
    for (std::size_t n = K - 1; n-- > 0;) {
        const double lo = x[n + 1], hi = x[n];
        eps[n] = std::abs(d(lo) - d(hi));
        dv[n] = d.variation_at(hi) - d.variation_at(lo);
        M[n] = std::sqrt(eps[n] / dv[n]);
        const double budget = eps[n] / (2.0 * M[n]);
        ApproxOptions opts;
        opts.subinterval = {{lo, hi}};
        // The outermost ends are pinned to 0 so the truncated f stays g-continuous.
        auto end_value = [&](const IntervalSet& set, double s) {
            return (s == x[K - 1] || s == x[0]) ? 0.0 : chi_at(set, s);
        };
        PiecewiseFunction parts[2];
        for (int sign = 0; sign < 2; ++sign) {
            const IntervalSet& set = sign == 0 ? hahn.positive_part : hahn.negative_part;
            const double m = sign == 0 ? 1.0 : -1.0;
            const PiecewiseFunction target =
                m * PiecewiseFunction::indicator(set.intersected(IntervalSet::half_open(lo, hi)));
            opts.range = sign == 0 ? Range{0.0, 1.0} : Range{-1.0, 0.0};
            const double va = m * end_value(set, lo), vb = m * end_value(set, hi);
            const bool jump_start = gv.jump(lo) != 0.0;
            try {
                parts[sign] = approximate_in_L1g(target, gv, budget,
                                                 jump_start ? Boundary::jump_start(vb) : Boundary::clamped(va, vb), opts)
                                  .h;
            } catch (const Error& e) {
                unsuitable("segment " + std::to_string(n + 1) + ": " + e.what());
            }
        }
        pieces.push_back(PiecewiseFunction::sum({{M[n], parts[0]}, {M[n], parts[1]}}));
        breaks.push_back(hi);
    }
    pieces.push_back(PiecewiseFunction::constant(0.0));
    const PiecewiseFunction f = PiecewiseFunction::splice(breaks, pieces);

    const Primitive F(f, d);
    const double Ft = F(t);
    WitnessReport rep;
    rep.sequence = approach.name;
    rep.threshold = threshold;
    double bound = 0.0;  // sum over k >= n of M_k dv_k - eps_k
    std::vector<WitnessRow> rows(K - 1);
    for (std::size_t n = K - 1; n-- > 0;) {
        bound += M[n] * dv[n] - eps[n];
        WitnessRow& row = rows[n];
        row.n = static_cast<long>(n + 1);
        row.x = x[n];
        row.g = d(x[n]) - gt;
        row.F = F(x[n]) - Ft;
        row.quotient = row.F / row.g;
        row.reference = bound / std::abs(row.g);
    }
    for (const WitnessRow& row : rows)
        if (!rep.threshold_index && std::abs(row.quotient) >= threshold) rep.threshold_index = row.n;
    rep.rows = std::move(rows);
    const long last = static_cast<long>(K - 1);
    rep.growth_exponent = fit_exponent(rep.rows, 4, std::max(5L, last / 4));
    rep.divergent = rep.threshold_index.has_value();
    rep.verdict = rep.divergent ? "divergence detected" : "inconclusive";
    return {f, rep};
}

std::vector<std::string> write_figure_data(const std::string& dir, int N, int resolution) {
    if (resolution < 2) throw Error(ErrorKind::OutOfRange, "resolution must be at least 2");
    std::filesystem::create_directories(dir);
    const Derivator g = build_oscillator(N);
    const PiecewiseFunction f = triangular_f(N);
    struct Figure {
        const char* name;
        double lo, hi;
    };
    const Figure figures[] = {{"figure_g.csv", 0.0, 1.0}, {"figure_f.csv", 0.0, 1.0}, {"figure_F_g_Q.csv", 0.0, 0.25}};
    std::vector<std::string> paths;
    for (const Figure& fig : figures) {
        const std::string path = (std::filesystem::path(dir) / fig.name).string();
        std::FILE* out = std::fopen(path.c_str(), "w");
        if (!out) throw Error(ErrorKind::MalformedSpec, "cannot write " + path);
        std::fputs("t,g,g_tilde,f,F,Q\n", out);
        for (int i = 0; i < resolution; ++i) {
            const double t = fig.lo + (fig.hi - fig.lo) * i / (resolution - 1);
            const double F = t > 0.0 ? F_closed_form(t) : 0.0;
            const std::optional<double> Q = Q_at(t);
            std::fprintf(out, "%.17g,%.17g,%.17g,%.17g,%.17g,", t, g(t), g.variation_at(t), f(t), F);
            if (Q)
                std::fprintf(out, "%.17g\n", *Q);
            else
                std::fputs("nan\n", out);
        }
        std::fclose(out);
        paths.push_back(path);
    }
    return paths;
}

}  // namespace stieltjes
