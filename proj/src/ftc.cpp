#include "stieltjes/ftc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "stieltjes/continuity.hpp"
#include "stieltjes/derivative.hpp"
#include "stieltjes/errors.hpp"

namespace stieltjes {

namespace {

void finish(FtcReport& r) {
    std::stable_sort(r.points.begin(), r.points.end(), [](const FtcPoint& x, const FtcPoint& y) { return x.t < y.t; });
    r.n_points = r.points.size();
    r.verdict = true;
    for (const FtcPoint& p : r.points) {
        r.max_error = std::max(r.max_error, p.error);
        r.verdict = r.verdict && p.pass;
    }
}

bool in_null_set(const Derivator& d, double t) {
    for (const ConstancyComponent& c : d.constancy_components())
        if (t >= c.lo && t <= c.hi) return true;
    return false;
}

}  // namespace

double variation_quantile(const Derivator& d, double u) {
    const double w = d.variation_at(d.a()) + u;
    if (d.kind() == DerivatorKind::Oscillator) return std::clamp(w, d.a(), d.b());
    const auto& t = d.breakpoints();
    const auto& s = d.slopes();
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double after_atom = d.variation_at(t[i]) + std::abs(d.jump(t[i]));
        if (w < after_atom) return t[i];
        if (w < d.variation_at(t[i + 1])) return std::min(t[i + 1], t[i] + (w - after_atom) / std::abs(s[i]));
    }
    return d.b();
}

FtcReport check_ftc_ae(const PiecewiseFunction& f, const Derivator& d, int n_samples, double tol) {
    FtcReport report;
    report.check = "ftc_ae";
    report.tol = tol;
    const PiecewiseFunction F = primitive(f, d).as_function();
    const double mass = d.variation_at(d.b()) - d.variation_at(d.a());
    const double floor = d.tail_end();

    std::vector<double> ts;
    for (int k = 0; k < n_samples; ++k) ts.push_back(variation_quantile(d, (k + 0.5) / n_samples * mass));
    for (const double t : d.breakpoints())
        if (t < d.b() && d.jump(t) != 0.0) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    for (const double t : ts) {
        const bool atom = t < d.b() && d.jump(t) != 0.0;
        if (!atom) {
            // Knots of f or d carry no |mu_g|-mass, nor do N_g, C_g and the unresolved tail.
            if (t < floor || in_null_set(d, t) || d.is_breakpoint(t) || !f.knots(t, t).empty()) continue;
        }
        FtcPoint p;
        p.t = t;
        p.expected = f(t);
        const DerivativeEstimate e = g_derivative(F, d, t, tol);
        p.kind = e.point.kind;
        p.estimate = e.value;
        if (atom) {
            p.error = std::abs(e.value - p.expected);
            p.pass = e.exists && e.value == p.expected;
            p.note = "atom";
        } else {
            p.error = e.exists ? std::abs(e.value - p.expected) : std::numeric_limits<double>::infinity();
            p.pass = e.exists && p.error <= tol;
            if (!e.exists) p.note = e.reason;
        }
        report.points.push_back(p);
    }
    finish(report);
    return report;
}

FtcReport check_barrow(const PiecewiseFunction& F, const Derivator& d, double tol, int grid_points) {
    FtcReport report;
    report.check = "barrow";
    report.tol = tol;
    const double a = d.a(), b = d.b();
    const double lo = std::max(a, std::max(d.tail_end(), F.tail_end()));
    std::vector<double> grid;
    for (int j = 0; j < grid_points; ++j) grid.push_back(a + (b - a) * j / (grid_points - 1));
    grid.back() = b;
    std::vector<double> knots = merge_knots(merge_knots(d.knots(lo, b), F.knots(lo, b)), grid);
    knots.erase(std::remove_if(knots.begin(), knots.end(), [&](double k) { return k < lo; }), knots.end());
    if (knots.empty() || knots.front() != lo) knots.insert(knots.begin(), lo);

    const double g1 = 1.0 / std::sqrt(3.0);
    // Running integral of the sampled derivative; compared at each grid point.
    double sum = 0.0, comp = 0.0;
    auto add = [&](double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    };
    const double F_lo = F(lo);
    std::size_t gi = 0;
    auto record = [&](double t) {
        while (gi < grid.size() && grid[gi] < lo) ++gi;
        if (gi < grid.size() && grid[gi] == t) {
            FtcPoint p;
            p.t = t;
            p.kind = d.classify_point(t).kind;
            p.expected = F(t) - F_lo;
            p.estimate = sum + comp;
            p.error = std::abs(p.estimate - p.expected);
            p.pass = p.error <= tol;
            report.points.push_back(p);
            ++gi;
        }
    };
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const double x = knots[i];
        record(x);
        if (i + 1 == knots.size()) break;
        const double j = d.jump(x);
        if (j != 0.0) {
            const DerivativeEstimate e = g_derivative(F, d, x);
            if (!e.exists)
                throw Error(ErrorKind::NotDifferentiableAlmostEverywhere,
                            "no g-derivative at the atom t=" + format_number(x));
            add(e.value * j);
        }
        const double y = knots[i + 1];
        const double s = d.slopes()[d.segment_left_of(y)];
        if (s == 0.0 || !(y > x)) continue;
        const double mid = 0.5 * (x + y), half = 0.5 * (y - x);
        for (const double node : {mid - half * g1, mid + half * g1}) {
            const DerivativeEstimate e = g_derivative(F, d, node);
            if (!e.exists)
                throw Error(ErrorKind::NotDifferentiableAlmostEverywhere,
                            "derivative sampling failed at t=" + format_number(node) + " on a piece of positive mass");
            add(e.value * s * half);
        }
    }
    finish(report);
    if (!report.verdict) {
        if (auto w = ac_falsifier(F, d, 0.5 * report.max_error)) {
            std::ostringstream os;
            os << "not g-absolutely continuous: " << w->family.size() << " interval(s) with total variation "
               << format_number(w->variation) << " carry increment " << format_number(w->increment);
            report.detail = os.str();
        }
    }
    return report;
}

FtcReport check_barrow(const Primitive& F, double tol, int grid_points) {
    return check_barrow(F.as_function(), F.derivator(), tol, grid_points);
}

std::optional<AcWitness> ac_falsifier(const PiecewiseFunction& F, const Derivator& d, double epsilon, int budget) {
    const double a = d.a(), b = d.b(), len = b - a;
    struct Cell {
        double u, v, var, inc;
    };
    std::vector<Cell> cells;
    auto add = [&](double u, double v) {
        u = std::max(u, a);
        v = std::min(v, b);
        if (!(v > u)) return;
        cells.push_back({u, v, d.variation_at(v) - d.variation_at(u), std::abs(F(v) - F(u))});
    };
    for (int i = 0; i < budget; ++i) add(a + len * i / budget, a + len * (i + 1) / budget);
    for (const double k : merge_knots(d.knots(a, b), F.knots(a, b)))
        for (const int e : {20, 30, 40}) add(k - std::ldexp(len, -e), k + std::ldexp(len, -e));

    // Largest increment per unit of variation first; zero-variation cells lead.
    std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
        const double rx = x.var > 0 ? x.inc / x.var : std::numeric_limits<double>::infinity();
        const double ry = y.var > 0 ? y.inc / y.var : std::numeric_limits<double>::infinity();
        if (rx != ry) return rx > ry;
        if (x.inc != y.inc) return x.inc > y.inc;
        return x.u < y.u;
    });

    std::optional<AcWitness> last;
    for (int k = 1; k <= 30; ++k) {
        const double delta = std::ldexp(1.0, -k);
        AcWitness w;
        w.delta = delta;
        w.epsilon = epsilon;
        std::vector<std::pair<double, double>> taken;
        for (const Cell& c : cells) {
            if (c.inc == 0.0 || w.variation + c.var >= delta) continue;
            const bool overlap = std::any_of(taken.begin(), taken.end(),
                                             [&](const auto& p) { return c.u < p.second && p.first < c.v; });
            if (overlap) continue;
            taken.push_back({c.u, c.v});
            w.variation += c.var;
            w.increment += c.inc;
        }
        if (w.increment < epsilon) return std::nullopt;
        std::sort(taken.begin(), taken.end());
        w.family = std::move(taken);
        last = std::move(w);
    }
    return last;
}

FtcReport check_ftc_everywhere(const PiecewiseFunction& f, const Derivator& d, double tol,
                               const EverywhereOptions& opts) {
    FtcReport report;
    report.check = "ftc_everywhere";
    report.tol = tol;
    std::vector<double> ts;
    for (const double t : d.breakpoints()) ts.push_back(t);
    for (const ConstancyComponent& c : d.constancy_components()) {
        ts.push_back(c.lo);
        ts.push_back(c.hi);
        ts.push_back(0.5 * (c.lo + c.hi));
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < opts.n_random; ++i) ts.push_back(d.a() + (d.b() - d.a()) * unit(rng));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    const PiecewiseFunction F = primitive(f, d).as_function();
    for (const double t : ts) {
        FtcPoint p;
        p.t = t;
        const PhiEstimate ph = phi(d, t);
        p.phi = ph.value;
        const PointClass pc = d.classify_point(t);
        p.kind = pc.kind;
        p.expected = f(pc.t_star);
        if (!(ph.value > 0.0)) {
            if (opts.throw_on_phi)
                throw Error(ErrorKind::PhiHypothesisViolated, "phi(t)=" + format_number(ph.value) +
                                                                  " at t=" + format_number(t));
            p.note = "phi hypothesis violated";
            p.error = std::numeric_limits<double>::infinity();
            report.points.push_back(p);
            continue;
        }
        const ContinuityMode mode = t > d.a() ? ContinuityMode::Left : ContinuityMode::Right;
        if (!check_g_continuity(f, d, t, mode).pass) p.note = "f fails the g-continuity check";
        const DerivativeEstimate e = g_derivative(F, d, t, tol);
        p.estimate = e.value;
        p.error = e.exists ? std::abs(e.value - p.expected) : std::numeric_limits<double>::infinity();
        p.pass = e.exists && p.error <= tol && p.note.empty();
        if (!e.exists && p.note.empty()) p.note = e.reason;
        report.points.push_back(p);
    }
    finish(report);
    return report;
}

}  // namespace stieltjes
