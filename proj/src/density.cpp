#include "stieltjes/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "stieltjes/errors.hpp"
#include "stieltjes/integral.hpp"

namespace stieltjes {

namespace {

using Nodes = std::vector<std::pair<double, double>>;

void require_nondecreasing(const Derivator& d) {
    if (!d.nondecreasing())
        throw Error(ErrorKind::NondecreasingRequired, "density constructions need a nondecreasing derivator");
}

double mu_open(const Derivator& d, double u, double v) { return v > u ? d(v) - d.right_limit(u) : 0.0; }

// Upper estimate of sup |f - f(u)| over (u, v); f has no knot inside.
double oscillation(const PiecewiseFunction& f, double u, double v) {
    const double fu = f(u);
    double m = std::max(std::abs(f.right_limit(u) - fu), std::abs(f(v) - fu));
    for (int i = 1; i < 8; ++i) m = std::max(m, std::abs(f(u + (v - u) * i / 8.0) - fu));
    return m;
}

struct Cell {
    double u, v, err;
    bool operator<(const Cell& o) const { return err != o.err ? err < o.err : u > o.u; }
};

// Step-1 node set for the indicator of [x, y) with ramps of width below eta in g-space.
Nodes indicator_nodes(const Derivator& d, double x, double y, double eta) {
    const double gx = d(x), gy = d(y), ga = d(d.a());
    if (!(gy > gx)) return {};  // mu_g([x, y)) = 0
    double yt = gx - 0.5 * eta;
    if (gx - 0.5 * eta >= ga) {
        const double gt = d(g_dagger(d, gx - 0.5 * eta));
        if (gt > gx - eta && gt < gx) yt = gt;
    }
    double ys = gy - 0.5 * eta;
    if (ys <= gx) {
        ys = gx;
    } else {
        const double gs = d(g_dagger(d, ys));
        if (gs > gy - eta && gs < gy && gs >= gx) ys = gs;
    }
    Nodes out{{yt, 0.0}, {gx, 1.0}};
    if (ys > gx) out.push_back({ys, 1.0});
    out.push_back({gy, 0.0});
    return out;
}

// Sum of c_k P_{A_k} as one node list, evaluated at the union of abscissae.
Nodes sum_nodes(const std::vector<std::pair<double, Nodes>>& terms) {
    std::vector<std::pair<double, double>> events;  // (abscissa, slope change)
    for (const auto& [c, a] : terms)
        for (std::size_t j = 0; j + 1 < a.size(); ++j) {
            const double m = c * (a[j + 1].second - a[j].second) / (a[j + 1].first - a[j].first);
            events.push_back({a[j].first, m});
            events.push_back({a[j + 1].first, -m});
        }
    std::sort(events.begin(), events.end());
    Nodes out;
    double slope = 0.0, value = 0.0;
    for (std::size_t i = 0; i < events.size();) {
        const double x = events[i].first;
        if (!out.empty()) value += slope * (x - out.back().first);
        out.push_back({x, value});
        for (; i < events.size() && events[i].first == x; ++i) slope += events[i].second;
    }
    // Every term returns to zero past its last node.
    if (!out.empty()) out.back().second = 0.0;
    return out;
}

Nodes clamp_nodes(const Nodes& a, double lo, double hi) {
    if (a.empty()) return {{0.0, std::clamp(0.0, lo, hi)}};
    Nodes out;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j > 0) {
            const auto [x0, y0] = a[j - 1];
            const auto [x1, y1] = a[j];
            std::vector<double> cuts;
            for (const double level : {lo, hi})
                if ((y0 - level) * (y1 - level) < 0.0) cuts.push_back(x0 + (level - y0) / (y1 - y0) * (x1 - x0));
            std::sort(cuts.begin(), cuts.end());
            for (const double c : cuts)
                if (c > out.back().first && c < x1) out.push_back({c, std::clamp(y0 + (y1 - y0) * (c - x0) / (x1 - x0), lo, hi)});
        }
        out.push_back({a[j].first, std::clamp(a[j].second, lo, hi)});
    }
    return out;
}

struct Core {
    Nodes nodes;
    PiecewiseFunction h;
    int cells = 0;
};

// Points 1-2 on [x0, x1): simple approximation, trapezoids per cell, clamp to [lo, hi].
Core free_core(const PiecewiseFunction& f, const Derivator& d, double x0, double x1, double budget, Range range,
               int max_cells) {
    std::vector<double> ks = merge_knots(merge_knots(f.knots(x0, x1), d.knots(x0, x1)), {x0, x1});
    ks.erase(std::remove_if(ks.begin(), ks.end(), [&](double k) { return k < x0 || k > x1; }), ks.end());
    std::priority_queue<Cell> queue;
    std::vector<Cell> done;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        const Cell c{ks[i], ks[i + 1], oscillation(f, ks[i], ks[i + 1]) * mu_open(d, ks[i], ks[i + 1])};
        total += c.err;
        queue.push(c);
    }
    const double simple_budget = 0.45 * budget;
    while (total > simple_budget && !queue.empty() && static_cast<int>(queue.size()) < max_cells) {
        const Cell c = queue.top();
        queue.pop();
        const double m = 0.5 * (c.u + c.v);
        if (!(m > c.u && m < c.v)) {
            done.push_back(c);
            continue;
        }
        const Cell l{c.u, m, oscillation(f, c.u, m) * mu_open(d, c.u, m)};
        const Cell r{m, c.v, oscillation(f, m, c.v) * mu_open(d, m, c.v)};
        total += l.err + r.err - c.err;
        queue.push(l);
        queue.push(r);
    }
    for (; !queue.empty(); queue.pop()) done.push_back(queue.top());
    total = 0.0;
    for (const Cell& c : done) total += c.err;
    if (total > simple_budget)
        throw Error(ErrorKind::BudgetExceeded, "simple approximation needs more than " + std::to_string(max_cells) +
                                                   " cells on [" + format_number(x0) + "," + format_number(x1) + ")");
    std::sort(done.begin(), done.end(), [](const Cell& p, const Cell& q) { return p.u < q.u; });

    double mass = 0.0;
    for (const Cell& c : done) mass += std::abs(f(c.u));
    std::vector<std::pair<double, Nodes>> terms;
    if (mass > 0.0) {
        const double eta = 0.45 * budget / mass;  // each trapezoid misses at most 2 * (eta / 2)
        for (const Cell& c : done) {
            const double coef = f(c.u);
            if (coef == 0.0) continue;
            Nodes a = indicator_nodes(d, c.u, c.v, eta);
            if (!a.empty()) terms.push_back({coef, std::move(a)});
        }
    }
    Core core;
    core.cells = static_cast<int>(done.size());
    core.nodes = clamp_nodes(sum_nodes(terms), range.lo, range.hi);
    core.h = PiecewiseFunction::composed({core.nodes}, d);
    return core;
}

double a_star_of(const Derivator& d, double a) {
    for (const ConstancyComponent& c : d.constancy_components())
        if (c.lo < a && a < c.hi) return c.hi;
    return a;
}

double ell_of(const Derivator& d, double a_star, double b) {
    double t = b;
    for (int n = 0; n < 1000000; ++n) {
        const double p = g_dagger(d, d(t));
        if (!(p < t) || p < a_star) break;
        t = p;
    }
    return t;
}

bool is_atom(const Derivator& d, double t) { return t < d.b() && d.jump(t) != 0.0; }

std::vector<double> atoms_in(const Derivator& d, double lo, double hi) {
    std::vector<double> out;
    for (const double t : d.knots(lo, hi))
        if (t < hi && is_atom(d, t)) out.push_back(t);
    return out;
}

// Largest-gap bisection from `from` toward `to` until pred holds.
template <class Pred>
std::optional<double> bisect_toward(double from, double to, Pred pred) {
    for (int k = 1; k < 200; ++k) {
        const double t = to + (from - to) * std::ldexp(1.0, -k);
        if (t == to) break;
        if (pred(t)) return t;
    }
    return std::nullopt;
}

[[noreturn]] void boundary_error(const std::string& what) { throw Error(ErrorKind::BoundaryHypothesisViolated, what); }

}  // namespace

std::string to_string(Boundary::Kind kind) {
    switch (kind) {
        case Boundary::Kind::Free: return "Free";
        case Boundary::Kind::Clamped: return "Clamped";
        case Boundary::Kind::JumpStart: return "JumpStart";
    }
    return "?";
}

double g_dagger(const Derivator& d, double y) {
    require_nondecreasing(d);
    const auto& t = d.breakpoints();
    const auto& s = d.slopes();
    if (!(y >= d(d.a()) && y <= d(d.b())))
        throw Error(ErrorKind::OutOfRange, "y=" + format_number(y) + " is outside [g(a), g(b)]");
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double left = d(t[i]);
        if (y <= left) return t[i];
        if (y <= left + d.jump(t[i])) return t[i];
        const double right = d(t[i + 1]);
        if (y <= right && s[i] > 0.0)
            return std::clamp(t[i] + (y - left - d.jump(t[i])) / s[i], t[i], t[i + 1]);
    }
    return d.b();
}

PiecewiseFunction pa_interpolant(const InterpolantSpec& spec) { return PiecewiseFunction::interpolant(spec); }

Approximation approximate_in_L1g(const PiecewiseFunction& f, const Derivator& d, double epsilon,
                                 const Boundary& boundary, const ApproxOptions& opts) {
    require_nondecreasing(d);
    if (!(epsilon > 0.0)) throw Error(ErrorKind::OutOfRange, "epsilon must be positive");
    Approximation out;
    out.a = opts.subinterval ? opts.subinterval->first : d.a();
    out.b = opts.subinterval ? opts.subinterval->second : d.b();
    if (!(out.a >= d.a() && out.b <= d.b() && out.a < out.b))
        throw Error(ErrorKind::OutOfDomain, "subinterval must lie inside the domain");
    const double a = out.a, b = out.b;
    Range range = opts.range ? *opts.range : f.bounds().value_or(Range{0.0, 0.0});
    if (!opts.range && !f.bounds())
        throw Error(ErrorKind::OutOfRange, "f has no declared range; pass one explicitly");
    const double width = range.hi - range.lo;
    auto in_range = [&](double v) { return v >= range.lo && v <= range.hi; };
    // Strict share of epsilon spent next to the boundary pieces.
    auto edge_gap = [&](double parts) {
        return width > 0.0 ? 0.9 * epsilon / (parts * width) : std::numeric_limits<double>::infinity();
    };

    out.a_star = a_star_of(d, a);
    const double as = out.a_star;
    switch (boundary.kind) {
        case Boundary::Kind::Free: {
            Core core = free_core(f, d, a, b, epsilon, range, opts.max_cells);
            out.h = core.h;
            out.cells = core.cells;
            out.ell = b;
            out.construction = "free";
            break;
        }
        case Boundary::Kind::Clamped: {
            if (is_atom(d, as)) boundary_error("a*=" + format_number(as) + " is a jump point");
            if (!(d(a) < d(b))) boundary_error("g(a) = g(b) on [" + format_number(a) + "," + format_number(b) + "]");
            if (!in_range(boundary.alpha) || !in_range(boundary.beta)) boundary_error("alpha or beta outside [c,d]");
            out.ell = ell_of(d, as, b);
            const double ell = out.ell, gl = d(ell), ga = d(a);
            const double gap = edge_gap(3.0);
            auto s = bisect_toward(as, ell, [&](double t) { return gl - d(t) > 0.0 && gl - d(t) < gap; });
            if (!s) boundary_error("no s with 0 < g(l) - g(s) below the budget");
            auto r = bisect_toward(*s, as, [&](double t) { return d(t) - ga > 0.0 && d(t) - ga < gap; });
            if (!r) boundary_error("g is constant to the right of a*=" + format_number(as));
            out.r = r;
            out.s = s;
            Core core = free_core(f, d, *r, *s, epsilon / 3.0, range, opts.max_cells);
            const PiecewiseFunction& ht = core.h;
            Nodes a1{{ga, boundary.alpha}, {d(*r), ht(*r)}};
            Nodes a2{{d(*s), ht(*s)}};
            for (const double rn : atoms_in(d, ell, b)) a2.push_back({d(rn), f(rn)});
            a2.push_back({d(b), boundary.beta});
            out.h = PiecewiseFunction::splice({*r, *s}, {PiecewiseFunction::composed({a1}, d), ht,
                                                         PiecewiseFunction::composed({a2}, d)});
            out.cells = core.cells;
            out.construction = "clamped";
            break;
        }
        case Boundary::Kind::JumpStart: {
            if (!is_atom(d, as)) boundary_error("a*=" + format_number(as) + " is not a jump point");
            if (!in_range(boundary.beta)) boundary_error("beta outside [c,d]");
            out.ell = ell_of(d, as, b);
            const double ell = out.ell;
            Nodes tail;
            for (const double rn : atoms_in(d, ell, b)) tail.push_back({d(rn), f(rn)});
            tail.push_back({d(b), boundary.beta});
            if (ell == as) {
                Nodes nodes{{d(a), f(as)}};
                nodes.insert(nodes.end(), tail.begin(), tail.end());
                out.h = PiecewiseFunction::composed({nodes}, d);
                out.construction = "jump-start, l = a*";
                break;
            }
            const double gl = d(ell);
            const double gap = edge_gap(2.0);
            auto s = bisect_toward(as, ell, [&](double t) { return gl - d(t) > 0.0 && gl - d(t) < gap; });
            if (!s) boundary_error("no s with 0 < g(l) - g(s) below the budget");
            out.s = s;
            Core core = free_core(f, d, as, *s, epsilon / 2.0, range, opts.max_cells);
            Nodes nodes{{d(*s), core.h(*s)}};
            nodes.insert(nodes.end(), tail.begin(), tail.end());
            out.h = PiecewiseFunction::splice({as, *s}, {PiecewiseFunction::constant(f(as)), core.h,
                                                         PiecewiseFunction::composed({nodes}, d)});
            out.cells = core.cells;
            out.construction = "jump-start, a* < l";
            break;
        }
    }
    out.l1g_error = l1g_norm(f - out.h, d, IntervalSet::half_open(a, b));
    if (!(out.l1g_error < epsilon))
        throw Error(ErrorKind::BudgetExceeded, "measured L1_g error " + format_number(out.l1g_error) +
                                                   " is not below epsilon=" + format_number(epsilon));
    return out;
}

Truncation truncate_jumps(const Derivator& d, double eta) {
    require_nondecreasing(d);
    if (!(eta > 0.0)) throw Error(ErrorKind::OutOfRange, "eta must be positive");
    const auto& t = d.breakpoints();
    std::vector<std::size_t> atoms;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (d.jumps()[i] != 0.0) atoms.push_back(i);
    std::stable_sort(atoms.begin(), atoms.end(),
                     [&](std::size_t p, std::size_t q) { return d.jumps()[p] > d.jumps()[q]; });
    // removed[k] = mass of atoms[k..], summed from the smallest up
    std::vector<double> removed(atoms.size() + 1, 0.0);
    for (std::size_t k = atoms.size(); k-- > 0;) removed[k] = removed[k + 1] + d.jumps()[atoms[k]];
    std::size_t keep = 0;
    while (!(removed[keep] < eta)) ++keep;

    Truncation out{d, removed[keep], {}, {}};
    std::vector<double> jumps = d.jumps();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (k < keep) {
            out.kept.push_back(t[atoms[k]]);
        } else {
            out.removed.push_back(t[atoms[k]]);
            jumps[atoms[k]] = 0.0;
        }
    }
    std::sort(out.kept.begin(), out.kept.end());
    std::sort(out.removed.begin(), out.removed.end());
    if (!out.removed.empty())
        out.g = Derivator::piecewise_relaxed(t, d.slopes(), std::move(jumps), d(d.a()));
    return out;
}

}  // namespace stieltjes
