#include "stieltjes/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stieltjes/errors.hpp"
#include "stieltjes/oscillator_shape.hpp"

namespace stieltjes {

namespace {

struct SideResult {
    bool available = false;
    bool converged = false;
    int valid = 0;
    double value = 0.0;
    double spread = std::numeric_limits<double>::infinity();
};

// Distance from t to the nearest knot of d or f strictly on the given side.
double side_gap(const PiecewiseFunction& f, const Derivator& d, double t, int side) {
    if (d.kind() == DerivatorKind::Oscillator && t > d.a() && t < d.tail_end()) {
        // Below the represented segments: use the exact cell (x_{n+1}, x_n] and its midpoint.
        const long n = oscillator::locate(t);
        const double lo = oscillator::x(n + 1), hi = oscillator::x(n), mid = 0.5 * (lo + hi);
        if (side > 0) {
            if (t == hi) return 0.5 * (oscillator::x(n - 1) - hi);
            return t < mid ? mid - t : hi - t;
        }
        return t > mid ? t - mid : t - lo;
    }
    if (side > 0) {
        double gap = d.b() - t;
        for (const double k : merge_knots(d.knots(t, d.b()), f.knots(t, std::min(d.b(), t + gap))))
            if (k > t) return std::min(gap, k - t);
        return gap;
    }
    double gap = t - d.a();
    std::vector<double> ks = merge_knots(d.knots(d.a(), t), f.knots(std::max(d.a(), t - gap), t));
    for (auto it = ks.rbegin(); it != ks.rend(); ++it)
        if (*it < t) return std::min(gap, t - *it);
    return gap;
}

SideResult estimate_side(const PiecewiseFunction& f, const Derivator& d, double ts, int side,
                         const DerivativeOptions& opts, std::vector<QuotientSample>& trace) {
    SideResult out;
    const double gap = side_gap(f, d, ts, side);
    if (!(gap > 0.0)) return out;
    out.available = true;
    const double delta0 = std::min(0.5 * gap, opts.delta_cap);
    const double g0 = d(ts);
    const double f0 = f(ts);
    constexpr double eps = std::numeric_limits<double>::epsilon();

    struct Sample {
        int k;
        double q;
        double noise;  // rounding error bound of q
    };
    std::vector<Sample> samples;
    for (int k = 0; k < opts.steps; ++k) {
        const double s = ts + side * std::ldexp(delta0, -k);
        if (s == ts) break;
        const double gs = d(s);
        const double dg = gs - g0;
        if (dg == 0.0) continue;
        const double fs = f(s);
        const double q = (fs - f0) / dg;
        trace.push_back({s, q});
        const double noise = 2.0 * eps * (std::abs(fs) + std::abs(f0) + std::abs(q) * (std::abs(gs) + std::abs(g0))) /
                             std::abs(dg);
        samples.push_back({k, q, noise});
    }
    out.valid = static_cast<int>(samples.size());
    if (samples.empty()) return out;

    struct Rich {
        int k;
        double r;
        double noise;
    };
    std::vector<Rich> rich;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if (samples[i + 1].k == samples[i].k + 1)
            rich.push_back({samples[i].k, 2.0 * samples[i + 1].q - samples[i].q,
                            2.0 * samples[i + 1].noise + samples[i].noise});

    // Pick the consecutive pair with the smallest spread plus rounding bound,
    // so that accidental agreement deep in the noise is not rewarded.
    out.value = samples.front().q;
    if (!rich.empty()) out.value = rich.front().r;
    for (std::size_t i = 0; i + 1 < rich.size(); ++i) {
        if (rich[i + 1].k != rich[i].k + 1) continue;
        const double err = std::abs(rich[i + 1].r - rich[i].r) + std::max(rich[i].noise, rich[i + 1].noise);
        if (err < out.spread) {
            out.spread = err;
            out.value = rich[i + 1].r;
        }
    }
    out.converged = std::isfinite(out.value) && out.spread <= opts.tol * std::max(1.0, std::abs(out.value));
    return out;
}

int required_sides(PointKind kind) {
    switch (kind) {
        case PointKind::Regular: return 0;  // both
        case PointKind::NMinus:
        case PointKind::RightEndpoint: return -1;
        default: return 1;
    }
}

}  // namespace

DerivativeEstimate g_derivative(const PiecewiseFunction& f, const Derivator& d, double t,
                                const DerivativeOptions& opts) {
    DerivativeEstimate est;
    est.point = d.classify_point(t);
    const double ts = est.point.t_star;
    const double j = d.jump(ts);
    if (j != 0.0) {
        est.method = DerivativeMethod::JumpFormula;
        const auto factored = f.factored_jump(ts);
        est.value = factored && factored->second == j ? factored->first : f.jump_at(ts) / j;
        est.right_estimate = est.value;
        est.exists = std::isfinite(est.value);
        if (!est.exists) est.reason = "jump quotient is not finite";
        return est;
    }
    est.method = DerivativeMethod::LimitExtrapolation;
    const int rule = required_sides(est.point.kind);
    SideResult left, right;
    if (rule <= 0) left = estimate_side(f, d, ts, -1, opts, est.quotient_trace);
    if (rule >= 0) right = estimate_side(f, d, ts, +1, opts, est.quotient_trace);
    std::sort(est.quotient_trace.begin(), est.quotient_trace.end(),
              [](const QuotientSample& a, const QuotientSample& b) { return a.s < b.s; });

    auto degenerate = [&](const SideResult& r, const char* name) {
        if (r.available && r.valid == 0)
            throw Error(ErrorKind::DegenerateQuotient, std::string("every ") + name +
                                                           " sample has g(s) = g(t*) at t*=" + format_number(ts));
    };
    if (rule <= 0) degenerate(left, "left");
    if (rule >= 0) degenerate(right, "right");

    if (left.valid > 0) est.left_estimate = left.value;
    if (right.valid > 0) est.right_estimate = right.value;

    if (rule == 0) {
        if (!left.available || !right.available) {
            est.reason = "a required side is outside the domain";
            return est;
        }
        est.error_estimate = std::max(left.spread, right.spread);
        if (!left.converged || !right.converged) {
            est.reason = !left.converged ? "left quotients do not settle" : "right quotients do not settle";
            return est;
        }
        const double scale = std::max({1.0, std::abs(left.value), std::abs(right.value)});
        if (std::abs(left.value - right.value) > opts.tol * scale) {
            est.reason = "left and right limits differ";
            return est;
        }
        est.value = 0.5 * (left.value + right.value);
        est.exists = true;
        return est;
    }
    const SideResult& only = rule < 0 ? left : right;
    est.error_estimate = only.spread;
    if (!only.available) {
        // Only reachable on relaxed derivators; a flat opposite side means no quotient at all.
        std::vector<QuotientSample> scratch;
        const SideResult other = estimate_side(f, d, ts, -rule, opts, scratch);
        degenerate(other, rule < 0 ? "right" : "left");
        est.reason = "required side is outside the domain";
        return est;
    }
    if (!only.converged) {
        est.reason = rule < 0 ? "left quotients do not settle" : "right quotients do not settle";
        est.value = only.value;
        return est;
    }
    est.value = only.value;
    est.exists = true;
    return est;
}

DerivativeEstimate g_derivative(const PiecewiseFunction& f, const Derivator& d, double t, double tol) {
    DerivativeOptions opts;
    opts.tol = tol;
    return g_derivative(f, d, t, opts);
}

PhiEstimate phi(const Derivator& d, double t, double) {
    PhiEstimate out;
    const PointClass pc = d.classify_point(t);
    const double ts = pc.t_star;
    if (d.kind() == DerivatorKind::Oscillator && ts > d.a()) {
        // |g'| = 1 away from the accumulation point, on both sides
        out.value = 1.0;
        out.certified = true;
        return out;
    }
    if (d.kind() == DerivatorKind::Oscillator) {
        // liminf at the accumulation point: the sequence x_n plus dyadic points
        double m = std::numeric_limits<double>::infinity();
        auto probe = [&](double s) {
            if (!(s > ts) || s > d.b()) return;
            const double den = std::abs(d.variation_at(s) - d.variation_at(ts));
            if (den == 0.0) return;
            out.sample_sequence.push_back(s);
            m = std::min(m, std::abs(d(s) - d(ts)) / den);
        };
        for (long n = 1; n <= 2L * d.depth() + 1; ++n) probe(oscillator::x(n));
        for (int k = 1; k <= 60; ++k) probe(std::ldexp(1.0, -k));
        std::sort(out.sample_sequence.begin(), out.sample_sequence.end());
        out.value = m;
        out.certified = false;
        return out;
    }
    // Piecewise affine near t*: each one-sided ratio is |J|/|J| or |s|/|s|.
    const int rule = required_sides(pc.kind);
    const std::size_t seg_right = std::min(d.segment_left_of(ts) + (d.is_breakpoint(ts) ? 1 : 0),
                                           d.segments() - 1);
    const std::size_t seg_left = d.segment_left_of(ts);
    double value = std::numeric_limits<double>::infinity();
    auto ratio = [](double num, double den) { return den == 0.0 ? 0.0 : std::abs(num) / std::abs(den); };
    if (rule >= 0 && ts < d.b()) {
        const double j = d.jump(ts);
        const double s = d.slopes()[ts == d.a() ? 0 : seg_right];
        value = std::min(value, j != 0.0 ? ratio(j, std::abs(j)) : ratio(s, std::abs(s)));
    }
    if (rule <= 0 && ts > d.a()) {
        const double s = d.slopes()[seg_left];
        value = std::min(value, ratio(s, std::abs(s)));
    }
    out.value = std::isfinite(value) ? value : 0.0;
    out.certified = true;
    return out;
}

}  // namespace stieltjes
