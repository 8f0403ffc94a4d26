#include "stieltjes/integral.hpp"

#include <algorithm>
#include <cmath>

#include "stieltjes/errors.hpp"

namespace stieltjes {

namespace {

class Accumulator {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) comp_ += (sum_ - t) + v;
        else comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Integral of f over (p, q) with respect to Lebesgue measure; f polynomial there.
double piece_integral(const PiecewiseFunction& f, double p, double q) {
    const double len = q - p;
    if (len <= 0.0) return 0.0;
    const double mid = 0.5 * (p + q);
    if (f.degree() <= 1) return len * f(mid);
    const double off = 0.5 * len / std::sqrt(3.0);
    return 0.5 * len * (f(mid - off) + f(mid + off));
}

double floor_of(const PiecewiseFunction& f, const Derivator& d) {
    double fl = std::max(d.a(), f.tail_end());
    if (d.kind() == DerivatorKind::Oscillator) fl = std::max(fl, d.tail_end());
    return fl;
}

double sup_abs(const PiecewiseFunction& f, double lo, double hi) {
    if (auto b = f.bounds()) return std::max(std::abs(b->lo), std::abs(b->hi));
    double m = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const double v = f(lo + (hi - lo) * i / 64.0);
        if (!std::isfinite(v)) throw Error(ErrorKind::UnboundedIntegrand, "integrand is not finite near the tail");
        m = std::max(m, std::abs(v));
    }
    return m;
}

void check_finite(double v, double t) {
    if (!std::isfinite(v))
        throw Error(ErrorKind::UnboundedIntegrand, "integrand is not finite at t=" + format_number(t));
}

IntegralResult integrate_part(const PiecewiseFunction& f, const Derivator& d, Interval p, MeasureKind kind) {
    IntegralResult out;
    if (p.empty()) return out;
    if (p.lo < d.a() || p.hi > d.b())
        throw Error(ErrorKind::OutOfDomain, "integration set leaves the derivator domain");
    const double fl = floor_of(f, d);
    if (p.lo < fl) {
        const double top = std::min(p.hi, fl);
        Interval tail{p.lo, top, p.lo_closed, top < p.hi ? false : p.hi_closed};
        out.tail_bound += sup_abs(f, p.lo, top) * measure_of(d, tail, MeasureKind::Total);
        if (top >= p.hi) return out;
        p.lo = top;
        p.lo_closed = true;
    }
    Accumulator acc;
    const std::vector<double> atoms = d.knots(p.lo, p.hi);
    for (const double t : atoms) {
        const double j = d.jump(t);
        if (j == 0.0 || !p.contains(t)) continue;
        const double v = f(t);
        check_finite(v, t);
        acc.add(v * kind_weight(j, kind));
    }
    if (p.hi > p.lo) {
        std::vector<double> edges = merge_knots(d.knots(p.lo, p.hi), f.knots(p.lo, p.hi));
        edges = merge_knots(std::move(edges), {p.lo, p.hi});
        const auto& slopes = d.slopes();
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            const double a = edges[k];
            const double b = edges[k + 1];
            const double w = kind_weight(slopes[d.segment_left_of(0.5 * (a + b))], kind);
            if (w == 0.0) continue;
            const double v = piece_integral(f, a, b);
            check_finite(v, a);
            acc.add(w * v);
        }
    }
    out.value = acc.value();
    return out;
}

}  // namespace

IntegralResult integrate_with_bound(const PiecewiseFunction& f, const Derivator& d, const IntervalSet& set,
                                    MeasureKind kind) {
    IntegralResult out;
    Accumulator acc;
    for (const Interval& p : set.parts()) {
        IntegralResult r = integrate_part(f, d, p, kind);
        acc.add(r.value);
        out.tail_bound += r.tail_bound;
    }
    out.value = acc.value();
    return out;
}

double integrate(const PiecewiseFunction& f, const Derivator& d, const IntervalSet& set, MeasureKind kind) {
    return integrate_with_bound(f, d, set, kind).value;
}

double integrate(const PiecewiseFunction& f, const Derivator& d, const Interval& part, MeasureKind kind) {
    return integrate_part(f, d, part, kind).value;
}

double rs_refinement_oracle(const PiecewiseFunction& f, const Derivator& d, double x, double y, int depth) {
    if (x < d.a() || y > d.b() || !(x < y))
        throw Error(ErrorKind::OutOfDomain, "oracle interval must satisfy a <= x < y <= b");
    const long n = 1L << depth;
    const double h = (y - x) / static_cast<double>(n);
    Accumulator acc;
    double left = x;
    double g_left = d(x);
    for (long i = 0; i < n; ++i) {
        const double right = i + 1 == n ? y : x + static_cast<double>(i + 1) * h;
        const double g_right = d(right);
        acc.add(f(left) * (g_right - g_left));
        left = right;
        g_left = g_right;
    }
    return acc.value();
}

double l1g_norm(const PiecewiseFunction& f, const Derivator& d, const IntervalSet& set) {
    return integrate(PiecewiseFunction::abs(f), d, set, MeasureKind::Total);
}

Primitive::Primitive(PiecewiseFunction f, Derivator d) : f_(std::move(f)), d_(std::move(d)) {
    floor_ = floor_of(f_, d_);
    if (floor_ > d_.a())
        tail_bound_ = sup_abs(f_, d_.a(), floor_) * measure_of(d_, Interval::half_open(d_.a(), floor_),
                                                                MeasureKind::Total);
    knots_ = merge_knots(d_.knots(floor_, d_.b()), f_.knots(floor_, d_.b()));
    knots_ = merge_knots(std::move(knots_), {floor_, d_.b()});
    cum_.assign(knots_.size(), 0.0);
    const auto& slopes = d_.slopes();
    for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
        const double a = knots_[k];
        const double b = knots_[k + 1];
        const double s = slopes[d_.segment_left_of(0.5 * (a + b))];
        cum_[k + 1] = cum_[k] + f_(a) * d_.jump(a) + s * piece_integral(f_, a, b);
    }
}

double Primitive::operator()(double t) const {
    if (t < d_.a() || t > d_.b())
        throw Error(ErrorKind::OutOfDomain, "primitive evaluated outside the domain at t=" + format_number(t));
    if (t <= floor_) return 0.0;
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - knots_.begin());
    if (knots_[k] == t) return cum_[k];
    const double a = knots_[k - 1];
    const double s = d_.slopes()[d_.segment_left_of(0.5 * (a + t))];
    return cum_[k - 1] + f_(a) * d_.jump(a) + s * piece_integral(f_, a, t);
}

double Primitive::jump_at(double t) const {
    const double j = d_.jump(t);
    return j == 0.0 ? 0.0 : f_(t) * j;
}

namespace {

class PrimitiveFn final : public FunctionImpl {
public:
    explicit PrimitiveFn(Primitive p) : FunctionImpl(FunctionKind::Primitive), p_(std::move(p)) {}
    double eval(double t) const override {
        const Derivator& d = p_.derivator();
        return p_(std::clamp(t, d.a(), d.b()));
    }
    std::vector<double> knots(double lo, double hi) const override {
        const auto& k = p_.knots();
        return {std::lower_bound(k.begin(), k.end(), lo), std::upper_bound(k.begin(), k.end(), hi)};
    }
    int degree() const override { return std::min(3, p_.integrand().degree() + 1); }
    double jump_at(double t) const override {
        const Derivator& d = p_.derivator();
        if (t < d.a() || t > d.b()) return 0.0;
        return p_.jump_at(t);
    }
    // F(t+) - F(t) = f(t) * (g(t+) - g(t)) before rounding.
    std::optional<std::pair<double, double>> factored_jump(double t) const override {
        const Derivator& d = p_.derivator();
        if (t < d.a() || t >= d.b() || d.jump(t) == 0.0) return std::nullopt;
        return std::pair{p_.integrand()(t), d.jump(t)};
    }
    double tail_end() const override { return p_.knots().front(); }

private:
    Primitive p_;
};

}  // namespace

PiecewiseFunction Primitive::as_function() const { return PiecewiseFunction(std::make_shared<PrimitiveFn>(*this)); }

Primitive primitive(const PiecewiseFunction& f, const Derivator& d) { return Primitive(f, d); }

}  // namespace stieltjes
