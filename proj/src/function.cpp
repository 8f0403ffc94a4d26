#include "stieltjes/function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stieltjes/errors.hpp"
#include "stieltjes/oscillator_shape.hpp"

namespace stieltjes {

std::vector<double> merge_knots(std::vector<double> a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

double next_knot(const PiecewiseFunction& f, double t, double horizon) {
    for (const double k : f.knots(t, t + horizon))
        if (k > t) return k;
    return std::numeric_limits<double>::infinity();
}

double FunctionImpl::jump_at(double t) const {
    if (knots(t, t).empty()) return 0.0;
    double gap = 1.0;
    for (const double k : knots(t, t + 1.0)) {
        if (k > t) {
            gap = k - t;
            break;
        }
    }
    const double h = gap / 8.0;
    double right = 0.0;
    switch (degree()) {
        case 0: right = eval(t + h); break;
        case 1: right = 2.0 * eval(t + h) - eval(t + 2.0 * h); break;
        case 2: right = 3.0 * eval(t + h) - 3.0 * eval(t + 2.0 * h) + eval(t + 3.0 * h); break;
        default:
            right = 4.0 * eval(t + h) - 6.0 * eval(t + 2.0 * h) + 4.0 * eval(t + 3.0 * h) - eval(t + 4.0 * h);
    }
    return right - eval(t);
}

namespace {

std::vector<double> in_range(const std::vector<double>& sorted, double lo, double hi) {
    auto first = std::lower_bound(sorted.begin(), sorted.end(), lo);
    auto last = std::upper_bound(sorted.begin(), sorted.end(), hi);
    return {first, last};
}

class ConstantFn final : public FunctionImpl {
public:
    explicit ConstantFn(double c) : FunctionImpl(FunctionKind::PiecewiseAffine), c_(c) {}
    double eval(double) const override { return c_; }
    std::vector<double> knots(double, double) const override { return {}; }
    int degree() const override { return 0; }
    double jump_at(double) const override { return 0.0; }
    std::optional<Range> bounds() const override { return Range{c_, c_}; }

private:
    double c_;
};

class AffinePiecesFn final : public FunctionImpl {
public:
    AffinePiecesFn(std::vector<double> knots, std::vector<std::pair<double, double>> coeffs)
        : FunctionImpl(FunctionKind::PiecewiseAffine), t_(std::move(knots)), c_(std::move(coeffs)) {
        if (t_.size() < 2 || c_.size() != t_.size() - 1)
            throw Error(ErrorKind::MalformedSpec, "affine pieces need n+1 knots for n coefficient pairs");
        for (std::size_t i = 1; i < t_.size(); ++i)
            if (!(t_[i - 1] < t_[i])) throw Error(ErrorKind::MalformedSpec, "knots must be strictly increasing");
        for (const auto& [a, b] : c_)
            if (!std::isfinite(a) || !std::isfinite(b))
                throw Error(ErrorKind::MalformedSpec, "coefficients must be finite");
        for (const auto& [a, b] : c_) deg_ = std::max(deg_, b != 0.0 ? 1 : 0);
    }

    double eval(double t) const override {
        if (t <= t_.front()) return c_.front().first;
        if (t > t_.back()) t = t_.back();
        std::size_t k = static_cast<std::size_t>(std::lower_bound(t_.begin(), t_.end(), t) - t_.begin());
        const auto& [a, b] = c_[k - 1];
        return a + b * (t - t_[k - 1]);
    }
    std::vector<double> knots(double lo, double hi) const override { return in_range(t_, lo, hi); }
    int degree() const override { return deg_; }
    double jump_at(double t) const override {
        auto it = std::lower_bound(t_.begin(), t_.end(), t);
        if (it == t_.end() || *it != t) return 0.0;
        std::size_t k = static_cast<std::size_t>(it - t_.begin());
        if (k == 0 || k + 1 == t_.size()) return 0.0;
        return c_[k].first - eval(t);
    }
    std::optional<Range> bounds() const override {
        Range r{c_.front().first, c_.front().first};
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const double end = c_[i].first + c_[i].second * (t_[i + 1] - t_[i]);
            r.lo = std::min({r.lo, c_[i].first, end});
            r.hi = std::max({r.hi, c_[i].first, end});
        }
        return r;
    }

private:
    std::vector<double> t_;
    std::vector<std::pair<double, double>> c_;
    int deg_ = 0;
};

class PolynomialFn final : public FunctionImpl {
public:
    explicit PolynomialFn(std::vector<double> c) : FunctionImpl(FunctionKind::Polynomial), c_(std::move(c)) {
        if (c_.empty()) c_.push_back(0.0);
        if (c_.size() > 4) throw Error(ErrorKind::MalformedSpec, "polynomial degree must be at most 3");
    }
    double eval(double t) const override {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }
    std::vector<double> knots(double, double) const override { return {}; }
    int degree() const override { return static_cast<int>(c_.size()) - 1; }
    double jump_at(double) const override { return 0.0; }

private:
    std::vector<double> c_;
};

class IndicatorFn final : public FunctionImpl {
public:
    explicit IndicatorFn(IntervalSet set) : FunctionImpl(FunctionKind::Indicator), set_(std::move(set)) {
        for (const Interval& p : set_.parts()) {
            ends_.push_back(p.lo);
            ends_.push_back(p.hi);
        }
        ends_ = merge_knots(ends_, {});
    }
    double eval(double t) const override { return set_.contains(t) ? 1.0 : 0.0; }
    std::vector<double> knots(double lo, double hi) const override { return in_range(ends_, lo, hi); }
    int degree() const override { return 0; }
    double jump_at(double t) const override {
        bool right = std::any_of(set_.parts().begin(), set_.parts().end(),
                                 [t](const Interval& p) { return p.lo <= t && t < p.hi; });
        return (right ? 1.0 : 0.0) - eval(t);
    }
    std::optional<Range> bounds() const override { return Range{0.0, 1.0}; }

private:
    IntervalSet set_;
    std::vector<double> ends_;
};

std::vector<std::pair<double, double>> checked_nodes(const InterpolantSpec& spec) {
    std::vector<std::pair<double, double>> nodes = spec.nodes;
    std::stable_sort(nodes.begin(), nodes.end(),
                     [](const auto& p, const auto& q) { return p.first < q.first; });
    std::vector<std::pair<double, double>> out;
    for (const auto& n : nodes) {
        if (!std::isfinite(n.first) || !std::isfinite(n.second))
            throw Error(ErrorKind::MalformedSpec, "interpolant nodes must be finite");
        if (!out.empty() && out.back().first == n.first) {
            if (out.back().second != n.second)
                throw Error(ErrorKind::DuplicateAbscissa,
                            "abscissa " + format_number(n.first) + " carries two ordinates");
            continue;
        }
        out.push_back(n);
    }
    if (out.empty()) throw Error(ErrorKind::MalformedSpec, "interpolant needs at least one node");
    return out;
}

double pa_eval(const std::vector<std::pair<double, double>>& a, double x) {
    if (x <= a.front().first) return a.front().second;
    if (x >= a.back().first) return a.back().second;
    auto it = std::lower_bound(a.begin(), a.end(), x, [](const auto& p, double v) { return p.first < v; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    if (x == x1) return y1;
    return y0 + (y1 - y0) / (x1 - x0) * (x - x0);
}

Range pa_range(const std::vector<std::pair<double, double>>& a) {
    Range r{a.front().second, a.front().second};
    for (const auto& n : a) {
        r.lo = std::min(r.lo, n.second);
        r.hi = std::max(r.hi, n.second);
    }
    return r;
}

class InterpolantFn final : public FunctionImpl {
public:
    explicit InterpolantFn(const InterpolantSpec& spec)
        : FunctionImpl(FunctionKind::PiecewiseAffine), a_(checked_nodes(spec)) {
        for (const auto& n : a_) xs_.push_back(n.first);
    }
    double eval(double x) const override { return pa_eval(a_, x); }
    std::vector<double> knots(double lo, double hi) const override { return in_range(xs_, lo, hi); }
    int degree() const override { return 1; }
    double jump_at(double) const override { return 0.0; }
    std::optional<Range> bounds() const override { return pa_range(a_); }

private:
    std::vector<std::pair<double, double>> a_;
    std::vector<double> xs_;
};

double clamp_to(const Derivator& d, double t) { return std::clamp(t, d.a(), d.b()); }

class ComposedFn final : public FunctionImpl {
public:
    ComposedFn(const InterpolantSpec& spec, Derivator inner)
        : FunctionImpl(FunctionKind::ComposedPA), a_(checked_nodes(spec)), g_(std::move(inner)) {}
    double eval(double t) const override { return pa_eval(a_, g_(clamp_to(g_, t))); }
    std::vector<double> knots(double lo, double hi) const override {
        lo = std::max(lo, g_.a());
        hi = std::min(hi, g_.b());
        if (lo > hi) return {};
        std::vector<double> out = g_.knots(lo, hi);
        const auto& t = g_.breakpoints();
        const auto& s = g_.slopes();
        std::size_t first = g_.segment_left_of(lo);
        for (std::size_t i = first; i < s.size() && t[i] <= hi; ++i) {
            if (s[i] == 0.0 || t[i] < g_.tail_end()) continue;
            const double v0 = g_.right_limit(t[i]);
            for (const auto& n : a_) {
                const double c = t[i] + (n.first - v0) / s[i];
                if (c > t[i] && c < t[i + 1] && c >= lo && c <= hi) out.push_back(c);
            }
        }
        return merge_knots(std::move(out), {});
    }
    int degree() const override { return 1; }
    double jump_at(double t) const override {
        if (t < g_.a() || t >= g_.b()) return 0.0;
        const double j = g_.jump(t);
        if (j == 0.0) return 0.0;
        const double v = g_(t);
        return pa_eval(a_, v + j) - pa_eval(a_, v);
    }
    std::optional<Range> bounds() const override { return pa_range(a_); }
    double tail_end() const override {
        return g_.kind() == DerivatorKind::Oscillator ? g_.tail_end() : FunctionImpl::tail_end();
    }

private:
    std::vector<std::pair<double, double>> a_;
    Derivator g_;
};

class DerivatorValueFn final : public FunctionImpl {
public:
    DerivatorValueFn(Derivator d, bool variation)
        : FunctionImpl(variation ? FunctionKind::Variation : FunctionKind::DerivatorValue),
          d_(std::move(d)),
          variation_(variation) {}
    double eval(double t) const override {
        t = clamp_to(d_, t);
        return variation_ ? d_.variation_at(t) : d_(t);
    }
    std::vector<double> knots(double lo, double hi) const override { return d_.knots(lo, hi); }
    int degree() const override { return 1; }
    double jump_at(double t) const override {
        if (t < d_.a() || t > d_.b()) return 0.0;
        const double j = d_.jump(t);
        return variation_ ? std::abs(j) : j;
    }
    std::optional<Range> bounds() const override {
        if (variation_) return Range{0.0, d_.variation_at(d_.b())};
        return std::nullopt;
    }
    double tail_end() const override {
        return d_.kind() == DerivatorKind::Oscillator ? d_.tail_end() : FunctionImpl::tail_end();
    }

private:
    Derivator d_;
    bool variation_;
};

class TriangularWaveFn final : public FunctionImpl {
public:
    explicit TriangularWaveFn(int depth) : FunctionImpl(FunctionKind::TriangularWave), depth_(depth) {
        if (depth < 2) throw Error(ErrorKind::MalformedSpec, "triangular wave depth must be at least 2");
        const long last = 2L * depth + 1;
        for (long n = last; n >= 1; --n) {
            knots_.push_back(oscillator::x(n));
            if (n > 1) knots_.push_back(0.5 * (oscillator::x(n) + oscillator::x(n - 1)));
        }
        std::sort(knots_.begin(), knots_.end());
        for (long n = 1; n <= 8; ++n) peak_ = std::max(peak_, height(n));
    }
    static double height(long n) {
        const double xn = oscillator::x(n);
        const double xm = oscillator::x(n + 1);
        return (std::pow(xn, 4.0 / 3.0) - std::pow(xm, 4.0 / 3.0)) / (xn - xm);
    }
    double eval(double t) const override {
        if (t <= 0.0 || t > 1.0) return 0.0;
        const long n = oscillator::locate(t);
        const double xn = oscillator::x(n);
        const double xm = oscillator::x(n + 1);
        const double mid = 0.5 * (xn + xm);
        const double h = (n % 2 == 1 ? -1.0 : 1.0) * height(n);
        if (t <= mid) return h * (t - xm) / (mid - xm);
        return h * (xn - t) / (xn - mid);
    }
    std::vector<double> knots(double lo, double hi) const override { return in_range(knots_, lo, hi); }
    int degree() const override { return 1; }
    double jump_at(double) const override { return 0.0; }
    std::optional<Range> bounds() const override { return Range{-peak_, peak_}; }
    double tail_end() const override { return knots_.front(); }

private:
    int depth_;
    std::vector<double> knots_;
    double peak_ = 0.0;
};

class SumFn final : public FunctionImpl {
public:
    explicit SumFn(std::vector<std::pair<double, PiecewiseFunction>> terms)
        : FunctionImpl(FunctionKind::Sum), terms_(std::move(terms)) {}
    double eval(double t) const override {
        double acc = 0.0;
        for (const auto& [w, f] : terms_) acc += w * f(t);
        return acc;
    }
    std::vector<double> knots(double lo, double hi) const override {
        std::vector<double> out;
        for (const auto& [w, f] : terms_) out = merge_knots(std::move(out), f.knots(lo, hi));
        return out;
    }
    int degree() const override {
        int d = 0;
        for (const auto& [w, f] : terms_) d = std::max(d, f.degree());
        return d;
    }
    double jump_at(double t) const override {
        double acc = 0.0;
        for (const auto& [w, f] : terms_) acc += w * f.jump_at(t);
        return acc;
    }
    std::optional<Range> bounds() const override {
        Range r{0.0, 0.0};
        for (const auto& [w, f] : terms_) {
            auto b = f.bounds();
            if (!b) return std::nullopt;
            r.lo += std::min(w * b->lo, w * b->hi);
            r.hi += std::max(w * b->lo, w * b->hi);
        }
        return r;
    }
    double tail_end() const override {
        double t = FunctionImpl::tail_end();
        for (const auto& [w, f] : terms_) t = std::max(t, f.tail_end());
        return t;
    }

private:
    std::vector<std::pair<double, PiecewiseFunction>> terms_;
};

// Knots of f plus the points inside affine pieces where f crosses one of the levels.
std::vector<double> with_crossings(const PiecewiseFunction& f, double lo, double hi,
                                   const std::vector<double>& levels) {
    if (f.degree() > 1) throw std::logic_error("level crossings need an affine-by-pieces function");
    std::vector<double> ks = f.knots(lo, hi);
    std::vector<double> edges = merge_knots(ks, {lo, hi});
    std::vector<double> extra;
    const double floor = std::max(lo, f.tail_end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double p = edges[i];
        const double q = edges[i + 1];
        if (q <= floor || !(q > p)) continue;
        const double m1 = p + (q - p) / 3.0;
        const double m2 = p + 2.0 * (q - p) / 3.0;
        const double v1 = f(m1);
        const double v2 = f(m2);
        if (v1 == v2) continue;
        const double k = (v2 - v1) / (m2 - m1);
        for (const double level : levels) {
            const double c = m1 + (level - v1) / k;
            if (c > p && c < q) extra.push_back(c);
        }
    }
    return merge_knots(std::move(ks), extra);
}

class AbsFn final : public FunctionImpl {
public:
    explicit AbsFn(PiecewiseFunction f) : FunctionImpl(FunctionKind::Abs), f_(std::move(f)) {}
    double eval(double t) const override { return std::abs(f_(t)); }
    std::vector<double> knots(double lo, double hi) const override { return with_crossings(f_, lo, hi, {0.0}); }
    int degree() const override { return f_.degree(); }
    double jump_at(double t) const override {
        const double v = f_(t);
        return std::abs(v + f_.jump_at(t)) - std::abs(v);
    }
    std::optional<Range> bounds() const override {
        auto b = f_.bounds();
        if (!b) return std::nullopt;
        const double hi = std::max(std::abs(b->lo), std::abs(b->hi));
        const double lo = (b->lo <= 0.0 && b->hi >= 0.0) ? 0.0 : std::min(std::abs(b->lo), std::abs(b->hi));
        return Range{lo, hi};
    }
    double tail_end() const override { return f_.tail_end(); }

private:
    PiecewiseFunction f_;
};

class ClampFn final : public FunctionImpl {
public:
    ClampFn(PiecewiseFunction f, double lo, double hi)
        : FunctionImpl(FunctionKind::Clamp), f_(std::move(f)), lo_(lo), hi_(hi) {}
    double eval(double t) const override { return std::min(hi_, std::max(f_(t), lo_)); }
    std::vector<double> knots(double lo, double hi) const override {
        return with_crossings(f_, lo, hi, {lo_, hi_});
    }
    int degree() const override { return f_.degree(); }
    double jump_at(double t) const override {
        const double v = f_(t);
        const double r = v + f_.jump_at(t);
        return std::min(hi_, std::max(r, lo_)) - std::min(hi_, std::max(v, lo_));
    }
    std::optional<Range> bounds() const override { return Range{lo_, hi_}; }
    double tail_end() const override { return f_.tail_end(); }

private:
    PiecewiseFunction f_;
    double lo_;
    double hi_;
};

class SpliceFn final : public FunctionImpl {
public:
    SpliceFn(std::vector<double> breaks, std::vector<PiecewiseFunction> pieces)
        : FunctionImpl(FunctionKind::Splice), r_(std::move(breaks)), p_(std::move(pieces)) {
        if (p_.size() != r_.size() + 1) throw std::logic_error("splice needs one more piece than breaks");
    }
    std::size_t active(double t) const {
        return static_cast<std::size_t>(std::lower_bound(r_.begin(), r_.end(), t) - r_.begin());
    }
    double eval(double t) const override { return p_[active(t)](t); }
    std::vector<double> knots(double lo, double hi) const override {
        std::vector<double> out = in_range(r_, lo, hi);
        for (std::size_t i = 0; i < p_.size(); ++i) {
            const double from = i == 0 ? lo : std::max(lo, r_[i - 1]);
            const double to = i == r_.size() ? hi : std::min(hi, r_[i]);
            if (from <= to) out = merge_knots(std::move(out), p_[i].knots(from, to));
        }
        return out;
    }
    int degree() const override {
        int d = 0;
        for (const auto& f : p_) d = std::max(d, f.degree());
        return d;
    }
    double jump_at(double t) const override {
        auto it = std::lower_bound(r_.begin(), r_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - r_.begin());
        if (it != r_.end() && *it == t) return p_[i + 1].right_limit(t) - p_[i](t);
        return p_[i].jump_at(t);
    }
    std::optional<Range> bounds() const override {
        std::optional<Range> out;
        for (const auto& f : p_) {
            auto b = f.bounds();
            if (!b) return std::nullopt;
            if (!out) out = b;
            out->lo = std::min(out->lo, b->lo);
            out->hi = std::max(out->hi, b->hi);
        }
        return out;
    }

private:
    std::vector<double> r_;
    std::vector<PiecewiseFunction> p_;
};

class CustomFn final : public FunctionImpl {
public:
    CustomFn(std::function<double(double)> eval, std::vector<double> knots, int degree,
             std::function<double(double)> jump, std::optional<Range> bounds)
        : FunctionImpl(FunctionKind::Custom),
          eval_(std::move(eval)),
          knots_(merge_knots(std::move(knots), {})),
          degree_(degree),
          jump_(std::move(jump)),
          bounds_(bounds) {}
    double eval(double t) const override { return eval_(t); }
    std::vector<double> knots(double lo, double hi) const override { return in_range(knots_, lo, hi); }
    int degree() const override { return degree_; }
    double jump_at(double t) const override { return jump_ ? jump_(t) : FunctionImpl::jump_at(t); }
    std::optional<Range> bounds() const override { return bounds_; }

private:
    std::function<double(double)> eval_;
    std::vector<double> knots_;
    int degree_;
    std::function<double(double)> jump_;
    std::optional<Range> bounds_;
};

}  // namespace

PiecewiseFunction PiecewiseFunction::constant(double c) {
    return PiecewiseFunction(std::make_shared<ConstantFn>(c));
}
PiecewiseFunction PiecewiseFunction::affine_pieces(std::vector<double> knots,
                                                   std::vector<std::pair<double, double>> coeffs) {
    return PiecewiseFunction(std::make_shared<AffinePiecesFn>(std::move(knots), std::move(coeffs)));
}
PiecewiseFunction PiecewiseFunction::polynomial(std::vector<double> coeffs) {
    return PiecewiseFunction(std::make_shared<PolynomialFn>(std::move(coeffs)));
}
PiecewiseFunction PiecewiseFunction::indicator(IntervalSet set) {
    return PiecewiseFunction(std::make_shared<IndicatorFn>(std::move(set)));
}
PiecewiseFunction PiecewiseFunction::interpolant(const InterpolantSpec& spec) {
    return PiecewiseFunction(std::make_shared<InterpolantFn>(spec));
}
PiecewiseFunction PiecewiseFunction::composed(const InterpolantSpec& spec, const Derivator& inner) {
    return PiecewiseFunction(std::make_shared<ComposedFn>(spec, inner));
}
PiecewiseFunction PiecewiseFunction::derivator_value(const Derivator& d) {
    return PiecewiseFunction(std::make_shared<DerivatorValueFn>(d, false));
}
PiecewiseFunction PiecewiseFunction::variation(const Derivator& d) {
    return PiecewiseFunction(std::make_shared<DerivatorValueFn>(d, true));
}
PiecewiseFunction PiecewiseFunction::triangular_wave(int depth) {
    return PiecewiseFunction(std::make_shared<TriangularWaveFn>(depth));
}
PiecewiseFunction PiecewiseFunction::sum(std::vector<std::pair<double, PiecewiseFunction>> terms) {
    return PiecewiseFunction(std::make_shared<SumFn>(std::move(terms)));
}
PiecewiseFunction PiecewiseFunction::abs(const PiecewiseFunction& f) {
    return PiecewiseFunction(std::make_shared<AbsFn>(f));
}
PiecewiseFunction PiecewiseFunction::clamp(const PiecewiseFunction& f, double lo, double hi) {
    return PiecewiseFunction(std::make_shared<ClampFn>(f, lo, hi));
}
PiecewiseFunction PiecewiseFunction::splice(std::vector<double> breaks, std::vector<PiecewiseFunction> pieces) {
    return PiecewiseFunction(std::make_shared<SpliceFn>(std::move(breaks), std::move(pieces)));
}
PiecewiseFunction PiecewiseFunction::custom(std::function<double(double)> eval, std::vector<double> knots,
                                            int degree, std::function<double(double)> jump,
                                            std::optional<Range> bounds) {
    return PiecewiseFunction(
        std::make_shared<CustomFn>(std::move(eval), std::move(knots), degree, std::move(jump), bounds));
}

PiecewiseFunction operator+(const PiecewiseFunction& f, const PiecewiseFunction& h) {
    return PiecewiseFunction::sum({{1.0, f}, {1.0, h}});
}
PiecewiseFunction operator-(const PiecewiseFunction& f, const PiecewiseFunction& h) {
    return PiecewiseFunction::sum({{1.0, f}, {-1.0, h}});
}
PiecewiseFunction operator*(double c, const PiecewiseFunction& f) { return PiecewiseFunction::sum({{c, f}}); }

}  // namespace stieltjes
