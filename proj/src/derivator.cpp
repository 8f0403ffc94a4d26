#include "stieltjes/derivator.hpp"

#include <algorithm>
#include <cmath>

#include "stieltjes/errors.hpp"
#include "stieltjes/interval_set.hpp"
#include "stieltjes/oscillator_shape.hpp"

namespace stieltjes {

std::string to_string(PointKind kind) {
    switch (kind) {
        case PointKind::Regular: return "Regular";
        case PointKind::Jump: return "Jump";
        case PointKind::ConstancyInterior: return "ConstancyInterior";
        case PointKind::NPlus: return "NPlus";
        case PointKind::NMinus: return "NMinus";
        case PointKind::LeftEndpoint: return "LeftEndpoint";
        case PointKind::RightEndpoint: return "RightEndpoint";
    }
    return "Unknown";
}

namespace {

void require_finite(double v, const std::string& field) {
    if (!std::isfinite(v)) throw Error(ErrorKind::MalformedSpec, field + " must be finite");
}

}  // namespace

Derivator Derivator::piecewise(std::vector<double> breakpoints, std::vector<double> slopes,
                               std::vector<double> jumps, double base_value) {
    Derivator d = piecewise_relaxed(std::move(breakpoints), std::move(slopes), std::move(jumps), base_value);
    d.finalize(true);
    return d;
}

Derivator Derivator::piecewise_relaxed(std::vector<double> breakpoints, std::vector<double> slopes,
                                       std::vector<double> jumps, double base_value) {
    if (breakpoints.size() < 2)
        throw Error(ErrorKind::MalformedSpec, "breakpoints needs at least two entries");
    const std::size_t m = breakpoints.size() - 1;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        require_finite(breakpoints[i], "breakpoints[" + std::to_string(i) + "]");
        if (i > 0 && !(breakpoints[i - 1] < breakpoints[i]))
            throw Error(ErrorKind::MalformedSpec,
                        "breakpoints must be strictly increasing (index " + std::to_string(i) + ")");
    }
    if (slopes.size() != m)
        throw Error(ErrorKind::MalformedSpec, "slopes needs " + std::to_string(m) + " entries, got " +
                                                  std::to_string(slopes.size()));
    for (std::size_t i = 0; i < m; ++i) require_finite(slopes[i], "slopes[" + std::to_string(i) + "]");
    if (jumps.empty()) jumps.assign(m + 1, 0.0);
    if (jumps.size() == m) jumps.push_back(0.0);
    if (jumps.size() != m + 1)
        throw Error(ErrorKind::MalformedSpec, "jumps needs " + std::to_string(m) + " or " +
                                                  std::to_string(m + 1) + " entries");
    for (std::size_t i = 0; i <= m; ++i) require_finite(jumps[i], "jumps[" + std::to_string(i) + "]");
    require_finite(base_value, "base_value");

    Derivator d;
    d.kind_ = DerivatorKind::PiecewiseAffine;
    d.t_ = std::move(breakpoints);
    d.s_ = std::move(slopes);
    d.j_ = std::move(jumps);
    d.left_.assign(1, base_value);
    d.finalize(false);
    return d;
}

Derivator Derivator::oscillator(int depth) {
    if (depth < 2) throw Error(ErrorKind::MalformedSpec, "oscillator depth must be at least 2");
    Derivator d;
    d.kind_ = DerivatorKind::Oscillator;
    d.depth_ = depth;
    const long last = 2L * depth + 1;
    d.t_.push_back(0.0);
    for (long n = last; n >= 1; --n) d.t_.push_back(oscillator::x(n));
    d.s_.push_back(0.0);  // tail placeholder, never used for values
    for (long n = last - 1; n >= 1; --n) d.s_.push_back(oscillator::slope(n));
    d.j_.assign(d.t_.size(), 0.0);
    d.finalize();
    return d;
}

Derivator Derivator::from_spec(const DerivatorSpec& spec) {
    if (spec.kind == DerivatorKind::Oscillator) {
        if (std::abs(spec.oscillator_r - 1.0 / 3.0) > 1e-12)
            throw Error(ErrorKind::MalformedSpec, "oscillator.r: only r = 1/3 is supported");
        return oscillator(spec.oscillator_depth);
    }
    return piecewise(spec.breakpoints, spec.slopes, spec.jumps, spec.base_value.value_or(0.0));
}

void Derivator::finalize(bool check_endpoints) {
    const std::size_t m = s_.size();
    if (kind_ == DerivatorKind::Oscillator) {
        left_.resize(m + 1);
        var_left_.resize(m + 1);
        for (std::size_t i = 0; i <= m; ++i) {
            left_[i] = sign_ * oscillator::value(t_[i]);
            var_left_[i] = t_[i];
        }
        comps_.clear();
        return;
    }
    const double base = left_.empty() ? 0.0 : left_.front();
    left_.assign(m + 1, base);
    var_left_.assign(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double len = t_[i + 1] - t_[i];
        left_[i + 1] = left_[i] + j_[i] + s_[i] * len;
        var_left_[i + 1] = var_left_[i] + std::abs(j_[i]) + std::abs(s_[i]) * len;
    }
    comps_.clear();
    for (std::size_t i = 0; i < m;) {
        if (s_[i] != 0.0) {
            ++i;
            continue;
        }
        std::size_t k = i + 1;
        while (k < m && s_[k] == 0.0 && j_[k] == 0.0) ++k;
        comps_.push_back({t_[i], t_[k]});
        i = k;
    }
    admissible_ = true;
    for (const ConstancyComponent& c : comps_)
        if ((c.lo == a() && j_.front() == 0.0) || c.hi == b()) admissible_ = false;
    if (j_.back() != 0.0) admissible_ = false;
    if (!check_endpoints) return;
    for (const ConstancyComponent& c : comps_) {
        if (c.lo == a() && j_.front() == 0.0)
            throw Error(ErrorKind::NonAdmissibleEndpoint,
                        "left endpoint a=" + format_number(a()) + " lies in N_g^- (g is constant right of a)");
        if (c.hi == b())
            throw Error(ErrorKind::NonAdmissibleEndpoint,
                        "right endpoint b=" + format_number(b()) + " lies in N_g^+ (g is constant left of b)");
    }
    if (j_.back() != 0.0)
        throw Error(ErrorKind::NonAdmissibleEndpoint,
                    "right endpoint b=" + format_number(b()) + " lies in D_g (nonzero jump at b)");
}

void Derivator::check_domain(double t) const {
    if (!(t >= a() && t <= b()))
        throw Error(ErrorKind::OutOfDomain,
                    "t=" + format_number(t) + " outside [" + format_number(a()) + "," + format_number(b()) + "]");
}

std::size_t Derivator::segment_left_of(double t) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), t);
    if (it == t_.begin()) return 0;
    std::size_t k = static_cast<std::size_t>(it - t_.begin());
    return std::min(k - 1, s_.size() - 1);
}

bool Derivator::is_breakpoint(double t) const { return std::binary_search(t_.begin(), t_.end(), t); }

std::vector<double> Derivator::knots(double lo, double hi) const {
    auto first = std::lower_bound(t_.begin(), t_.end(), lo);
    auto last = std::upper_bound(t_.begin(), t_.end(), hi);
    return {first, last};
}

double Derivator::evaluate(double t, Side side) const {
    check_domain(t);
    if (side == Side::RightLimit) {
        if (t >= b())
            throw Error(ErrorKind::OutOfDomain, "right limit requested at b=" + format_number(b()));
        return right_limit(t);
    }
    if (kind_ == DerivatorKind::Oscillator) return sign_ * oscillator::value(t);
    auto it = std::lower_bound(t_.begin(), t_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - t_.begin());
    if (t_[k] == t) return left_[k];
    std::size_t i = k - 1;
    return left_[i] + j_[i] + s_[i] * (t - t_[i]);
}

double Derivator::jump(double t) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), t);
    if (it == t_.end() || *it != t) return 0.0;
    return j_[static_cast<std::size_t>(it - t_.begin())];
}

double Derivator::right_limit(double t) const { return evaluate(t) + jump(t); }

double Derivator::variation_at(double t) const {
    check_domain(t);
    if (kind_ == DerivatorKind::Oscillator) return t;
    auto it = std::lower_bound(t_.begin(), t_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - t_.begin());
    if (t_[k] == t) return var_left_[k];
    std::size_t i = k - 1;
    return var_left_[i] + std::abs(j_[i]) + std::abs(s_[i]) * (t - t_[i]);
}

double Derivator::variation_right_limit(double t) const { return variation_at(t) + std::abs(jump(t)); }

PointClass Derivator::classify_point(double t) const {
    check_domain(t);
    PointClass pc;
    pc.t_star = t;
    if (jump(t) != 0.0) {
        pc.kind = PointKind::Jump;
        return pc;
    }
    for (std::size_t c = 0; c < comps_.size(); ++c) {
        const ConstancyComponent& comp = comps_[c];
        if (t > comp.lo && t < comp.hi) {
            pc.kind = PointKind::ConstancyInterior;
            pc.t_star = comp.hi;
            pc.component = static_cast<int>(c);
            return pc;
        }
        if (t == comp.hi) {
            pc.kind = PointKind::NPlus;
            pc.component = static_cast<int>(c);
            return pc;
        }
        if (t == comp.lo) {
            pc.kind = PointKind::NMinus;
            pc.component = static_cast<int>(c);
            return pc;
        }
    }
    if (t == a()) pc.kind = PointKind::LeftEndpoint;
    else if (t == b()) pc.kind = PointKind::RightEndpoint;
    return pc;
}

double Derivator::g_distance(double s, double t, DistanceKind kind) const {
    if (kind == DistanceKind::Raw) return std::abs(evaluate(s) - evaluate(t));
    return std::abs(variation_at(s) - variation_at(t));
}

bool Derivator::nondecreasing() const {
    if (kind_ == DerivatorKind::Oscillator) return false;
    return std::all_of(s_.begin(), s_.end(), [](double v) { return v >= 0.0; }) &&
           std::all_of(j_.begin(), j_.end(), [](double v) { return v >= 0.0; });
}

Derivator Derivator::variation_derivator() const {
    if (kind_ == DerivatorKind::Oscillator) return piecewise({a(), b()}, {1.0});
    std::vector<double> s(s_.size()), j(j_.size());
    std::transform(s_.begin(), s_.end(), s.begin(), [](double v) { return std::abs(v); });
    std::transform(j_.begin(), j_.end(), j.begin(), [](double v) { return std::abs(v); });
    return piecewise_relaxed(t_, std::move(s), std::move(j), 0.0);
}

Derivator Derivator::negated() const {
    if (kind_ == DerivatorKind::Oscillator) {
        Derivator d = *this;
        d.sign_ = -sign_;
        for (double& v : d.s_) v = -v;
        d.finalize();
        return d;
    }
    std::vector<double> s(s_.size()), j(j_.size());
    std::transform(s_.begin(), s_.end(), s.begin(), [](double v) { return -v; });
    std::transform(j_.begin(), j_.end(), j.begin(), [](double v) { return -v; });
    return piecewise_relaxed(t_, std::move(s), std::move(j), -left_.front());
}

DerivatorSpec Derivator::spec() const {
    DerivatorSpec out;
    out.kind = kind_;
    if (kind_ == DerivatorKind::Oscillator) {
        out.oscillator_depth = depth_;
        return out;
    }
    out.breakpoints = t_;
    out.slopes = s_;
    out.jumps = j_;
    out.base_value = left_.front();
    return out;
}

Derivator build_derivator(const DerivatorSpec& spec) { return Derivator::from_spec(spec); }
double evaluate(const Derivator& d, double t, Side side) { return d.evaluate(t, side); }
double variation_at(const Derivator& d, double t) { return d.variation_at(t); }
PointClass classify_point(const Derivator& d, double t) { return d.classify_point(t); }
double g_distance(const Derivator& d, double s, double t, DistanceKind kind) {
    return d.g_distance(s, t, kind);
}

}  // namespace stieltjes
