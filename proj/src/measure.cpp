#include "stieltjes/measure.hpp"

#include <algorithm>
#include <cmath>

#include "stieltjes/errors.hpp"

namespace stieltjes {

std::string to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::Signed: return "Signed";
        case MeasureKind::Positive: return "Positive";
        case MeasureKind::Negative: return "Negative";
        case MeasureKind::Total: return "Total";
    }
    return "Unknown";
}

double kind_weight(double v, MeasureKind kind) {
    switch (kind) {
        case MeasureKind::Signed: return v;
        case MeasureKind::Positive: return std::max(v, 0.0);
        case MeasureKind::Negative: return std::max(-v, 0.0);
        case MeasureKind::Total: return std::abs(v);
    }
    return 0.0;
}

namespace {

void check_inside(const Derivator& d, const Interval& p) {
    if (p.lo < d.a() || p.hi > d.b())
        throw Error(ErrorKind::OutOfDomain, "set part " + IntervalSet({p}).to_string() + " leaves [" +
                                                format_number(d.a()) + "," + format_number(d.b()) + "]");
}

// mu([lo,hi] with closures) from a left-continuous generator G.
template <typename Value, typename Right>
double generated(const Interval& p, Value value, Right right) {
    const double upper = p.hi_closed ? right(p.hi) : value(p.hi);
    const double lower = p.lo_closed ? value(p.lo) : right(p.lo);
    return upper - lower;
}

double signed_part(const Derivator& d, const Interval& p) {
    return generated(p, [&](double t) { return d(t); }, [&](double t) { return d.right_limit(t); });
}

double total_part(const Derivator& d, const Interval& p) {
    return generated(p, [&](double t) { return d.variation_at(t); },
                     [&](double t) { return d.variation_right_limit(t); });
}

}  // namespace

double measure_of(const Derivator& d, const Interval& part, MeasureKind kind) {
    if (part.empty()) return 0.0;
    check_inside(d, part);
    switch (kind) {
        case MeasureKind::Signed: return signed_part(d, part);
        case MeasureKind::Total: return total_part(d, part);
        default: break;
    }
    if (d.kind() == DerivatorKind::Oscillator) {
        const double s = signed_part(d, part);
        const double v = total_part(d, part);
        return kind == MeasureKind::Positive ? 0.5 * (v + s) : 0.5 * (v - s);
    }
    auto [g1, g2] = jordan_parts(d);
    return signed_part(kind == MeasureKind::Positive ? g1 : g2, part);
}

double measure_of(const Derivator& d, const IntervalSet& set, MeasureKind kind) {
    if (set.empty()) return 0.0;
    if ((kind == MeasureKind::Positive || kind == MeasureKind::Negative) &&
        d.kind() == DerivatorKind::PiecewiseAffine) {
        auto [g1, g2] = jordan_parts(d);
        const Derivator& part_gen = kind == MeasureKind::Positive ? g1 : g2;
        double acc = 0.0;
        for (const Interval& p : set.parts()) {
            check_inside(d, p);
            acc += signed_part(part_gen, p);
        }
        return acc;
    }
    double acc = 0.0;
    for (const Interval& p : set.parts()) acc += measure_of(d, p, kind);
    return acc;
}

HahnSets hahn_decomposition(const Derivator& d) {
    const auto& t = d.breakpoints();
    const auto& s = d.slopes();
    const auto& j = d.jumps();
    std::vector<Interval> pos, neg;
    auto put = [&](const Interval& p, bool positive) { (positive ? pos : neg).push_back(p); };
    put(Interval::point(t[0]), j[0] != 0.0 ? j[0] > 0.0 : true);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool seg_positive = s[i] >= 0.0;
        put({t[i], t[i + 1], false, false}, seg_positive);
        put(Interval::point(t[i + 1]), j[i + 1] != 0.0 ? j[i + 1] > 0.0 : seg_positive);
    }
    return {IntervalSet(std::move(pos)), IntervalSet(std::move(neg))};
}

std::pair<Derivator, Derivator> jordan_parts(const Derivator& d) {
    if (d.kind() != DerivatorKind::PiecewiseAffine)
        throw Error(ErrorKind::OutOfRange, "jordan parts are available for piecewise-affine derivators only");
    const auto& s = d.slopes();
    const auto& j = d.jumps();
    std::vector<double> s1(s.size()), s2(s.size()), j1(j.size()), j2(j.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        s1[i] = std::max(s[i], 0.0);
        s2[i] = std::max(-s[i], 0.0);
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
        j1[i] = std::max(j[i], 0.0);
        j2[i] = std::max(-j[i], 0.0);
    }
    return {Derivator::piecewise_relaxed(d.breakpoints(), std::move(s1), std::move(j1), 0.0),
            Derivator::piecewise_relaxed(d.breakpoints(), std::move(s2), std::move(j2), 0.0)};
}

}  // namespace stieltjes
