#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stieltjes {

// Interval with independent endpoint closure. A single point is lo == hi with
// both ends closed.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = false;

    static Interval half_open(double x, double y) { return {x, y, true, false}; }
    static Interval point(double t) { return {t, t, true, true}; }

    bool is_point() const { return lo == hi; }
    bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
    bool contains(double t) const;
};

// Finite disjoint union of intervals and atoms, kept sorted and merged.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> parts);

    static IntervalSet half_open(double x, double y);

    IntervalSet& add(const Interval& part);
    IntervalSet& add_interval(double x, double y) { return add(Interval::half_open(x, y)); }
    IntervalSet& add_atom(double t) { return add(Interval::point(t)); }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    bool contains(double t) const;

    // Union with another set (not necessarily disjoint).
    IntervalSet united(const IntervalSet& other) const;
    // Intersection with another set.
    IntervalSet intersected(const IntervalSet& other) const;

    std::string to_string() const;

private:
    void normalize();

    std::vector<Interval> parts_;
};

bool operator==(const Interval& a, const Interval& b);
bool operator==(const IntervalSet& a, const IntervalSet& b);

// Parses the literal syntax "[x,y), {t}, (x,y]" (any bracket mix, "{t}" atoms).
// Throws Error(MalformedSpec) on bad input.
IntervalSet parse_interval_set(std::string_view text);

std::string format_number(double v);

}  // namespace stieltjes
