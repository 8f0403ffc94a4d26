#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace stieltjes {

enum class DerivatorKind { PiecewiseAffine, Oscillator };
enum class Side { Value, RightLimit };
enum class DistanceKind { Variation, Raw };

enum class PointKind {
    Regular,
    Jump,
    ConstancyInterior,
    NPlus,
    NMinus,
    LeftEndpoint,
    RightEndpoint,
};

std::string to_string(PointKind kind);

struct PointClass {
    PointKind kind = PointKind::Regular;
    double t_star = 0.0;
    int component = -1;  // index into constancy_components() for ConstancyInterior/NPlus/NMinus
};

// Open interval (lo, hi) on which g is constant, maximal.
struct ConstancyComponent {
    double lo = 0.0;
    double hi = 0.0;
};

struct DerivatorSpec {
    DerivatorKind kind = DerivatorKind::PiecewiseAffine;
    std::vector<double> breakpoints;  // t_0 = a < ... < t_m = b
    std::vector<double> slopes;       // one per [t_i, t_{i+1})
    std::vector<double> jumps;        // g(t_i+) - g(t_i); size m or m+1, empty means none
    std::optional<double> base_value;
    int oscillator_depth = 0;
    double oscillator_r = 1.0 / 3.0;
};

// Left-continuous derivator of bounded variation. Either piecewise affine with
// finitely many signed atoms, or the procedural oscillator on [0, 1] whose
// segment list is truncated at depth N (segments below x_{2N+1} form the tail).
class Derivator {
public:
    static Derivator from_spec(const DerivatorSpec& spec);
    static Derivator piecewise(std::vector<double> breakpoints, std::vector<double> slopes,
                               std::vector<double> jumps = {}, double base_value = 0.0);
    // Same as piecewise() without the endpoint admissibility check; for derived
    // objects such as Jordan parts or truncations.
    static Derivator piecewise_relaxed(std::vector<double> breakpoints, std::vector<double> slopes,
                                       std::vector<double> jumps = {}, double base_value = 0.0);
    static Derivator oscillator(int depth);

    DerivatorKind kind() const { return kind_; }
    double a() const { return t_.front(); }
    double b() const { return t_.back(); }
    int depth() const { return depth_; }
    // Left end of the explicitly represented segments; a() for piecewise affine.
    double tail_end() const { return kind_ == DerivatorKind::Oscillator ? t_[1] : t_.front(); }

    double evaluate(double t, Side side = Side::Value) const;
    double operator()(double t) const { return evaluate(t); }
    // g(t+); equals g(t) at b.
    double right_limit(double t) const;
    double jump(double t) const;
    double variation_at(double t) const;
    double variation_right_limit(double t) const;

    const std::vector<double>& breakpoints() const { return t_; }
    const std::vector<double>& slopes() const { return s_; }
    // One entry per breakpoint; the last is always 0.
    const std::vector<double>& jumps() const { return j_; }
    std::size_t segments() const { return s_.size(); }
    // Segment i such that t lies in (t_i, t_{i+1}], or 0 at t = a.
    std::size_t segment_left_of(double t) const;
    bool is_breakpoint(double t) const;
    // Breakpoints in the closed range [lo, hi].
    std::vector<double> knots(double lo, double hi) const;

    const std::vector<ConstancyComponent>& constancy_components() const { return comps_; }
    PointClass classify_point(double t) const;
    double g_distance(double s, double t, DistanceKind kind) const;

    bool nondecreasing() const;
    Derivator variation_derivator() const;
    Derivator negated() const;
    // False only for relaxed constructions that violate endpoint admissibility.
    bool admissible() const { return admissible_; }
    DerivatorSpec spec() const;

private:
    Derivator() = default;
    void check_domain(double t) const;
    void finalize(bool check_endpoints = true);
    bool admissible_ = true;

    DerivatorKind kind_ = DerivatorKind::PiecewiseAffine;
    std::vector<double> t_;
    std::vector<double> s_;
    std::vector<double> j_;
    std::vector<double> left_;       // g(t_i)
    std::vector<double> var_left_;   // g~(t_i)
    std::vector<ConstancyComponent> comps_;
    int depth_ = 0;
    double sign_ = 1.0;  // oscillator orientation
};

Derivator build_derivator(const DerivatorSpec& spec);
double evaluate(const Derivator& d, double t, Side side = Side::Value);
double variation_at(const Derivator& d, double t);
PointClass classify_point(const Derivator& d, double t);
double g_distance(const Derivator& d, double s, double t, DistanceKind kind);

}  // namespace stieltjes
