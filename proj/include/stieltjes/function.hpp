#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "stieltjes/derivator.hpp"
#include "stieltjes/interval_set.hpp"

namespace stieltjes {

enum class FunctionKind {
    PiecewiseAffine,
    TriangularWave,
    ComposedPA,
    Indicator,
    Polynomial,
    DerivatorValue,
    Variation,
    Sum,
    Abs,
    Clamp,
    Splice,
    Primitive,
    Custom,
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

// Node set of a clamped piecewise-linear interpolant, abscissae increasing.
struct InterpolantSpec {
    std::vector<std::pair<double, double>> nodes;
};

// Between consecutive knots every function here is a polynomial of degree()
// at most 3; that is what the exact integrator relies on.
class FunctionImpl {
public:
    explicit FunctionImpl(FunctionKind kind) : kind_(kind) {}
    virtual ~FunctionImpl() = default;

    virtual double eval(double t) const = 0;
    // Sorted points in [lo, hi] where the polynomial piece may change.
    virtual std::vector<double> knots(double lo, double hi) const = 0;
    virtual int degree() const = 0;
    // f(t+) - f(t). The default extrapolates the right-hand piece.
    virtual double jump_at(double t) const;
    // The jump as an unrounded product c * w, when it is known in that form.
    virtual std::optional<std::pair<double, double>> factored_jump(double) const { return std::nullopt; }
    virtual std::optional<Range> bounds() const { return std::nullopt; }
    // Knots left of this point are not enumerated (infinitely many).
    virtual double tail_end() const { return -std::numeric_limits<double>::infinity(); }

    FunctionKind kind() const { return kind_; }

private:
    FunctionKind kind_;
};

class PiecewiseFunction {
public:
    PiecewiseFunction() = default;
    explicit PiecewiseFunction(std::shared_ptr<const FunctionImpl> impl) : impl_(std::move(impl)) {}

    double operator()(double t) const { return impl_->eval(t); }
    std::vector<double> knots(double lo, double hi) const { return impl_->knots(lo, hi); }
    int degree() const { return impl_->degree(); }
    double jump_at(double t) const { return impl_->jump_at(t); }
    double right_limit(double t) const { return impl_->eval(t) + impl_->jump_at(t); }
    std::optional<std::pair<double, double>> factored_jump(double t) const { return impl_->factored_jump(t); }
    std::optional<Range> bounds() const { return impl_->bounds(); }
    double tail_end() const { return impl_->tail_end(); }
    FunctionKind kind() const { return impl_->kind(); }
    const FunctionImpl& impl() const { return *impl_; }
    bool valid() const { return static_cast<bool>(impl_); }

    static PiecewiseFunction constant(double c);
    // f(t) = coeffs[i].first + coeffs[i].second * (t - knots[i]) on (knots[i], knots[i+1]],
    // the first piece also covering knots[0]; constant extension outside.
    static PiecewiseFunction affine_pieces(std::vector<double> knots,
                                           std::vector<std::pair<double, double>> coeffs);
    // Polynomial sum c_k t^k, degree at most 3.
    static PiecewiseFunction polynomial(std::vector<double> coeffs);
    static PiecewiseFunction indicator(IntervalSet set);
    // Clamped interpolant P_A.
    static PiecewiseFunction interpolant(const InterpolantSpec& spec);
    // P_A composed with a derivator.
    static PiecewiseFunction composed(const InterpolantSpec& spec, const Derivator& inner);
    static PiecewiseFunction derivator_value(const Derivator& d);
    static PiecewiseFunction variation(const Derivator& d);
    // Triangular wave on [0,1]: a triangle of signed height (-1)^n s_n on each
    // [x_{n+1}, x_n], s_n = (x_n^{4/3} - x_{n+1}^{4/3}) / (x_n - x_{n+1}).
    static PiecewiseFunction triangular_wave(int depth);
    static PiecewiseFunction sum(std::vector<std::pair<double, PiecewiseFunction>> terms);
    static PiecewiseFunction abs(const PiecewiseFunction& f);
    static PiecewiseFunction clamp(const PiecewiseFunction& f, double lo, double hi);
    // pieces[0] on (-inf, breaks[0]], pieces[i] on (breaks[i-1], breaks[i]], last on the rest.
    static PiecewiseFunction splice(std::vector<double> breaks, std::vector<PiecewiseFunction> pieces);
    static PiecewiseFunction custom(std::function<double(double)> eval, std::vector<double> knots,
                                    int degree, std::function<double(double)> jump = {},
                                    std::optional<Range> bounds = std::nullopt);

private:
    std::shared_ptr<const FunctionImpl> impl_;
};

PiecewiseFunction operator+(const PiecewiseFunction& f, const PiecewiseFunction& h);
PiecewiseFunction operator-(const PiecewiseFunction& f, const PiecewiseFunction& h);
PiecewiseFunction operator*(double c, const PiecewiseFunction& f);

// Merges and deduplicates sorted knot lists.
std::vector<double> merge_knots(std::vector<double> a, const std::vector<double>& b);
// First knot of f strictly greater than t (or +inf).
double next_knot(const PiecewiseFunction& f, double t, double horizon);

}  // namespace stieltjes
