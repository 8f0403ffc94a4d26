#pragma once

#include <memory>
#include <vector>

#include "stieltjes/derivator.hpp"
#include "stieltjes/function.hpp"
#include "stieltjes/interval_set.hpp"
#include "stieltjes/measure.hpp"

namespace stieltjes {

struct IntegralResult {
    double value = 0.0;
    // Bound on the part not resolved exactly (oscillator tail, accumulating knots).
    double tail_bound = 0.0;
};

// Exact on the common refinement of the knots of f and the breakpoints of d:
// each open piece contributes weight(slope) * int f dt by two-point Gauss
// (exact up to cubics), each atom t contributes f(t) * weight(J).
IntegralResult integrate_with_bound(const PiecewiseFunction& f, const Derivator& d, const IntervalSet& set,
                                    MeasureKind kind = MeasureKind::Signed);
double integrate(const PiecewiseFunction& f, const Derivator& d, const IntervalSet& set,
                 MeasureKind kind = MeasureKind::Signed);
double integrate(const PiecewiseFunction& f, const Derivator& d, const Interval& part,
                 MeasureKind kind = MeasureKind::Signed);

// Left-endpoint Riemann-Stieltjes sum on the uniform dyadic partition of [x, y)
// with 2^depth cells. Converges to the integral when f is left-continuous at
// the atoms of d.
double rs_refinement_oracle(const PiecewiseFunction& f, const Derivator& d, double x, double y, int depth);

double l1g_norm(const PiecewiseFunction& f, const Derivator& d, const IntervalSet& set);

// F(t) = integral of f over [a, t) against mu_g.
class Primitive {
public:
    Primitive(PiecewiseFunction f, Derivator d);

    double operator()(double t) const;
    double jump_at(double t) const;
    double right_limit(double t) const { return (*this)(t) + jump_at(t); }
    double tail_bound() const { return tail_bound_; }
    const std::vector<double>& knots() const { return knots_; }
    const PiecewiseFunction& integrand() const { return f_; }
    const Derivator& derivator() const { return d_; }
    PiecewiseFunction as_function() const;

private:
    PiecewiseFunction f_;
    Derivator d_;
    std::vector<double> knots_;
    std::vector<double> cum_;
    double floor_ = 0.0;
    double tail_bound_ = 0.0;
};

Primitive primitive(const PiecewiseFunction& f, const Derivator& d);

}  // namespace stieltjes
