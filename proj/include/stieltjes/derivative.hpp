#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stieltjes/derivator.hpp"
#include "stieltjes/function.hpp"

namespace stieltjes {

enum class DerivativeMethod { JumpFormula, LimitExtrapolation };

struct QuotientSample {
    double s = 0.0;
    double quotient = 0.0;
};

struct DerivativeEstimate {
    bool exists = false;
    double value = 0.0;
    std::optional<double> left_estimate;
    std::optional<double> right_estimate;
    std::vector<QuotientSample> quotient_trace;
    DerivativeMethod method = DerivativeMethod::LimitExtrapolation;
    PointClass point;
    // Spread of the selected extrapolation pair per side, as an error indicator.
    double error_estimate = 0.0;
    std::string reason;
};

struct DerivativeOptions {
    double tol = 1e-6;
    int steps = 48;
    double delta_cap = 1e-2;
};

// Stieltjes derivative of f with respect to g at t, using the side rules of
// the point class of t (t* for constancy interiors). At a jump of g it is the
// exact quotient (f(t*+) - f(t*)) / (g(t*+) - g(t*)). Elsewhere the difference
// quotient is sampled at t* +- delta0 2^-k (samples with g(s) = g(t*) are
// skipped) and the tail is Richardson-extrapolated. Throws DegenerateQuotient
// when every sample on a required side is skipped.
DerivativeEstimate g_derivative(const PiecewiseFunction& f, const Derivator& d, double t,
                                const DerivativeOptions& opts);
DerivativeEstimate g_derivative(const PiecewiseFunction& f, const Derivator& d, double t, double tol = 1e-6);

struct PhiEstimate {
    double value = 0.0;
    bool certified = false;
    std::vector<double> sample_sequence;
};

// liminf of |g(s) - g(t*)| / |g~(s) - g~(t*)| with the side rules of t.
PhiEstimate phi(const Derivator& d, double t, double tol = 1e-6);

}  // namespace stieltjes
