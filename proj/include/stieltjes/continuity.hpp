#pragma once

#include <optional>
#include <vector>

#include "stieltjes/derivator.hpp"
#include "stieltjes/function.hpp"

namespace stieltjes {

enum class ContinuityMode { TwoSided, Left, Right };

struct ContinuityOptions {
    std::vector<double> epsilons{1e-1, 1e-2, 1e-3};
    int delta_steps = 40;
};

struct ContinuityVerdict {
    bool pass = true;
    std::optional<double> witness;  // s with small rho_g(s,t) and |f(s) - f(t)| >= epsilon
    double epsilon = 0.0;
};

// Sampling falsifier for g-continuity of f at t. Pass means no violation was
// found on the sample grid, not a proof.
ContinuityVerdict check_g_continuity(const PiecewiseFunction& f, const Derivator& d, double t,
                                     ContinuityMode mode = ContinuityMode::TwoSided,
                                     const ContinuityOptions& opts = {});

}  // namespace stieltjes
