#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stieltjes/derivator.hpp"
#include "stieltjes/function.hpp"

namespace stieltjes {

// inf{t in [a,b] : g(t) >= y} for nondecreasing g. A value inside a jump gap
// maps to the jump location.
double g_dagger(const Derivator& d, double y);

PiecewiseFunction pa_interpolant(const InterpolantSpec& spec);

struct Boundary {
    enum class Kind { Free, Clamped, JumpStart };
    Kind kind = Kind::Free;
    double alpha = 0.0;  // h(a), Clamped only
    double beta = 0.0;   // h(b)

    static Boundary free() { return {}; }
    static Boundary clamped(double alpha, double beta) { return {Kind::Clamped, alpha, beta}; }
    static Boundary jump_start(double beta) { return {Kind::JumpStart, 0.0, beta}; }
};

std::string to_string(Boundary::Kind kind);

struct ApproxOptions {
    // Work on [a, b] inside the domain instead of the whole domain.
    std::optional<std::pair<double, double>> subinterval;
    // Range [c, d] of f; defaults to f.bounds().
    std::optional<Range> range;
    int max_cells = 1 << 16;
};

struct Approximation {
    PiecewiseFunction h;
    double l1g_error = 0.0;  // measured ||f - h|| over [a, b)
    double a = 0.0;
    double b = 0.0;
    double a_star = 0.0;
    double ell = 0.0;
    std::optional<double> r;
    std::optional<double> s;
    int cells = 0;
    std::string construction;
};

// g-continuous h with values in [c, d] and ||f - h||_{L1_g([a,b))} < epsilon,
// certified by the integrator. Throws BoundaryHypothesisViolated when the
// boundary variant does not apply, BudgetExceeded when the certificate fails.
Approximation approximate_in_L1g(const PiecewiseFunction& f, const Derivator& d, double epsilon,
                                 const Boundary& boundary = Boundary::free(), const ApproxOptions& opts = {});

struct Truncation {
    Derivator g;
    double tv_distance = 0.0;
    std::vector<double> kept;     // atom locations kept
    std::vector<double> removed;  // atom locations dropped
};

// Keeps the fewest largest atoms whose removal leaves mass below eta.
Truncation truncate_jumps(const Derivator& d, double eta);

}  // namespace stieltjes
