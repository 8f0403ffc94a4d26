#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stieltjes/derivator.hpp"
#include "stieltjes/function.hpp"
#include "stieltjes/integral.hpp"

namespace stieltjes {

struct FtcPoint {
    double t = 0.0;
    PointKind kind = PointKind::Regular;
    double phi = 1.0;
    double expected = 0.0;
    double estimate = 0.0;
    double error = 0.0;
    bool pass = false;
    std::string note;
};

struct FtcReport {
    std::string check;
    std::size_t n_points = 0;
    std::vector<FtcPoint> points;  // sorted by t
    double max_error = 0.0;
    double tol = 0.0;
    bool verdict = false;
    std::string detail;
};

// Family of disjoint intervals (a_i, b_i) with sum var_g[a_i, b_i] < delta and
// sum |F(b_i) - F(a_i)| >= epsilon.
struct AcWitness {
    std::vector<std::pair<double, double>> family;
    double delta = 0.0;
    double variation = 0.0;
    double increment = 0.0;
    double epsilon = 0.0;
};

// F = primitive(f, d) differentiated at n_samples points placed by |mu_g|-mass,
// skipping N_g and C_g. Atoms must match f exactly.
FtcReport check_ftc_ae(const PiecewiseFunction& f, const Derivator& d, int n_samples, double tol = 1e-6);

// Rebuilds F(t) - F(a) as the integral of the sampled F'_g over [a, t) on a
// uniform grid of grid_points. Throws NotDifferentiableAlmostEverywhere when
// the derivative cannot be sampled on a piece of positive mass.
FtcReport check_barrow(const PiecewiseFunction& F, const Derivator& d, double tol = 1e-9, int grid_points = 257);
FtcReport check_barrow(const Primitive& F, double tol = 1e-9, int grid_points = 257);

// One-sided search for a violation of g-absolute continuity; nullopt is inconclusive.
std::optional<AcWitness> ac_falsifier(const PiecewiseFunction& F, const Derivator& d, double epsilon,
                                      int budget = 256);

struct EverywhereOptions {
    int n_random = 32;
    std::uint64_t seed = 0;
    // When false a point with phi <= 0 is recorded as failed instead of throwing.
    bool throw_on_phi = true;
};

// F'_g(t) = f(t*) at every breakpoint, atom, constancy endpoint and interior,
// plus seeded random points. Throws PhiHypothesisViolated at the first
// structural point with phi <= 0.
FtcReport check_ftc_everywhere(const PiecewiseFunction& f, const Derivator& d, double tol = 1e-6,
                               const EverywhereOptions& opts = {});

// Inverse of the variation function: the t with g~(t) <= u < g~(t+).
double variation_quantile(const Derivator& d, double u);

}  // namespace stieltjes
