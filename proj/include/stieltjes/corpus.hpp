#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "stieltjes/derivator.hpp"
#include "stieltjes/function.hpp"
#include "stieltjes/interval_set.hpp"

namespace stieltjes {

// Seeded random instances on [0, 1]. Every number is dyadic (breakpoints on
// the 1/32 grid, slopes in quarters, atoms in eighths, f values in sixteenths),
// so the piecewise data are exact in binary and results do not depend on
// rounding of the inputs.
struct CorpusMember {
    int index = 0;
    DerivatorSpec spec;
    Derivator d = Derivator::piecewise({0.0, 1.0}, {1.0});
    // Continuous piecewise-affine integrand given by its nodes.
    InterpolantSpec f_nodes;
    PiecewiseFunction f;
    // g-continuous integrand P_A o g~ for the everywhere check.
    InterpolantSpec h_nodes;
    PiecewiseFunction h;
};

struct CorpusLimits {
    int max_segments = 12;
    int max_atoms = 4;
    int max_f_nodes = 6;
};

// Admissible piecewise-affine derivator; rejected draws are redrawn.
DerivatorSpec random_derivator_spec(std::mt19937_64& rng, const CorpusLimits& limits = {});
InterpolantSpec random_continuous_nodes(std::mt19937_64& rng, double a, double b, const CorpusLimits& limits = {});
// Up to four disjoint pieces inside [a, b], each a half-open, open, closed interval or an atom.
IntervalSet random_interval_set(std::mt19937_64& rng, double a, double b);

std::vector<CorpusMember> make_corpus(int count, std::uint64_t seed, const CorpusLimits& limits = {});

}  // namespace stieltjes
