#pragma once

#include <utility>

#include "stieltjes/derivator.hpp"
#include "stieltjes/interval_set.hpp"

namespace stieltjes {

enum class MeasureKind { Signed, Positive, Negative, Total };

std::string to_string(MeasureKind kind);

struct HahnSets {
    IntervalSet positive_part;
    IntervalSet negative_part;
};

// Weight of an atom J or a slope s under the chosen variation.
double kind_weight(double v, MeasureKind kind);

double measure_of(const Derivator& d, const Interval& part, MeasureKind kind);
double measure_of(const Derivator& d, const IntervalSet& set, MeasureKind kind);

// Zero-slope pieces and atomless isolated points default to the positive set;
// an atomless breakpoint follows the segment on its left. On the oscillator the
// unresolved tail [0, x_{2N+1}) is put in the positive set.
HahnSets hahn_decomposition(const Derivator& d);

// g1(t) = mu_g^+([a,t)), g2(t) = mu_g^-([a,t)), so g - g(a) = g1 - g2.
// Piecewise-affine derivators only.
std::pair<Derivator, Derivator> jordan_parts(const Derivator& d);

}  // namespace stieltjes
