#pragma once

// Floating-point description of the oscillating derivator on [0,1]:
// alpha_1 = 1/2, alpha_k = 1/k, x_1 = 1, x_{2k} = x_{2k-1}/(1+alpha_k),
// x_{2k+1} = (1-alpha_k) x_{2k}; slope -1 on (x_{2k}, x_{2k-1}] and +1 on
// (x_{2k+1}, x_{2k}]. Exact rational versions live in counterexamples.hpp.

namespace stieltjes::oscillator {

double alpha(long k);
// x_n from the closed forms (x_1 = 1, x_2 = 2/3).
double x(long n);
// Index n with x_{n+1} < t <= x_n, for t in (0, 1].
long locate(double t);
// Slope of g on (x_{n+1}, x_n].
double slope(long n);
// g(t) for t in [0, 1]; exact up to rounding for every t > 0.
double value(double t);

}  // namespace stieltjes::oscillator
