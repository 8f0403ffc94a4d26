#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stieltjes/derivator.hpp"
#include "stieltjes/function.hpp"

namespace stieltjes {

using Rational = boost::multiprecision::cpp_rational;

struct SequenceTerm {
    Rational alpha;  // alpha_n
    Rational x;      // x_n
};

// alpha_1 = 1/2, alpha_k = 1/k; x_1 = 1, x_{2k} = x_{2k-1}/(1+alpha_k), x_{2k+1} = (1-alpha_k) x_{2k}.
Rational alpha_exact(long n);
// x_1 .. x_n by the recursion.
std::vector<Rational> x_recursion(long n);
// x_n from the closed forms (x_2 = 2/3 handled separately).
Rational x_closed_form(long n);
SequenceTerm example_sequences(long n);

// sum_{k=1}^{N} alpha_{k+1}/(1+alpha_{k+1}) prod_{j=1}^{k} (1-alpha_j)/(1+alpha_j); tends to 1/6.
Rational series_identity_check(long N);

Derivator build_oscillator(int N);
// psi(t) = g(t) / g~(t) for the oscillator, t > 0.
double psi(const Derivator& d, double t);

// The triangular f: on [x_{n+1}, x_n] a triangle of signed height (-1)^n s_n at the midpoint.
PiecewiseFunction triangular_f(int N);
double s_height(long n);
// F(t) = integral of f over [0, t) against mu_g, which equals the integral of |f| dt.
double F_closed_form(double t);
// Q = F / g; nullopt where g vanishes (the odd-indexed x_n).
std::optional<double> Q_at(double t);

struct WitnessRow {
    long n = 0;
    double x = 0.0;
    double g = 0.0;         // g(x_n) - g(t)
    double F = 0.0;         // F(x_n) - F(t)
    double quotient = 0.0;  // F / g
    double reference = 0.0; // closed form or proof lower bound
};

struct WitnessReport {
    std::string sequence;
    std::vector<WitnessRow> rows;
    double growth_exponent = 0.0;  // log-log slope of the quotient against n
    double growth_ratio = 0.0;     // Q(x_{16m}) / Q(x_{2m}), oscillator report only
    long ratio_m = 0;
    double threshold = 10.0;
    std::optional<long> threshold_index;
    bool divergent = false;
    std::string verdict;
};

// Q(x_{2n}) for n <= N against x_{2n}^{1/3} / (2 alpha_n).
WitnessReport oscillator_report(long N, double threshold = 10.0);

struct ApproachSpec {
    std::string name;
    std::vector<double> points;  // strictly decreasing towards t
};

// y_n = x_{2n}, n = 1 .. count.
ApproachSpec oscillator_approach(long count);

// Builds a g-continuous f whose primitive has unbounded difference quotients
// at t along the approach sequence. Throws PhiNotZero when phi(t) > 0 is
// certified and SequenceUnsuitable when the sequence does not fit.
std::pair<PiecewiseFunction, WitnessReport> necessity_witness(const Derivator& d, double t, const ApproachSpec& approach,
                                                              double tol = 1e-6, double threshold = 10.0);

// Figure datasets with columns t,g,g_tilde,f,F,Q; returns the paths written.
std::vector<std::string> write_figure_data(const std::string& dir, int N, int resolution = 2001);

}  // namespace stieltjes
