#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "stieltjes/counterexamples.hpp"
#include "stieltjes/density.hpp"
#include "stieltjes/derivative.hpp"
#include "stieltjes/derivator.hpp"
#include "stieltjes/ftc.hpp"
#include "stieltjes/function.hpp"
#include "stieltjes/interval_set.hpp"
#include "stieltjes/measure.hpp"

namespace stieltjes {

using Json = nlohmann::ordered_json;

// Derivator spec document (JSON):
//   {"kind": "piecewise_affine", "domain": [a, b], "breakpoints": [...],
//    "slopes": [...], "jumps": [...], "base_value": 0}
//   {"kind": "oscillator", "oscillator": {"N": 50, "r": 0.3333333333333333}}
// "domain" is optional when the breakpoints are given; "jumps" may be omitted.
// Errors are MalformedSpec with "source:line: field '...': reason".
DerivatorSpec parse_derivator_spec(const std::string& text, const std::string& source = "<input>");
Derivator load_derivator(const std::string& path);
Json to_json(const DerivatorSpec& spec);

// Function spec document (JSON), interpreted relative to a derivator:
//   {"kind": "constant", "value": c}
//   {"kind": "piecewise_affine", "nodes": [[x, y], ...]}  clamped interpolant
//   {"kind": "polynomial", "coeffs": [c0, c1, ...]}
//   {"kind": "indicator", "set": "[0,1), {2}", "scale": 1}
//   {"kind": "g"} / {"kind": "g_tilde"}
//   {"kind": "composed", "inner": "g" | "g_tilde", "nodes": [[y, v], ...]}
//   {"kind": "triangular", "depth": N}
//   {"kind": "sum", "terms": [{"weight": w, "function": {...}}, ...]}
PiecewiseFunction parse_function_spec(const std::string& text, const Derivator& d,
                                      const std::string& source = "<input>");
PiecewiseFunction load_function(const std::string& path, const Derivator& d);

std::string read_file(const std::string& path);

// Structure of a derivator: atoms, constancy components, N_g+-, Hahn sets.
struct Analysis {
    DerivatorKind kind = DerivatorKind::PiecewiseAffine;
    double a = 0.0;
    double b = 0.0;
    bool admissible = true;
    std::vector<std::pair<double, double>> atoms;  // (t, J)
    IntervalSet constancy;
    std::vector<double> n_plus;
    std::vector<double> n_minus;
    HahnSets hahn;
    double total_variation = 0.0;
    double g_at_b = 0.0;
    // min of phi over the structural points, and whether each value was certified.
    double phi_min = 0.0;
    bool phi_certified = false;
};

Analysis analyze(const Derivator& d);

Json to_json(const Analysis& a);
Json to_json(const PointClass& p);
Json to_json(const DerivativeEstimate& e, double t);
Json to_json(const PhiEstimate& e, double t);
Json to_json(const FtcReport& r);
Json to_json(const WitnessReport& r);
Json to_json(const Approximation& a, double epsilon, const Boundary& boundary);

std::string to_text(const Analysis& a);
std::string to_text(const DerivativeEstimate& e, double t);
std::string to_text(const PhiEstimate& e, double t);
std::string to_text(const FtcReport& r);
std::string to_text(const WitnessReport& r);

std::string dump(const Json& j);

}  // namespace stieltjes
