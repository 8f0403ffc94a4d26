#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "stieltjes/corpus.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/io.hpp"

using namespace stieltjes;

namespace {

bool dyadic(double v, int denominator) { return v * denominator == std::round(v * denominator); }

std::string error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("corpus is seeded and respects its limits") {
    const auto a = make_corpus(50, 7);
    const auto b = make_corpus(50, 7);
    const auto c = make_corpus(50, 8);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].spec.breakpoints == b[i].spec.breakpoints);
        CHECK(a[i].spec.slopes == b[i].spec.slopes);
        CHECK(a[i].spec.jumps == b[i].spec.jumps);
        differs = differs || a[i].spec.slopes != c[i].spec.slopes;
        const auto& m = a[i];
        CHECK(m.d.admissible());
        CHECK(m.d.segments() <= 12);
        int atoms = 0;
        for (double j : m.spec.jumps) {
            atoms += j != 0.0;
            CHECK(dyadic(j, 8));
        }
        CHECK(atoms <= 4);
        for (double t : m.spec.breakpoints) CHECK(dyadic(t, 32));
        for (double s : m.spec.slopes) CHECK(dyadic(s, 4));
        // f is continuous: no jumps at its nodes
        for (const auto& [x, y] : m.f_nodes.nodes) {
            CHECK(m.f(x) == y);
            CHECK(m.f.jump_at(x) == 0.0);
        }
    }
    CHECK(differs);
}

TEST_CASE("random interval sets stay inside the domain") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const IntervalSet s = random_interval_set(rng, 0.0, 2.0);
        CHECK_FALSE(s.empty());
        for (const Interval& p : s.parts()) {
            CHECK(p.lo >= 0.0);
            CHECK(p.hi <= 2.0);
        }
    }
}

TEST_CASE("derivator spec parsing") {
    const std::string tent = R"({
  "kind": "piecewise_affine",
  "domain": [0, 2],
  "breakpoints": [0, 1, 2],
  "slopes": [1, -1]
})";
    const DerivatorSpec spec = parse_derivator_spec(tent, "tent.json");
    const Derivator d = Derivator::from_spec(spec);
    CHECK(d(1.5) == 0.5);
    CHECK(d.variation_at(2) == 2.0);
    const DerivatorSpec again = parse_derivator_spec(to_json(spec).dump(), "again");
    CHECK(again.breakpoints == spec.breakpoints);
    CHECK(again.slopes == spec.slopes);

    const DerivatorSpec osc = parse_derivator_spec(R"({"kind": "oscillator", "oscillator": {"N": 12}})");
    CHECK(osc.kind == DerivatorKind::Oscillator);
    CHECK(osc.oscillator_depth == 12);
}

TEST_CASE("spec errors name the line and field") {
    CHECK(error_of([] { parse_derivator_spec("{\"kind\": \"piecewise_affine\",\n\"breakpoints\": [0, 1],\n\"slopes\": [\"a\"]}", "s.json"); })
              .find("s.json:3: field 'slopes'") != std::string::npos);
    CHECK(error_of([] { parse_derivator_spec("{\"kind\": \"piecewise_affine\",\n\"breakpoints\": [0, 1]}", "s.json"); })
              .find("field 'slopes': missing") != std::string::npos);
    CHECK(error_of([] { parse_derivator_spec("{\"kind\": \"oscillator\",\n\"oscillator\": {\"N\": 4, \"r\": 0.5}}", "o.json"); })
              .find("o.json:2: field 'oscillator.r'") != std::string::npos);
    CHECK(error_of([] { parse_derivator_spec("{\"kind\": \"piecewise_affine\",\n\"domain\": [0, 3],\n\"breakpoints\": [0, 1]}", "d.json"); })
              .find("d.json:2: field 'domain'") != std::string::npos);
    CHECK(error_of([] { parse_derivator_spec("{\n\"kind\": \"piecewise_affine\",\n\"breakpoints\": [0, 1,\n}", "j.json"); })
              .find("j.json:4: invalid JSON") != std::string::npos);
    CHECK(error_of([] { parse_derivator_spec("{\"kind\": \"piecewise_affine\",\n\"breakpoints\": [0, 2, 1],\n\"slopes\": [1, 1]}", "b.json"); })
              .find("b.json:2: field 'breakpoints'") != std::string::npos);
    try {
        parse_derivator_spec(R"({"kind": "piecewise_affine", "breakpoints": [0, 1, 2], "slopes": [1, 0]})");
        FAIL("flat last segment accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonAdmissibleEndpoint);
    }
}

TEST_CASE("function spec kinds") {
    const Derivator tent = Derivator::piecewise({0, 1, 2}, {1, -1});
    CHECK(parse_function_spec(R"({"kind": "g_tilde"})", tent)(1.5) == 1.5);
    CHECK(parse_function_spec(R"({"kind": "g"})", tent)(1.5) == 0.5);
    CHECK(parse_function_spec(R"({"kind": "constant", "value": 3})", tent)(0.2) == 3.0);
    CHECK(parse_function_spec(R"({"kind": "polynomial", "coeffs": [1, 0, 2]})", tent)(2) == 9.0);
    CHECK(parse_function_spec(R"({"kind": "piecewise_affine", "nodes": [[0, 0], [2, 1]]})", tent)(1) == 0.5);
    const auto ind = parse_function_spec(R"js({"kind": "indicator", "set": "[0,1)", "scale": -2})js", tent);
    CHECK(ind(0.5) == -2.0);
    CHECK(ind(1.0) == 0.0);
    const auto comp = parse_function_spec(R"({"kind": "composed", "inner": "g_tilde", "nodes": [[0, 0], [2, 4]]})", tent);
    CHECK(comp(1.5) == 3.0);
    const auto sum = parse_function_spec(
        R"({"kind": "sum", "terms": [{"weight": 2, "function": {"kind": "g"}}, {"function": {"kind": "constant", "value": 1}}]})",
        tent);
    CHECK(sum(0.5) == 2.0);
    CHECK(error_of([&] { parse_function_spec(R"({"kind": "composed", "inner": "g", "nodes": [[0, 0]]})", tent, "c.fn"); })
              .find("field 'inner'") != std::string::npos);
    CHECK(error_of([&] { parse_function_spec(R"({"kind": "spline"})", tent, "u.fn"); })
              .find("unknown function kind") != std::string::npos);
    CHECK(error_of([&] { parse_function_spec(R"({"kind": "indicator", "set": "[0,"})", tent, "i.fn"); })
              .find("i.fn:1: field 'kind'") != std::string::npos);
}

TEST_CASE("analysis of the tent and the plateau") {
    const Analysis tent = analyze(Derivator::piecewise({0, 1, 2}, {1, -1}));
    CHECK(tent.atoms.empty());
    CHECK(tent.constancy.empty());
    CHECK(tent.hahn.positive_part.to_string() == "[0,1]");
    CHECK(tent.hahn.negative_part.to_string() == "(1,2]");
    const std::string text = to_text(tent);
    CHECK(text.find("D_g = ∅") != std::string::npos);
    CHECK(text.find("A_g- = (1,2]") != std::string::npos);

    const Analysis plateau = analyze(Derivator::piecewise({0, 1, 2, 3}, {1, 0, 1}));
    CHECK(plateau.constancy.to_string() == "(1,2)");
    CHECK(plateau.n_minus == std::vector<double>{1.0});
    CHECK(plateau.n_plus == std::vector<double>{2.0});
    CHECK(plateau.phi_certified);
    CHECK(plateau.phi_min == 1.0);

    const Analysis osc = analyze(Derivator::oscillator(20));
    CHECK_FALSE(osc.phi_certified);
    CHECK(osc.phi_min < 0.05);
}

TEST_CASE("derivative report text") {
    const Derivator tent = Derivator::piecewise({0, 1, 2}, {1, -1});
    const auto e = g_derivative(PiecewiseFunction::variation(tent), tent, 1.0);
    CHECK(to_text(e, 1.0) == "not g-differentiable: left=1 right=-1\n");
    const Json j = to_json(e, 1.0);
    CHECK(j["exists"] == false);
    CHECK(j["value"].is_null());
}
