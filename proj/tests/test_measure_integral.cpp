#include "doctest.h"

#include <cmath>

#include "stieltjes/errors.hpp"
#include "stieltjes/integral.hpp"
#include "stieltjes/measure.hpp"

using namespace stieltjes;

TEST_CASE("measure closures pick up atoms") {
    Derivator d = Derivator::piecewise({0, 0.5, 1}, {1, 1}, {0.5, 0.5, 0});
    CHECK(measure_of(d, Interval::half_open(0, 0.5), MeasureKind::Signed) == 1.0);
    CHECK(measure_of(d, Interval{0, 0.5, false, false}, MeasureKind::Signed) == 0.5);
    CHECK(measure_of(d, Interval::point(0.5), MeasureKind::Signed) == 0.5);
    CHECK(measure_of(d, Interval{0, 1, true, false}, MeasureKind::Total) == 2.0);
}

TEST_CASE("tent Hahn and Jordan decomposition") {
    Derivator d = Derivator::piecewise({0, 1, 2}, {1, -1});
    HahnSets h = hahn_decomposition(d);
    CHECK(h.positive_part == parse_interval_set("[0,1]"));
    CHECK(h.negative_part == parse_interval_set("(1,2]"));
    CHECK(measure_of(d, h.positive_part, MeasureKind::Signed) == 1.0);
    CHECK(measure_of(d, h.negative_part, MeasureKind::Signed) == -1.0);
    auto [g1, g2] = jordan_parts(d);
    for (double t : {0.0, 0.25, 1.0, 1.5, 2.0}) CHECK(g1(t) - g2(t) == doctest::Approx(d(t) - d(0)));
    CHECK(g1(2) == 1.0);
    CHECK(g2(2) == 1.0);
    CHECK(measure_of(d, IntervalSet::half_open(0, 2), MeasureKind::Positive) == 1.0);
    CHECK(measure_of(d, IntervalSet::half_open(0, 2), MeasureKind::Negative) == 1.0);
}

TEST_CASE("oscillator has no Jordan parts") {
    CHECK_THROWS_AS(jordan_parts(Derivator::oscillator(4)), Error);
}

TEST_CASE("integral of polynomials matches closed forms") {
    Derivator d = Derivator::piecewise({0, 1, 2}, {1, -1});
    // int t^2 d(tent) over [0,2) = 1/3 - 7/3
    auto f = PiecewiseFunction::polynomial({0, 0, 1});
    CHECK(integrate(f, d, Interval::half_open(0, 2)) == doctest::Approx(-2.0));
    CHECK(integrate(f, d, Interval::half_open(0, 2), MeasureKind::Total) == doctest::Approx(8.0 / 3));
}

TEST_CASE("atoms weighted by f at the atom") {
    Derivator d = Derivator::piecewise({0, 0.5, 1}, {0, 1}, {1, 2, 0});
    auto f = PiecewiseFunction::polynomial({1, 1});
    CHECK(integrate(f, d, Interval::half_open(0, 1)) == doctest::Approx(1.0 + 2 * 1.5 + 0.875));
    CHECK(integrate(f, d, Interval{0, 1, false, false}) == doctest::Approx(3.875));
}

TEST_CASE("oracle sums approach the exact integral") {
    Derivator d = Derivator::piecewise({0, 0.5, 1}, {1, -0.5}, {0.25, 0.5, 0});
    auto f = PiecewiseFunction::affine_pieces({0, 0.25, 1}, {{0.5, 1}, {0.75, -2}});
    const double exact = integrate(f, d, Interval::half_open(0, 1));
    double prev = std::abs(rs_refinement_oracle(f, d, 0, 1, 6) - exact);
    for (int k = 8; k <= 16; k += 2) {
        const double err = std::abs(rs_refinement_oracle(f, d, 0, 1, k) - exact);
        CHECK(err <= prev + 1e-15);
        prev = err;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("primitive jumps by f times the atom") {
    Derivator d = Derivator::piecewise({0, 0.5, 1}, {1, 1}, {0, 0.5, 0});
    auto f = PiecewiseFunction::polynomial({2});
    Primitive F(f, d);
    CHECK(F(0) == 0.0);
    CHECK(F(0.5) == doctest::Approx(1.0));
    CHECK(F.jump_at(0.5) == doctest::Approx(1.0));
    CHECK(F.right_limit(0.5) == doctest::Approx(2.0));
    CHECK(F(1) == doctest::Approx(3.0));
}
