#include "doctest.h"

#include "stieltjes/derivator.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/oscillator_shape.hpp"

using namespace stieltjes;

namespace {

Derivator tent() { return Derivator::piecewise({0, 1, 2}, {1, -1}); }

}  // namespace

TEST_CASE("piecewise evaluation is left-continuous at atoms") {
    Derivator d = Derivator::piecewise({0, 0.5, 1}, {1, 1}, {0.5, 0.5, 0});
    CHECK(d(0) == 0.0);
    CHECK(d.right_limit(0) == 0.5);
    CHECK(d(0.5) == 1.0);
    CHECK(d.right_limit(0.5) == 1.5);
    CHECK(d(1) == 2.0);
    CHECK(d.jump(0.5) == 0.5);
    CHECK(d.variation_at(1) == 2.0);
}

TEST_CASE("tent variation and distance") {
    Derivator d = tent();
    CHECK(d(1.5) == doctest::Approx(0.5));
    CHECK(d.variation_at(2) == 2.0);
    CHECK(d.g_distance(0.5, 1.5, DistanceKind::Variation) == doctest::Approx(1.0));
    CHECK(d.g_distance(0.5, 1.5, DistanceKind::Raw) == doctest::Approx(0.0));
    CHECK_FALSE(d.nondecreasing());
    CHECK(d.negated()(1) == -1.0);
}

TEST_CASE("constancy components and point classes") {
    Derivator d = Derivator::piecewise({0, 1, 2, 3}, {1, 0, 1});
    REQUIRE(d.constancy_components().size() == 1);
    CHECK(d.constancy_components()[0].lo == 1.0);
    CHECK(d.constancy_components()[0].hi == 2.0);
    CHECK(d.classify_point(1.5).kind == PointKind::ConstancyInterior);
    CHECK(d.classify_point(1.5).t_star == 2.0);
    CHECK(d.classify_point(2).kind == PointKind::NPlus);
    CHECK(d.classify_point(1).kind == PointKind::NMinus);
    CHECK(d.classify_point(0).kind == PointKind::LeftEndpoint);
    CHECK(d.classify_point(3).kind == PointKind::RightEndpoint);
    CHECK(d.classify_point(0.3).kind == PointKind::Regular);
}

TEST_CASE("endpoint admissibility") {
    CHECK_THROWS_AS(Derivator::piecewise({0, 1, 2}, {0, 1}), Error);
    CHECK_NOTHROW(Derivator::piecewise({0, 1, 2}, {0, 1}, {1, 0, 0}));
    CHECK_THROWS_AS(Derivator::piecewise({0, 1, 2}, {1, 0}), Error);
    try {
        Derivator::piecewise({0, 1, 2}, {1, 1}, {0, 0, 0.5});
        FAIL("jump at b accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonAdmissibleEndpoint);
    }
    CHECK_FALSE(Derivator::piecewise_relaxed({0, 1, 2}, {1, 0}).admissible());
}

TEST_CASE("out of domain and right limit at b") {
    Derivator d = tent();
    CHECK_THROWS_AS(d(-0.1), Error);
    CHECK_THROWS_AS(d.evaluate(2, Side::RightLimit), Error);
}

TEST_CASE("oscillator closed forms") {
    CHECK(oscillator::x(1) == 1.0);
    CHECK(oscillator::x(2) == doctest::Approx(2.0 / 3));
    CHECK(oscillator::x(3) == doctest::Approx(1.0 / 3));
    CHECK(oscillator::x(4) == doctest::Approx(2.0 / 9));
    CHECK(oscillator::x(7) == doctest::Approx(1.0 / 18));
    CHECK(oscillator::x(10) == doctest::Approx(1.0 / 36));
    for (long n = 1; n < 400; ++n) {
        const double mid = 0.5 * (oscillator::x(n) + oscillator::x(n + 1));
        CHECK(oscillator::locate(mid) == n);
    }
    Derivator g = Derivator::oscillator(6);
    CHECK(g(0) == 0.0);
    CHECK(g(1) == doctest::Approx(0.0));
    CHECK(g(oscillator::x(3)) == 0.0);
    CHECK(g(oscillator::x(2)) == doctest::Approx(1.0 / 3));
    // value below the represented segments stays exact
    CHECK(g(oscillator::x(41)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g.variation_at(0.25) == doctest::Approx(0.25));
}
