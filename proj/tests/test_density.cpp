#include "doctest.h"

#include <cmath>

#include "stieltjes/continuity.hpp"
#include "stieltjes/density.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/integral.hpp"

using namespace stieltjes;

namespace {

Derivator identity() { return Derivator::piecewise({0, 1}, {1}); }
Derivator two_atom() { return Derivator::piecewise({0, 0.5, 1}, {1, 1}, {0.5, 0.5, 0}); }
Derivator plateau() { return Derivator::piecewise({0, 1, 2, 3}, {1, 0, 1}); }
Derivator staircase() { return Derivator::piecewise({0, 0.5, 1, 2}, {0, 0, 1}, {0.5, 0.5, 0, 0}); }

PiecewiseFunction chi(double x, double y) { return PiecewiseFunction::indicator(IntervalSet::half_open(x, y)); }

void check_h(const Approximation& ap, const PiecewiseFunction& f, const Derivator& d, double eps) {
    CHECK(ap.l1g_error < eps);
    CHECK(l1g_norm(f - ap.h, d, IntervalSet::half_open(ap.a, ap.b)) == doctest::Approx(ap.l1g_error));
    std::vector<double> sweep = d.knots(ap.a, ap.b);
    for (int i = 0; i <= 16; ++i) sweep.push_back(ap.a + (ap.b - ap.a) * i / 16.0);
    for (const double t : sweep) {
        CHECK_MESSAGE(check_g_continuity(ap.h, d, t).pass, "t=" << t);
        CHECK(ap.h(t) >= 0.0);
        CHECK(ap.h(t) <= 1.0);
    }
}

}  // namespace

TEST_CASE("g dagger") {
    CHECK(g_dagger(identity(), 0.5) == 0.5);
    Derivator unit_jump = Derivator::piecewise({0, 1, 2}, {1, 1}, {0, 1, 0});
    CHECK(g_dagger(unit_jump, 1.5) == 1.0);
    Derivator flat = Derivator::piecewise_relaxed({0, 1, 2}, {1, 0});
    CHECK(g_dagger(flat, 1.0) == 1.0);
    CHECK_THROWS_AS(g_dagger(Derivator::piecewise({0, 1, 2}, {1, -1}), 0.5), Error);
    CHECK_THROWS_AS(g_dagger(identity(), 2.0), Error);
    for (double y = 0; y <= 2.0; y += 0.125) {
        const double t = g_dagger(unit_jump, y);
        CHECK(unit_jump(t) <= y);
        CHECK(y <= unit_jump.right_limit(t) + (t == 2.0 ? 0.0 : 0.0));
    }
}

TEST_CASE("interpolant clamps outside the nodes") {
    auto p = pa_interpolant({{{0, 0}, {1, 1}}});
    CHECK(p(0.5) == 0.5);
    CHECK(p(-3) == 0.0);
    CHECK(p(7) == 1.0);
    CHECK_THROWS_AS(pa_interpolant({{{0, 0}, {0, 1}}}), Error);
}

TEST_CASE("free approximation of an indicator") {
    const auto f = chi(0.25, 0.75);
    for (const double eps : {0.1, 0.01, 0.001}) {
        for (const Derivator& d : {identity(), two_atom()}) check_h(approximate_in_L1g(f, d, eps), f, d, eps);
        Derivator p = plateau();
        const auto fp = chi(0.5, 2.5);
        check_h(approximate_in_L1g(fp, p, eps), fp, p, eps);
    }
}

TEST_CASE("indicator of a null set needs nothing") {
    const auto f = chi(1.25, 1.75);
    auto ap = approximate_in_L1g(f, plateau(), 0.01);
    CHECK(ap.l1g_error == 0.0);
    CHECK(ap.h(1.5) == 0.0);
}

TEST_CASE("clamped boundary values") {
    const auto f = chi(0.25, 0.75);
    for (const double eps : {0.1, 0.01, 0.001}) {
        auto ap = approximate_in_L1g(f, identity(), eps, Boundary::clamped(1, 0.5));
        check_h(ap, f, identity(), eps);
        CHECK(ap.h(0) == 1.0);
        CHECK(ap.h(1) == 0.5);

        ApproxOptions sub;
        sub.subinterval = {{0.25, 1.0}};
        ap = approximate_in_L1g(f, two_atom(), eps, Boundary::clamped(0, 1), sub);
        check_h(ap, f, two_atom(), eps);
        CHECK(ap.h(0.25) == 0.0);
        CHECK(ap.h(1) == 1.0);

        const auto fp = chi(0.5, 2.5);
        ap = approximate_in_L1g(fp, plateau(), eps, Boundary::clamped(0, 0));
        check_h(ap, fp, plateau(), eps);
        CHECK(ap.h(3) == 0.0);

        sub.subinterval = {{0.0, 1.5}};
        ap = approximate_in_L1g(fp, plateau(), eps, Boundary::clamped(0, 1), sub);
        CHECK(ap.ell == 1.0);
        check_h(ap, fp, plateau(), eps);
        CHECK(ap.h(1.5) == 1.0);
    }
}

TEST_CASE("clamped rejects its hypotheses") {
    const auto f = chi(0.25, 0.75);
    CHECK_THROWS_AS(approximate_in_L1g(f, two_atom(), 0.1, Boundary::clamped(0, 0)), Error);
    ApproxOptions sub;
    sub.subinterval = {{1.25, 1.75}};
    try {
        approximate_in_L1g(f, plateau(), 0.1, Boundary::clamped(0, 0), sub);
        FAIL("accepted g(a) = g(b)");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BoundaryHypothesisViolated);
    }
}

TEST_CASE("jump start") {
    const auto f = chi(0.25, 0.75);
    for (const double eps : {0.1, 0.01, 0.001}) {
        auto ap = approximate_in_L1g(f, two_atom(), eps, Boundary::jump_start(1));
        check_h(ap, f, two_atom(), eps);
        CHECK(ap.h(0) == f(0));
        CHECK(ap.h(1) == 1.0);
        CHECK(ap.construction == "jump-start, a* < l");
    }
    ApproxOptions sub;
    sub.subinterval = {{0.0, 1.0}};
    const auto fs = chi(0.5, 1.0);
    auto ap = approximate_in_L1g(fs, staircase(), 0.001, Boundary::jump_start(0), sub);
    CHECK(ap.construction == "jump-start, l = a*");
    CHECK(ap.l1g_error == 0.0);
    CHECK(ap.h(0) == 0.0);
    CHECK(ap.h(1) == 0.0);
    CHECK_THROWS_AS(approximate_in_L1g(f, identity(), 0.1, Boundary::jump_start(0)), Error);
}

TEST_CASE("truncate geometric atoms") {
    std::vector<double> t{0}, s, j{0};
    for (int n = 1; n <= 53; ++n) {
        t.push_back(1 - std::ldexp(1.0, -n));
        j.push_back(std::ldexp(1.0, -n));
        s.push_back(1);
    }
    j.back() = std::ldexp(1.0, -52);  // atoms past the last representable point, lumped
    t.push_back(1);
    s.push_back(1);
    j.push_back(0);
    Derivator d = Derivator::piecewise(t, s, j);
    Truncation tr = truncate_jumps(d, 0.1);
    CHECK(tr.kept.size() == 4);
    CHECK(tr.tv_distance == 0.0625);
    for (double x = 0; x < 1; x += 1.0 / 64)
        for (double y = x + 1.0 / 64; y <= 1; y += 1.0 / 64)
            CHECK(std::abs((d(y) - d(x)) - (tr.g(y) - tr.g(x))) <= 0.1);
}

TEST_CASE("truncation leaves needed atoms alone") {
    Derivator d = Derivator::piecewise({0, 0.5, 1}, {1, 1}, {0.5, 0.25, 0});
    Truncation tr = truncate_jumps(d, 0.2);
    CHECK(tr.tv_distance == 0.0);
    CHECK(tr.removed.empty());
    tr = truncate_jumps(Derivator::piecewise({0, 1}, {1}), 0.1);
    CHECK(tr.tv_distance == 0.0);
}
