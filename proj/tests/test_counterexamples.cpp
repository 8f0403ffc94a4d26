#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "stieltjes/counterexamples.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/integral.hpp"
#include "stieltjes/oscillator_shape.hpp"

using namespace stieltjes;

TEST_CASE("golden sequence values") {
    const auto x = x_recursion(10);
    CHECK(x[1] == Rational(2, 3));
    CHECK(x[2] == Rational(1, 3));
    CHECK(x[3] == Rational(2, 9));
    CHECK(x[4] == Rational(1, 9));
    CHECK(x[5] == Rational(1, 12));
    CHECK(x[6] == Rational(1, 18));
    CHECK(x[7] == Rational(2, 45));
    CHECK(x[9] == Rational(1, 36));
    CHECK(example_sequences(8).x == Rational(2, 45));
    CHECK(example_sequences(2).alpha == Rational(1, 2));
    for (long n = 1; n <= 10; ++n) CHECK(x_closed_form(n) == x[n - 1]);
}

TEST_CASE("series partial sums") {
    CHECK(series_identity_check(1) == Rational(1, 9));
    for (long N : {1L, 5L, 50L}) CHECK(series_identity_check(N) == Rational(1, 6) - Rational(1, 3 * (N + 1) * (N + 2)));
}

TEST_CASE("psi along the sequence") {
    Derivator g = build_oscillator(20);
    for (long n = 1; n <= 10; ++n) {
        CHECK(psi(g, oscillator::x(2 * n)) == doctest::Approx(n == 1 ? 0.5 : 1.0 / n).epsilon(1e-12));
        CHECK(std::abs(psi(g, oscillator::x(2 * n + 1))) < 1e-12);
    }
}

TEST_CASE("closed-form primitive") {
    CHECK(F_closed_form(1.0) == doctest::Approx(0.5));
    CHECK(F_closed_form(2.0 / 3) == doctest::Approx(0.5 * std::pow(2.0 / 3, 4.0 / 3)));
    CHECK(F_closed_form(2.0 / 3) == doctest::Approx(0.29123).epsilon(1e-4));
    CHECK_THROWS_AS(F_closed_form(0.0), Error);
    const int N = 10000;
    const PiecewiseFunction absf = PiecewiseFunction::abs(triangular_f(N));
    const Derivator lebesgue = Derivator::piecewise({0, 1}, {1});
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> u(0.001, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double t = u(rng);
        const IntegralResult r = integrate_with_bound(absf, lebesgue, IntervalSet::half_open(0, t));
        CHECK(std::abs(F_closed_form(t) - r.value) < 1e-9);
    }
}

TEST_CASE("quotient report") {
    CHECK(Q_at(2.0 / 3).value() == doctest::Approx(std::cbrt(2.0 / 3)));
    CHECK_FALSE(Q_at(1.0 / 3));
    const WitnessReport rep = oscillator_report(64);
    for (const auto& r : rep.rows) CHECK(r.quotient == doctest::Approx(r.reference).epsilon(1e-12));
    CHECK(rep.ratio_m == 8);
    CHECK(rep.growth_ratio > 1.8);
    CHECK_FALSE(rep.divergent);
}

TEST_CASE("necessity witness") {
    auto [f, rep] = necessity_witness(build_oscillator(300), 0.0, oscillator_approach(256));
    for (const auto& r : rep.rows) CHECK(r.quotient >= r.reference);
    CHECK(rep.growth_exponent == doctest::Approx(0.5).epsilon(0.1));
    CHECK(f(0.0) == 0.0);
    try {
        necessity_witness(Derivator::piecewise({0, 1, 2}, {1, -1}), 1.0, {"", {2.0, 1.5, 1.25}});
        FAIL("tent accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PhiNotZero);
    }
    CHECK_THROWS_AS(necessity_witness(Derivator::piecewise({0, 1}, {1}), 0.0, {"", {1.0, 0.5, 0.25}}), Error);
    try {
        necessity_witness(build_oscillator(40), 0.0, {"", {0.5, 0.6, 0.1}});
        FAIL("increasing sequence accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SequenceUnsuitable);
    }
}

TEST_CASE("figure data") {
    const auto dir = std::filesystem::temp_directory_path() / "stieltjes_fig_test";
    const auto paths = write_figure_data(dir.string(), 20, 11);
    REQUIRE(paths.size() == 3);
    std::ifstream in(paths[0]);
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "t,g,g_tilde,f,F,Q");
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 11);
    std::filesystem::remove_all(dir);
}
