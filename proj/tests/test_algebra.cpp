#include <random>

#include "coxpoly/algebraic.hpp"
#include "coxpoly/expr.hpp"
#include "doctest.h"

using namespace coxpoly;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
    std::vector<Integer> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

AlgebraicReal sqrt5() { return AlgebraicReal(5).sqrt_nonneg(); }

}  // namespace

TEST_CASE("rationals embed with linear minimal polynomials") {
    AlgebraicReal zero = AlgebraicReal::from_rational(0);
    CHECK(zero.minpoly() == ints({0, 1}));
    auto [lo, hi] = zero.isolating_interval();
    CHECK(lo == 0);
    CHECK(hi == 0);
    CHECK(AlgebraicReal::from_rational(Rational(1, 2)).minpoly() == ints({-1, 2}));
    CHECK(AlgebraicReal::from_rational(-3).minpoly() == ints({3, 1}));
}

TEST_CASE("cos(pi/m) values") {
    CHECK(AlgebraicReal::cos_pi_over(2).is_zero());
    CHECK(AlgebraicReal::cos_pi_over(3) == AlgebraicReal(Rational(1, 2)));
    AlgebraicReal c5 = AlgebraicReal::cos_pi_over(5);
    CHECK(c5.minpoly() == ints({-1, -2, 4}));
    auto [lo, hi] = c5.isolating_interval();
    CHECK(lo >= Rational(8, 10) - Rational(1, 100));
    CHECK(hi <= Rational(82, 100));
    CHECK(c5 == (AlgebraicReal(1) + sqrt5()) / AlgebraicReal(4));
    CHECK_THROWS_AS(AlgebraicReal::cos_pi_over(1), std::domain_error);
}

TEST_CASE("ring operations and square roots") {
    AlgebraicReal r2 = AlgebraicReal(2).sqrt_nonneg();
    CHECK(r2.minpoly() == ints({-2, 0, 1}));
    auto [lo, hi] = r2.isolating_interval();
    CHECK(lo >= 1);
    CHECK(hi <= 2);
    AlgebraicReal s5 = (AlgebraicReal(1) + sqrt5()) / AlgebraicReal(4) * AlgebraicReal(4) - AlgebraicReal(1);
    CHECK(s5 == sqrt5());
    CHECK((s5 + AlgebraicReal(2)).minpoly() == ints({-1, -4, 1}));
    AlgebraicReal c7 = AlgebraicReal::cos_pi_over(7);
    CHECK((c7 + (-c7)).is_zero());
    CHECK_THROWS_AS(AlgebraicReal(-1).sqrt_nonneg(), std::domain_error);
    CHECK_THROWS_AS(AlgebraicReal(1) / AlgebraicReal(0), std::domain_error);
}

TEST_CASE("certified signs") {
    CHECK(AlgebraicReal(0).sign() == 0);
    AlgebraicReal c7 = AlgebraicReal::cos_pi_over(7), c8 = AlgebraicReal::cos_pi_over(8);
    CHECK((c7 - c8).sign() == -1);
    CHECK((AlgebraicReal(Rational(3, 4)) - c7 * c7).sign() == -1);
    // sqrt(2) * sqrt(2) - 2 vanishes exactly even through a square-root tower.
    AlgebraicReal t = (AlgebraicReal(3) + c7).sqrt_nonneg();
    CHECK((t * t - (AlgebraicReal(3) + c7)).sign() == 0);
}

TEST_CASE("solve_quadratic") {
    auto r = solve_quadratic(1, 0, -2);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == -AlgebraicReal(2).sqrt_nonneg());
    CHECK(r[1] == AlgebraicReal(2).sqrt_nonneg());
    CHECK(solve_quadratic(1, 0, 1).empty());
    AlgebraicReal k = (sqrt5() - AlgebraicReal(2)) / AlgebraicReal(32);
    AlgebraicReal d0 = sqrt5() + AlgebraicReal(2);
    auto dbl = solve_quadratic(k, k * AlgebraicReal(-2) * d0, k * d0 * d0);
    REQUIRE(dbl.size() == 2);
    CHECK(dbl[0] == d0);
    CHECK(dbl[1] == d0);
    auto lin = solve_quadratic(0, 2, -1);
    REQUIRE(lin.size() == 1);
    CHECK(lin[0] == AlgebraicReal(Rational(1, 2)));
    CHECK_THROWS_AS(solve_quadratic(0, 0, 0), std::domain_error);
}

TEST_CASE("recognize_cos_pi") {
    CHECK(recognize_cos_pi(AlgebraicReal(Rational(1, 2)), 10) == 3);
    CHECK(recognize_cos_pi((AlgebraicReal(1) + sqrt5()) / AlgebraicReal(4), 10) == 5);
    for (int mmax : {2, 10, 200}) CHECK_FALSE(recognize_cos_pi(AlgebraicReal(Rational(3, 5)), mmax).has_value());
    for (int m = 2; m <= 200; ++m) CHECK(recognize_cos_pi(AlgebraicReal::cos_pi_over(m), 200) == m);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(7);
    auto sample = [&]() {
        static const int ms[] = {2, 3, 4, 5, 8, 10};
        std::uniform_int_distribution<int> m(0, 5), q(-5, 5), d(1, 4);
        AlgebraicReal v = AlgebraicReal::cos_pi_over(ms[m(rng)]) * make_q(q(rng), d(rng));
        if (rng() % 3 == 0) v += AlgebraicReal(ms[m(rng)] + 1).sqrt_nonneg();
        return v + make_q(q(rng), d(rng));
    };
    for (int i = 0; i < 40; ++i) {
        AlgebraicReal a = sample(), b = sample(), c = sample();
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK((a * (b + c)) == (a * b + a * c));
        AlgebraicReal sq = (a * a).sqrt_nonneg();
        CHECK(sq * sq == a * a);
        int expect = a.to_double() < b.to_double() ? -1 : (a.to_double() > b.to_double() ? 1 : 0);
        CHECK((a - b).sign() == expect);
        auto roots = solve_quadratic(a, b, c);
        for (auto& r : roots) CHECK((a * r * r + b * r + c).sign() == 0);
    }
}

TEST_CASE("expression grammar") {
    CHECK(parse_expr("(1 + sqrt(5))/4") == AlgebraicReal::cos_pi_over(5));
    CHECK(parse_expr("sqrt(2)*cospi(8)") == AlgebraicReal(2).sqrt_nonneg() * AlgebraicReal::cos_pi_over(8));
    CHECK(parse_expr("-3/4") == AlgebraicReal(Rational(-3, 4)));
    CHECK_THROWS_AS(parse_expr("1 +"), ParseError);
    CHECK_THROWS_AS(parse_expr("sqrt(-1)"), ParseError);
    CHECK_THROWS_AS(parse_expr("cospi(1)"), ParseError);
    for (const char* e : {"sqrt(3 + cospi(7))", "(1+sqrt(5))/2", "sqrt(2)*(sqrt(5)+1)/4", "sqrt(15*(5+sqrt(5)))/10"}) {
        AlgebraicReal v = parse_expr(e);
        CHECK(parse_expr(v.to_expr()) == v);
    }
}
