#include <doctest.h>

#include <cmath>
#include <random>

#include "g2forge/scalar_expr.hpp"

using namespace g2forge;

namespace {

ScalarExpr random_expr(std::mt19937& rng, const std::vector<Rat>& bases) {
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> rnum(-3, 3);
    std::uniform_int_distribution<int> rden(1, 5);
    std::uniform_int_distribution<std::size_t> base_pick(0, bases.size() - 1);
    ScalarExpr x;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        int c = coeff(rng);
        if (c == 0) c = 1;
        Rat r(rnum(rng), rden(rng));
        Rat a(coeff(rng), 2);
        x += ScalarExpr::term(QSqrt6(Rat(c)), QSqrt6(bases[base_pick(rng)]), r, QSqrt6(a));
    }
    return x;
}

} // namespace

TEST_CASE("scalar terms merge and cancel") {
    ScalarExpr et = ScalarExpr::exponential(1, 1);
    ScalarExpr zero;
    CHECK((et + zero) == et);

    ScalarExpr p = ScalarExpr::power(1, 1, Rat(2, 5));
    CHECK((p + p.scaled(-1)).is_zero());

    ScalarExpr twice = et + et;
    CHECK(twice.size() == 1);
    CHECK(twice.eval(0.0) == doctest::Approx(2.0));
}

TEST_CASE("products add exponents and powers") {
    // (1+t)^{2/5} * (1+t)^{3/5} = (1+t)
    ScalarExpr a = ScalarExpr::power(1, 1, Rat(2, 5));
    ScalarExpr b = ScalarExpr::power(1, 1, Rat(3, 5));
    ScalarExpr ab = a * b;
    CHECK(ab == ScalarExpr::power(1, 1, Rat(1)));

    // e^{at} e^{bt} = e^{(a+b)t}
    ScalarExpr ea = ScalarExpr::exponential(1, Rat(3));
    ScalarExpr eb = ScalarExpr::exponential(1, Rat(-1));
    CHECK((ea * eb) == ScalarExpr::exponential(1, Rat(2)));

    // 2(1-t)^{1/5} * 3(1-t)^{1/5} = 6(1-t)^{2/5}
    ScalarExpr c = ScalarExpr::power(2, Rat(-1), Rat(1, 5));
    ScalarExpr d = ScalarExpr::power(3, Rat(-1), Rat(1, 5));
    CHECK((c * d) == ScalarExpr::power(6, Rat(-1), Rat(2, 5)));

    // distinct bases with nonzero powers are rejected
    ScalarExpr e = ScalarExpr::power(1, Rat(2), Rat(1, 2));
    CHECK_THROWS_AS(a * e, IncompatibleBase);
    // but a power times a pure exponential is fine
    CHECK_NOTHROW(a * ea);
}

TEST_CASE("ddt term rule") {
    // d/dt e^{-2mt} with m = -1 is 2 e^{2t}
    ScalarExpr x = ScalarExpr::exponential(1, Rat(2));
    CHECK(x.ddt() == ScalarExpr::exponential(2, Rat(2)));

    // d/dt (1+t)^{2/5} = (2/5)(1+t)^{-3/5}
    ScalarExpr p = ScalarExpr::power(1, 1, Rat(2, 5));
    CHECK(p.ddt() == ScalarExpr::power(QSqrt6(Rat(2, 5)), 1, Rat(-3, 5)));

    CHECK(ScalarExpr::constant(5).ddt().is_zero());
}

TEST_CASE("eval and domain errors") {
    // (1+t)^{2/5} at t = 1 is 2^{2/5}
    ScalarExpr p = ScalarExpr::power(1, 1, Rat(2, 5));
    CHECK(p.eval(1.0) == doctest::Approx(1.3195079107728942).epsilon(1e-12));

    CHECK(ScalarExpr::exponential(1, 0).eval(7.0) == doctest::Approx(1.0));

    // (1-t)^{1/2} at t = 2: negative base, non-integer exponent
    ScalarExpr bad = ScalarExpr::power(1, Rat(-1), Rat(1, 2));
    CHECK_THROWS_AS(bad.eval(2.0), DomainError);
}

TEST_CASE("eval is a ring homomorphism on random inputs") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ts(-0.4, 1.5);
    std::uniform_int_distribution<int> base_choice(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        // one power base per trial keeps the product defined
        std::vector<Rat> bases = {base_choice(rng) ? Rat(1) : Rat(1, 2)};
        ScalarExpr x = random_expr(rng, bases);
        ScalarExpr y = random_expr(rng, bases);
        double t = ts(rng);
        double lhs = (x * y).eval(t);
        double rhs = x.eval(t) * y.eval(t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK((x + y).eval(t) == doctest::Approx(x.eval(t) + y.eval(t)).epsilon(1e-12));
    }
}

TEST_CASE("finite differences confirm ddt at second order") {
    std::mt19937 rng(777);
    std::vector<Rat> bases = {Rat(1)};
    for (int trial = 0; trial < 50; ++trial) {
        ScalarExpr x = random_expr(rng, bases);
        ScalarExpr dx = x.ddt();
        double t = 0.3;
        auto err_at = [&](double h) {
            double fd = (x.eval(t + h) - x.eval(t - h)) / (2.0 * h);
            return std::abs(fd - dx.eval(t));
        };
        double e3 = err_at(1e-3);
        double e4 = err_at(1e-4);
        double scale = std::abs(dx.eval(t)) + 1.0;
        CHECK(e3 <= 1e-4 * scale);
        // second order: shrinking h by 10 shrinks the error by about 100
        if (e3 > 1e-11 * scale) CHECK(e4 <= e3 / 20.0);
    }
}

TEST_CASE("add and mul are associative and commutative on canonical forms") {
    std::mt19937 rng(99);
    std::vector<Rat> bases = {Rat(1)};
    for (int trial = 0; trial < 100; ++trial) {
        ScalarExpr x = random_expr(rng, bases);
        ScalarExpr y = random_expr(rng, bases);
        ScalarExpr z = random_expr(rng, bases);
        CHECK((x + y) == (y + x));
        CHECK(((x + y) + z) == (x + (y + z)));
        CHECK((x * y) == (y * x));
        CHECK(((x * y) * z) == (x * (y * z)));
        CHECK((x * (y + z)) == (x * y + x * z));
    }
}
