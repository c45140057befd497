#include <doctest.h>

#include <qtheta/errors.hpp>
#include <qtheta/qblocks.hpp>

#include "support.hpp"

using namespace qtheta;
using test::mono;
using test::poly;
using test::series;

namespace
{

Monomial xy(long long c, int q) { return mono(c, q, 1, 1); }

QSeries pf(const Monomial &m, long len, int step, int order) { return poch_finite(Param::mono(m), len, step, order); }

} // namespace

TEST_CASE("poch_finite examples")
{
    CHECK(pf(mono(1, 1), 2, 1, 5) == series({{0, "1"}, {1, "-1"}, {2, "-1"}, {3, "1"}}, 5));
    CHECK(pf(mono(1, 0, 1), 0, 1, 5) == series({{0, "1"}}, 5));
    CHECK(poch_finite(Param::pair_sqrt(mono(1, 0, 1)), 1, 1, 5) == series({{0, "1 - 1 * x^1"}}, 5));
}

TEST_CASE("poch_finite agrees with a naive product")
{
    test::Gen g(21);
    for (int i = 0; i < 40; ++i) {
        Monomial m = g.monomial(2, 0, 3);
        int step = g.range(1, 2);
        long len = g.range(0, 6);
        test::Naive p = test::naive_one();
        for (long j = 0; j < len; ++j) {
            p = test::naive_mul(p, test::naive_binomial(m, static_cast<int>(step * j)));
        }
        CHECK(pf(m, len, step, 12) == test::naive_to_series(p, 12));
    }
}

TEST_CASE("poch_infinite examples")
{
    QSeries a = poch_infinite(Monomial::var('x'), 1, 2);
    CHECK(a == series({{0, "1 - 1 * x^1"}, {1, "-1 * x^1 + 1 * x^2"}, {2, "-1 * x^1 + 1 * x^2"}}, 2));
    CHECK(poch_infinite(mono(1, 0), 1, 4).is_zero());
    QSeries e = poch_infinite(mono(1, 1), 1, 3);
    CHECK(qs_coeff(qs_mul(qs_mul(e, e), e), 1) == poly("-3"));
}

TEST_CASE("theta examples")
{
    Monomial x = Monomial::var('x');
    CHECK(theta_partial(x, 2) == series({{0, "1 - 1 * x^1"}, {1, "1 * x^2"}}, 2));
    QSeries t = theta_complete(x, 1);
    CHECK(t.at(0) == poly("1 - 1 * x^1"));
    CHECK(t.at(1) == poly("1 * x^2 - 1 * x^-1"));
}

TEST_CASE("theta_complete equals the triple product")
{
    Monomial x = Monomial::var('x');
    int n = 12;
    QSeries prod = qs_mul(qs_mul(poch_infinite(mono(1, 1), 1, n), poch_infinite(x, 1, n)),
                          poch_infinite(Monomial(Rational(1), 1, ExpVec{-1}), 1, n));
    CHECK(qs_diff_report(theta_complete(x, n), prod) == std::nullopt);
}

TEST_CASE("partial theta at x = -q matches the substituted series")
{
    int n = 10;
    QSeries direct = theta_partial(mono(-1, 1), n);
    // The x-degree at q^e is at most e/2 + 2.
    QSeries sub = qs_subst_var(theta_partial(Monomial::var('x'), 2 * n + 6), 'x', mono(-1, 1),
                               DegreeBound{Rational(1, 2), Rational(2)});
    CHECK(sub.order() >= n);
    CHECK(qs_diff_report(direct, sub) == std::nullopt);
}

TEST_CASE("gauss_binom examples")
{
    CHECK(gauss_binom(1, 1, 5) == series({{0, "1"}}, 5));
    CHECK(gauss_binom(2, 1, 5) == series({{0, "1"}, {1, "1"}}, 5));
    CHECK(gauss_binom(3, 1, 5) == series({{0, "1"}, {1, "1"}, {2, "1"}}, 5));
    CHECK(gauss_binom(4, 2, 5) == series({{0, "1"}, {1, "1"}, {2, "2"}, {3, "1"}, {4, "1"}}, 5));
    CHECK_THROWS_AS(gauss_binom(1, 2, 5), UsageError);
}

TEST_CASE("valuation_bound examples")
{
    SumSpec ct = complete_theta_spec(Monomial::var('x'));
    CHECK(valuation_bound(ct, -3) == 6);
    CHECK(valuation_bound(ct, 4) == 6);

    // sum (xy/q)_{2n} q^n / (q, x, y, xy)_n after folding: one j = 0 factor of xy/q.
    SumSpec s;
    s.power = mono(1, 1);
    s.factors = {num(xy(1, -1), {2, 0}), den(mono(1, 1), {1, 0}), den(xy(1, 0), {1, 0}, 1, {1, 0})};
    CHECK(valuation_bound(s, 3) == 2);
    CHECK(valuation_bound(s, 0) == 0);
}

TEST_CASE("sum_eval examples")
{
    SumSpec jac;
    jac.range = SumRange::from_one();
    jac.alternating = true;
    jac.quad = QuadExp::binom2();
    jac.weight = {-1, 2};
    QSeries s = sum_eval(jac, 3);
    CHECK(s == series({{0, "-1"}, {1, "3"}, {3, "-5"}}, 3));
    CHECK(s == sum_eval_serial(jac, 3));

    SumSpec bad = hypergeometric_spec({Param::mono(mono(1, 0, 1))}, {Param::mono(mono(1, 0, 0, 1))}, mono(1, 0, 1));
    CHECK(denominator_diagnostic(bad).has_value());
    CHECK_THROWS_AS(sum_eval(bad, 4), NonEvaluable);
}

TEST_CASE("divergent ranges are rejected")
{
    SumSpec s;
    s.range = SumRange::all_integers();
    s.power = mono(1, 1);
    CHECK_THROWS_AS(summation_indices(s, 5), DivergentBound);
}

TEST_CASE("hypergeometric examples")
{
    int n = 10;
    QSeries e = hypergeometric({}, {}, mono(1, 1), n);
    QSeries direct(n);
    for (int j = 0; j <= n; ++j) {
        direct = qs_add(direct, qs_mul(QSeries::monomial(LaurentPoly(Rational(1)), j, n), qs_invert(pf(mono(1, 1), j, 1, n), n)));
    }
    CHECK(qs_diff_report(e, direct) == std::nullopt);

    // (x)_inf sum q^n / (q, x)_n with the tail folded in is the partial theta function.
    SumSpec folded = hypergeometric_spec({}, {Param::mono(Monomial::var('x'))}, mono(1, 1));
    std::erase_if(folded.factors, [](const PochFactor &f) { return f.param.m.has_vars(); });
    folded.tails.push_back(TailFactor{Monomial::var('x'), {1, 0}, 1});
    QSeries lhs = qs_mul(poch_infinite(mono(1, 1), 1, n), sum_eval(folded, n));
    CHECK(qs_diff_report(lhs, theta_partial(Monomial::var('x'), n)) == std::nullopt);
}

TEST_CASE("sum_eval is independent of evaluation order")
{
    SumSpec ct = complete_theta_spec(mono(1, 0, 1, 0));
    ct.power = mono(1, 0, 1, -1);
    CHECK(sum_eval(ct, 30) == sum_eval_serial(ct, 30));
}

TEST_CASE("splitting law")
{
    test::Gen g(31);
    for (int i = 0; i < 20; ++i) {
        Monomial m = g.monomial(2, 0, 2);
        for (long n = 0; n <= 10; ++n) {
            int order = 60;
            QSeries lhs = pf(m, 2 * n, 1, order);
            QSeries rhs = qs_mul(pf(m, n, 2, order), pf(m.times_q(1), n, 2, order));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("pair law")
{
    test::Gen g(32);
    for (int i = 0; i < 20; ++i) {
        Monomial m = g.monomial(2, 0, 2);
        for (long n = 0; n <= 10; ++n) {
            CHECK(poch_finite(Param::pair_sqrt(m), n, 1, 40) == pf(m, n, 2, 40));
        }
    }
}

TEST_CASE("folding law")
{
    test::Gen g(33);
    for (int i = 0; i < 20; ++i) {
        Monomial m = g.monomial(2, 0, 2);
        for (long len = 0; len <= 6; ++len) {
            int order = 20;
            QSeries lhs = poch_infinite(m, 1, order);
            QSeries rhs = qs_mul(pf(m, len, 1, order), poch_infinite(m.times_q(static_cast<int>(len)), 1, order));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("difference lemma")
{
    // (xy/q^2)_{2n} (xy)_n - (xy/q)_{2n} (xy/q^2)_n = (xy/q) (xyq^n)_{n-2} (1-q^n)(1-q^(n-1)) (xy/q^2)_n (xy)_n
    int order = 200;
    for (long n = 2; n <= 8; ++n) {
        QSeries a = qs_mul(pf(xy(1, -2), 2 * n, 1, order), pf(xy(1, 0), n, 1, order));
        QSeries b = qs_mul(pf(xy(1, -1), 2 * n, 1, order), pf(xy(1, -2), n, 1, order));
        QSeries lhs = qs_sub(a, b);
        QSeries rhs = qs_mul(QSeries::monomial(poly("1 * x^1 * y^1"), -1, order), pf(xy(1, static_cast<int>(n)), n - 2, 1, order));
        rhs = qs_mul(rhs, pf(mono(1, static_cast<int>(n)), 1, 1, order));
        rhs = qs_mul(rhs, pf(mono(1, static_cast<int>(n - 1)), 1, 1, order));
        rhs = qs_mul(rhs, qs_mul(pf(xy(1, -2), n, 1, order), pf(xy(1, 0), n, 1, order)));
        CHECK(qs_diff_report(lhs, rhs) == std::nullopt);
        CHECK(lhs.valuation() < order - 100);
    }
}
