#include <doctest.h>

#include <qtheta/errors.hpp>
#include <qtheta/qblocks.hpp>
#include <qtheta/qseries.hpp>

#include "support.hpp"

using namespace qtheta;
using test::mono;
using test::poly;
using test::series;

TEST_CASE("qs_add examples")
{
    CHECK(qs_add(series({{0, "1"}, {1, "-1"}}, 4), series({{1, "1"}}, 4)) == series({{0, "1"}}, 4));
    QSeries a = series({{0, "1 * x^1"}, {2, "3"}}, 5);
    CHECK(qs_add(a, QSeries(3)) == a.truncated(3));
    CHECK(qs_add(series({{0, "1"}, {1, "1 * x^1"}}, 3), series({{1, "-1 * x^1"}, {2, "1"}}, 3))
          == series({{0, "1"}, {2, "1"}}, 3));
    CHECK_THROWS_AS(qs_add(QSeries(3, kMaxVars, 1), QSeries(3, kMaxVars, 2)), UsageError);
}

TEST_CASE("qs_mul examples")
{
    CHECK(qs_mul(series({{0, "1"}, {1, "-1"}}, 5), series({{0, "1"}, {1, "1"}}, 5))
          == series({{0, "1"}, {2, "-1"}}, 5));
    CHECK(qs_mul(series({{-1, "1 * x^1"}}, 4), series({{1, "1 * x^-1"}}, 4)) == series({{0, "1"}}, 3));
    QSeries one_minus_q = series({{0, "1"}, {1, "-1"}}, 1);
    CHECK(qs_mul(qs_mul(one_minus_q, one_minus_q), one_minus_q) == series({{0, "1"}, {1, "-3"}}, 1));
}

TEST_CASE("qs_mul matches the serial reference and a naive oracle")
{
    test::Gen g(5);
    for (int i = 0; i < 30; ++i) {
        QSeries a = g.qseries(g.range(-2, 1), 6), b = g.qseries(g.range(-2, 1), 6);
        QSeries p = qs_mul(a, b);
        CHECK(p == qs_mul_serial(a, b));
        for (int e = p.lo(); e <= p.order(); ++e) {
            LaurentPoly naive;
            for (int i2 = a.lo(); i2 <= a.order(); ++i2) {
                naive += a.at(i2) * b.at(e - i2);
            }
            CHECK(p.at(e) == naive);
        }
    }
}

TEST_CASE("qs_invert examples")
{
    QSeries inv = qs_invert(series({{0, "1"}, {1, "-1"}}, 3), 3);
    CHECK(inv == series({{0, "1"}, {1, "1"}, {2, "1"}, {3, "1"}}, 3));

    QSeries a = series({{0, "-1 * x^1"}, {1, "1"}}, 6);
    QSeries b = qs_invert(a, 6);
    CHECK(b.at(0) == poly("-1 * x^-1"));
    CHECK(b.at(1) == poly("-1 * x^-2"));
    CHECK(b.at(2) == poly("-1 * x^-3"));
    CHECK(qs_mul(a, b) == series({{0, "1"}}, 6));

    CHECK_THROWS_AS(qs_invert(series({{0, "1 - 1 * x^1"}}, 3), 3), NotAUnit);
    CHECK_THROWS_AS(qs_invert(series({{0, "1"}}, 2), 3), OrderExceeded);
}

TEST_CASE("windowed inversion expands a non-monomial leading coefficient")
{
    QSeries a = series({{0, "1 - 1 * x^1"}}, 2);
    QSeries b = qs_invert(a, 2, 5);
    CHECK(b.at(0) == poly("1 + 1 * x^1 + 1 * x^2 + 1 * x^3 + 1 * x^4 + 1 * x^5"));
    CHECK(window_inverse(poly("2 - 1 * x^1"), 2) == poly("1/2 + 1/4 * x^1 + 1/8 * x^2"));
    CHECK(window_geometric(Term{ExpVec{-1}, Rational(1)}, 2) == poly("1 + 1 * x^-1 + 1 * x^-2"));
    CHECK_THROWS_AS(window_geometric(Term{ExpVec{}, Rational(1)}, 2), NonEvaluable);
}

TEST_CASE("qs_subst_q_power examples")
{
    CHECK(qs_subst_q_power(series({{0, "1"}, {1, "-1"}}, 3), 2).at(2) == poly("-1"));
    QSeries s = qs_subst_q_power(series({{0, "1"}, {1, "1 * x^1"}, {3, "1"}}, 3), 4);
    CHECK(s == series({{0, "1"}, {4, "1 * x^1"}, {12, "1"}}, s.order()));
    CHECK(s.order() >= 12);

    QSeries qq2 = poch_finite(Param::mono(mono(1, 1)), 2, 1, 6);
    QSeries direct = poch_finite(Param::mono(mono(1, 2)), 2, 2, 12);
    QSeries sub = qs_subst_q_power(qq2, 2);
    CHECK(qs_diff_report(sub, direct) == std::nullopt);
}

TEST_CASE("qs_subst_var examples")
{
    QSeries one_minus_x = series({{0, "1 - 1 * x^1"}}, 5);
    CHECK(qs_subst_var(one_minus_x, 'x', mono(1, 0)) == series({{0, "0"}}, 5));
    DegreeBound bound{Rational(0), Rational(1)};
    QSeries a = qs_subst_var(one_minus_x, 'x', mono(1, 1), bound);
    CHECK(a.at(0) == poly("1"));
    CHECK(a.at(1) == poly("-1"));
    QSeries b = qs_subst_var(one_minus_x, 'x', mono(-1, 1), bound);
    CHECK(b.at(1) == poly("1"));
    CHECK_THROWS_AS(qs_subst_var(one_minus_x, 'x', mono(1, 1)), UnsoundTruncation);
    CHECK_THROWS_AS(qs_subst_var(one_minus_x, 'w', mono(1, 1), bound), UsageError);
}

TEST_CASE("qs_coeff examples")
{
    QSeries a = series({{0, "1"}, {1, "-1"}}, 3);
    CHECK(qs_coeff(a, 1) == poly("-1"));
    CHECK(qs_coeff(a, -4) == poly("0"));
    CHECK_THROWS_AS(qs_coeff(a, 4), OrderExceeded);
    QSeries jtp = theta_complete(Monomial::var('x'), 1);
    CHECK(qs_coeff(jtp, 1) == poly("1 * x^2 - 1 * x^-1"));
}

TEST_CASE("qs_diff_report examples")
{
    QSeries a = series({{0, "1"}, {3, "1 * x^1"}}, 4);
    CHECK(qs_diff_report(a, a) == std::nullopt);
    auto rec = qs_diff_report(series({{0, "1"}}, 3), series({{0, "1"}, {2, "1"}}, 3));
    REQUIRE(rec.has_value());
    CHECK(rec->q_exp == 2);
    CHECK(rec->diff == poly("-1"));
    CHECK(qs_diff_report(series({{0, "1"}}, 1), series({{0, "1"}, {2, "1"}}, 5)) == std::nullopt);
}

TEST_CASE("dump lists one exponent per line")
{
    QSeries a = series({{-1, "1 * x^1"}, {1, "2"}}, 1);
    CHECK(a.dump() == "q^-1 : 1 * x^1\nq^0 : 0\nq^1 : 2\n");
}
