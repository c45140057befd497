#include <doctest.h>

#include <qtheta/errors.hpp>
#include <qtheta/evaluate.hpp>
#include <qtheta/registry.hpp>
#include <qtheta/rewrite.hpp>

#include "support.hpp"

using namespace qtheta;
using test::mono;
using test::poly;
using test::series;

namespace
{

Monomial xy(int q) { return mono(1, q, 1, 1); }

// sum_n c(n) * z^n over n = 0..6 where c(n) = num_n / den_n, as a plain series.
QSeries single_point_values(const SumSpec &s, int order)
{
    QSeries acc(order);
    for (long n = 0; n <= 6; ++n) {
        SumSpec t = s;
        t.range = SumRange::single(n);
        t.power = mono(1, 0, 0, 0) * Monomial(Rational(1), 0, ExpVec{0, 0, 1});
        acc = qs_add(acc, eval_expr(normalize(Expr::sum(t)), order));
    }
    return acc;
}

} // namespace

TEST_CASE("eval_expr examples")
{
    Expr tp = Expr::mul({Expr::poch_inf(mono(1, 1)), Expr::poch_inf(Monomial::var('x')),
                         Expr::poch_inf(Monomial(Rational(1), 1, ExpVec{-1}))});
    CHECK(qs_coeff(eval_expr(tp, 1), 1) == poly("1 * x^2 - 1 * x^-1"));
    CHECK(eval_expr(Expr::constant(Rational(1)), 7) == series({{0, "1"}}, 7));

    const Identity &warnaar = Catalog::builtin().at("warnaar-sum");
    CHECK(qs_coeff(eval_expr(prepared_side(warnaar, true), 0), 0) == poly("1 - 1 * x^1 - 1 * y^1"));
}

TEST_CASE("validate_evaluable examples")
{
    const Identity &md = Catalog::builtin().at("main-difference");
    Validation raw = validate_evaluable(md.rhs);
    CHECK_FALSE(raw.ok);
    CHECK(raw.diagnostic.find("valuation") != std::string::npos);

    Validation norm = validate_evaluable(normalize(md.rhs));
    CHECK(norm.ok);
    CHECK_FALSE(norm.certificate.empty());

    Validation inv = validate_evaluable(Expr::inv(Expr::poch_inf(Monomial::var('x'))));
    CHECK_FALSE(inv.ok);
    INFO(inv.diagnostic);
    CHECK(inv.diagnostic.find("NotAUnit") != std::string::npos);
    CHECK_THROWS_AS(eval_expr(Expr::inv(Expr::poch_inf(Monomial::var('x'))), 4), NotAUnit);
}

TEST_CASE("errors carry the AST path")
{
    const Identity &md = Catalog::builtin().at("main-difference");
    try {
        eval_expr(md.rhs, 4, {}, nullptr, "main-difference.rhs");
        FAIL("raw form evaluated");
    } catch (const NonEvaluable &e) {
        CHECK(std::string(e.what()).find("main-difference.rhs") != std::string::npos);
    }
}

TEST_CASE("R2 cancels (xy)_2n / (xy)_n to (xyq^n)_n")
{
    SumSpec s;
    s.factors = {num(xy(0), {2, 0}), den(xy(0), {1, 0})};
    std::vector<SumSpec> out = cancel_factors(canonical_factors(s));
    REQUIRE(out.size() == 1);
    REQUIRE(out[0].factors.size() == 1);
    const PochFactor &f = out[0].factors[0];
    CHECK(f.side == Side::Numerator);
    CHECK(f.param == Param::mono(xy(0)));
    CHECK(f.shift == Affine{1, 0});
    CHECK(f.length == Affine{1, 0});

    // Polynomial check for n <= 6: (xy)_2n = (xy)_n (xyq^n)_n.
    for (long n = 0; n <= 6; ++n) {
        int order = 100;
        QSeries lhs = poch_finite(Param::mono(xy(0)), 2 * n, 1, order);
        QSeries rhs = qs_mul(poch_finite(Param::mono(xy(0)), n, 1, order),
                             poch_finite(Param::mono(xy(static_cast<int>(n))), n, 1, order));
        CHECK(qs_diff_report(lhs, rhs) == std::nullopt);
    }
}

TEST_CASE("R2 on (xy/q)_2n / (xy/q)_n gives (xyq^(n-1))_n")
{
    SumSpec s;
    s.factors = {num(xy(-1), {2, 0}), den(xy(-1), {1, 0})};
    std::vector<SumSpec> out = cancel_factors(canonical_factors(s));
    REQUIRE(out.size() == 1);
    REQUIRE(out[0].factors.size() == 1);
    const PochFactor &f = out[0].factors[0];
    CHECK(f.param == Param::mono(xy(-1)));
    CHECK(f.shift == Affine{1, 0});
    CHECK(f.length == Affine{1, 0});
    CHECK(qs_diff_report(single_point_values(out[0], 40), single_point_values(s, 40)) == std::nullopt);
}

TEST_CASE("R3 turns a paired square root into a base q^2 factor")
{
    SumSpec s;
    s.factors = {num(Param::pair_sqrt(xy(0)), {1, 0})};
    SumSpec c = canonical_factors(s);
    REQUIRE(c.factors.size() == 1);
    CHECK(c.factors[0].param == Param::mono(xy(0)));
    CHECK(c.factors[0].step == 2);
}

TEST_CASE("R1 folds an infinite product into a tail")
{
    SumSpec s = hypergeometric_spec({}, {Param::mono(Monomial::var('x'))}, mono(1, 1));
    Expr e = Expr::mul({Expr::poch_inf(mono(1, 1)), Expr::poch_inf(Monomial::var('x')), Expr::sum(s)});
    CHECK_FALSE(validate_evaluable(e).ok);
    Expr n = normalize(e);
    CHECK(validate_evaluable(n).ok);
    CHECK(n.to_string().find("tail(") != std::string::npos);
    CHECK(qs_diff_report(eval_expr(n, 15), theta_partial(Monomial::var('x'), 15)) == std::nullopt);
}

TEST_CASE("normalize is idempotent and order-insensitive")
{
    Expr a = Expr::poch_inf(mono(1, 1)), b = Expr::poch_fin(Monomial::var('x'), 3), c = Expr::mono(mono(2, 1, 0, 1));
    Expr e1 = Expr::mul({a, Expr::add({b, c})});
    Expr e2 = Expr::mul({Expr::add({c, b}), a});
    CHECK(normalize(e1) == normalize(e2));
    CHECK(normalize(normalize(e1)) == normalize(e1));
    CHECK(eval_expr(normalize(e1), 10) == eval_expr(e1, 10));
}

TEST_CASE("inverses cancel in pairs")
{
    Expr p = Expr::poch_fin(mono(1, 1), 4);
    Expr e = Expr::mul({p, Expr::inv(p), Expr::mono(Monomial::var('y'))});
    CHECK(normalize(e) == normalize(Expr::mono(Monomial::var('y'))));
}

TEST_CASE("substitute binds variables and rescales q")
{
    Expr e = Expr::poch_fin(Monomial::var('x'), 2);
    Expr s = substitute(e, Bindings{{'x', mono(-1, 1)}});
    CHECK(eval_expr(s, 5) == series({{0, "1"}, {1, "1"}, {2, "1"}, {3, "1"}}, 5));
    Expr r = substitute(Expr::poch_fin(mono(1, 1), 1), {}, 3);
    CHECK(eval_expr(r, 5) == series({{0, "1"}, {3, "-1"}}, 5));
    CHECK(expr_arity(Expr::mono(Monomial::var('u'))) == 3);
}
