#include <doctest.h>

#include <set>

#include <qtheta/errors.hpp>
#include <qtheta/evaluate.hpp>
#include <qtheta/oracle.hpp>
#include <qtheta/registry.hpp>
#include <qtheta/report.hpp>
#include <qtheta/rewrite.hpp>

#include "support.hpp"

using namespace qtheta;
using test::mono;
using test::poly;
using test::series;

namespace
{

QSeries side(const Identity &id, bool left, int order) { return eval_expr(prepared_side(id, left), order); }

} // namespace

TEST_CASE("catalog has unique ids and at least 24 entries")
{
    const auto &all = list_identities();
    CHECK(all.size() >= 24);
    std::set<std::string> ids;
    for (const Identity &i : all) {
        CHECK(ids.insert(i.id).second);
        CHECK_FALSE(i.title.empty());
        CHECK_FALSE(i.reference.empty());
        CHECK(i.default_order >= 1);
    }
    CHECK(Catalog::builtin().find("nosuch") == nullptr);
    CHECK_THROWS_AS(Catalog::builtin().at("nosuch"), UsageError);
}

TEST_CASE("check examples")
{
    CHECK(check_identity("jtp", 30).status == Status::Pass);
    CHECK(check_identity("main-difference", 30).status == Status::Pass);

    const Identity &jc = Catalog::builtin().at("jacobi-cube");
    CHECK(check_identity(jc, 3).status == Status::Pass);
    CHECK(side(jc, true, 3) == series({{0, "-1"}, {1, "3"}, {3, "-5"}}, 3));
    CHECK(side(jc, false, 3) == series({{0, "-1"}, {1, "3"}, {3, "-5"}}, 3));
}

TEST_CASE("a perturbed weight is reported as a mismatch at q^0")
{
    Identity bad = Catalog::builtin().at("jacobi-cube");
    REQUIRE(bad.lhs.kind() == Expr::Kind::Sum);
    SumSpec s = bad.lhs.spec();
    s.weight = {1, 2};
    bad.lhs = Expr::sum(s);
    Report r = check_identity(bad, 10);
    CHECK(r.status == Status::Mismatch);
    REQUIRE(r.mismatch.has_value());
    CHECK(r.mismatch->q_exp == 0);
    CHECK(r.mismatch->diff == poly("-2"));
    CHECK(exit_code({r}) == 1);
}

TEST_CASE("main-difference prefix")
{
    const Identity &md = Catalog::builtin().at("main-difference");
    QSeries l = side(md, true, 1), r = side(md, false, 1);
    CHECK(l == series({{0, "-1"}, {1, "1 * x^1 + 1 * y^1"}}, 1));
    CHECK(qs_diff_report(l, r) == std::nullopt);
}

TEST_CASE("check reports sum usage and errors")
{
    Report r = check_identity("warnaar-sum", 12);
    CHECK(r.status == Status::Pass);
    CHECK_FALSE(r.n_max_used.empty());

    Identity broken = Catalog::builtin().at("jtp");
    broken.rhs = Expr::inv(Expr::poch_inf(Monomial::var('x')));
    broken.normalize = false;
    Report e = check_identity(broken, 5);
    CHECK(e.status == Status::Error);
    CHECK(e.error_kind == "NonEvaluable");
    CHECK(e.error.find("NotAUnit") != std::string::npos);
    CHECK(exit_code({r, e}) == 3);
}

TEST_CASE("serial and parallel checks agree")
{
    for (const char *id : {"main-difference", "warnaar-sum", "aw-product"}) {
        Report a = check_identity(id, 20, CheckOptions{false});
        Report b = check_identity(id, 20, CheckOptions{true});
        CHECK(a.status == b.status);
        CHECK(a.n_max_used == b.n_max_used);
    }
}

TEST_CASE("substitute_identity reproduces catalog entries")
{
    int n = 20;
    Identity a = substitute_identity("warnaar-sum", Bindings{{'y', Monomial(Rational(1), 1, ExpVec{-1})}});
    CHECK(a.form == Form::Specialization);
    CHECK(check_identity(a, n).status == Status::Pass);
    const Identity &jtp = Catalog::builtin().at("jtp");
    CHECK(qs_diff_report(side(a, true, n), side(jtp, true, n)) == std::nullopt);

    Identity b = substitute_identity("warnaar-sum", Bindings{{'y', Monomial(Rational(1), -1, ExpVec{1})}});
    const Identity &ps = Catalog::builtin().at("ptheta-shift");
    CHECK(qs_diff_report(side(b, true, n), side(ps, true, n)) == std::nullopt);
    CHECK(qs_diff_report(side(b, false, n), side(ps, false, n)) == std::nullopt);

    Identity c = substitute_identity("main-difference", Bindings{{'y', Monomial(Rational(-1), 0, ExpVec{1})}});
    CHECK(check_identity(c, n).status == Status::Pass);

    Identity d = substitute_identity("jtp", {}, 2);
    CHECK(check_identity(d, n).status == Status::Pass);
}

TEST_CASE("report JSON round-trips")
{
    Report r = check_identity("jtp", 8);
    r.elapsed_ms = 1.5;
    CHECK(report_from_json(report_to_json(r)) == r);

    Report m;
    m.id = "x";
    m.order = 3;
    m.status = Status::Mismatch;
    m.mismatch = MismatchRecord{2, poly("-1 + 1/2 * x^-1")};
    CHECK(report_from_json(report_to_json(m)) == m);
    CHECK(report_to_text(m).find("mismatch") != std::string::npos);
    CHECK(status_from_name(status_name(Status::Error)) == Status::Error);
    CHECK(exit_code({}) == 0);
}

TEST_CASE("oracle agrees on main-difference and ptheta-shift")
{
    CHECK(required_window(12) == 28);
    CHECK(shared_window(12, 28) == 12);
    for (const char *id : {"main-difference", "ptheta-shift", "jtp"}) {
        OracleResult r = oracle_identity(Catalog::builtin().at(id), 12, 28);
        CHECK_MESSAGE(r.agree, id);
        CHECK(r.error.empty());
    }
    CHECK_THROWS_AS(oracle_identity(Catalog::builtin().at("jtp"), 12, 20), UsageError);
}

TEST_CASE("normal forms of the two Andrews-Warnaar sides coincide")
{
    const Identity &a = Catalog::builtin().at("aw-4phi3");
    const Identity &b = Catalog::builtin().at("aw-product");
    CHECK(normalize(a.rhs) == normalize(b.rhs));
}
