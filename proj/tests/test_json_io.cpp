#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include <qtheta/errors.hpp>
#include <qtheta/evaluate.hpp>
#include <qtheta/json_io.hpp>
#include <qtheta/registry.hpp>

#include "support.hpp"

using namespace qtheta;
using nlohmann::json;
using test::mono;

namespace
{

bool same_identity(const Identity &a, const Identity &b)
{
    return a.id == b.id && a.title == b.title && a.reference == b.reference && a.lhs == b.lhs && a.rhs == b.rhs
           && a.stated_lhs == b.stated_lhs && a.stated_rhs == b.stated_rhs && a.base_div == b.base_div
           && a.default_order == b.default_order && a.form == b.form && a.provenance == b.provenance
           && a.normalize == b.normalize;
}

std::string usage_message(const json &doc)
{
    try {
        load_definitions(doc);
    } catch (const UsageError &e) {
        return e.what();
    }
    return "";
}

json sum_identity(json factors)
{
    json spec{{"power", {{"q", 1}}}, {"factors", std::move(factors)}};
    return json{{"schema", 1},
                {"identities",
                 {{{"id", "t"}, {"lhs", {{"node", "Sum"}, {"spec", spec}}}, {"rhs", {{"node", "Const"}, {"poly", 0}}}}}}};
}

} // namespace

TEST_CASE("every catalog identity round-trips through JSON")
{
    const auto &all = list_identities();
    json doc = dump_definitions(all);
    CHECK(doc["schema"] == kSchemaVersion);
    std::vector<Identity> back = load_definitions(json::parse(doc.dump()));
    REQUIRE(back.size() == all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK_MESSAGE(same_identity(all[i], back[i]), all[i].id);
    }
}

TEST_CASE("monomials encode coefficient, q-power and variables")
{
    Monomial m(Rational(-3, 2), 4, ExpVec{1, 0, -2});
    json j = monomial_to_json(m);
    CHECK(j == json{{"coef", "-3/2"}, {"q", 4}, {"x", 1}, {"u", -2}});
    CHECK(monomial_from_json(j) == m);
    CHECK(monomial_from_json(json{{"y", 2}}) == mono(1, 0, 0, 2));
    CHECK_THROWS_AS(monomial_from_json(json{{"coef", "0"}}), UsageError);
    CHECK_THROWS_AS(monomial_from_json(json{{"w", 1}}), UsageError);
}

TEST_CASE("opposite square roots with matching factor data pair up")
{
    json root{{"x", 1}, {"y", 1}};
    json doc = sum_identity({{{"param", {{"sqrt", root}, {"sign", 1}}}, {"length", {1, 0}}},
                             {{"param", {{"sqrt", root}, {"sign", -1}}}, {"length", {1, 0}}},
                             {{"param", {{"q", 1}}}, {"length", {1, 0}}, {"side", "den"}}});
    std::vector<Identity> ids = load_definitions(doc);
    REQUIRE(ids.size() == 1);
    const SumSpec &s = ids[0].lhs.spec();
    REQUIRE(s.factors.size() == 2);
    CHECK(s.factors[0].param == Param::pair_sqrt(mono(1, 0, 1, 1)));
}

TEST_CASE("an unpaired square root is rejected with its path")
{
    json root{{"x", 1}};
    std::string msg = usage_message(sum_identity({{{"param", {{"sqrt", root}, {"sign", 1}}}, {"length", {1, 0}}},
                                                  {{"param", {{"sqrt", root}, {"sign", -1}}}, {"length", {2, 0}}}}));
    CHECK(msg.find("identity t.lhs.spec.factors[0]") != std::string::npos);
    CHECK(msg.find("no partner") != std::string::npos);
}

TEST_CASE("malformed documents are usage errors")
{
    CHECK(usage_message(json{{"schema", 2}, {"identities", json::array()}}).find("schema") != std::string::npos);
    CHECK(usage_message(json{{"identities", json::array()}}).find("schema") != std::string::npos);

    json bad_node = sum_identity(json::array());
    bad_node["identities"][0]["rhs"] = {{"node", "Frobnicate"}};
    CHECK(usage_message(bad_node).find("unknown node") != std::string::npos);

    json bad_id = sum_identity(json::array());
    bad_id["identities"][0]["id"] = "a b";
    CHECK_FALSE(usage_message(bad_id).empty());

    json bad_order = sum_identity(json::array());
    bad_order["identities"][0]["default_order"] = 0;
    CHECK(usage_message(bad_order).find("default_order") != std::string::npos);

    json bad_quad = sum_identity(json::array());
    bad_quad["identities"][0]["lhs"]["spec"]["quad"] = {1, 0, 0};
    CHECK_FALSE(usage_message(bad_quad).empty());
}

TEST_CASE("Phi nodes build hypergeometric sums")
{
    json j{{"node", "Phi"}, {"uppers", json::array()}, {"lowers", json::array()}, {"arg", {{"q", 1}}}};
    Expr e = expr_from_json(j);
    REQUIRE(e.kind() == Expr::Kind::Sum);
    CHECK(e.spec() == hypergeometric_spec({}, {}, mono(1, 1)));
}

TEST_CASE("definitions files load from disk")
{
    std::string path = "qtheta_test_defs.json";
    {
        std::ofstream f(path);
        f << sum_identity(json::array()).dump(2);
    }
    std::vector<Identity> ids = load_definitions_file(path);
    CHECK(ids.size() == 1);
    CHECK_THROWS_AS(load_definitions_file("does/not/exist.json"), UsageError);
    std::remove(path.c_str());
}
