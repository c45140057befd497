#ifndef QTHETA_JSON_IO_HPP
#define QTHETA_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include <qtheta/registry.hpp>

// JSON encoding of expressions and identity definitions files. The format
// is described in docs/identity-defs.md.
namespace qtheta
{

constexpr int kSchemaVersion = 1;

nlohmann::json monomial_to_json(const Monomial &m);
Monomial monomial_from_json(const nlohmann::json &j);

nlohmann::json spec_to_json(const SumSpec &s);
SumSpec spec_from_json(const nlohmann::json &j);

nlohmann::json expr_to_json(const Expr &e);
Expr expr_from_json(const nlohmann::json &j);

nlohmann::json identity_to_json(const Identity &id);
Identity identity_from_json(const nlohmann::json &j);

// {"schema": 1, "identities": [...]}
std::vector<Identity> load_definitions(const nlohmann::json &doc);
std::vector<Identity> load_definitions_file(const std::string &path);
nlohmann::json dump_definitions(const std::vector<Identity> &ids);

} // namespace qtheta

#endif
