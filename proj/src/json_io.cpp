#include <qtheta/json_io.hpp>

#include <fstream>

#include <qtheta/errors.hpp>

namespace qtheta
{

using nlohmann::json;

namespace
{

json affine_to_json(const Affine &a) { return json::array({a.a, a.b}); }

json param_to_json(const Param &p)
{
    return {{p.kind == Param::Kind::PairSqrt ? "pair_sqrt" : "mono", monomial_to_json(p.m)}};
}

json opt_bound(const std::optional<long> &b) { return b ? json(*b) : json(nullptr); }

[[noreturn]] void fail(const std::string &path, const std::string &msg)
{
    throw UsageError("definitions: " + path + ": " + msg);
}

const json &field(const json &j, const char *key, const std::string &path)
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        fail(path, std::string("missing field \"") + key + "\"");
    }
    return *it;
}

template <class T>
T get(const json &j, const char *key, const std::string &path)
{
    const json &v = field(j, key, path);
    try {
        return v.get<T>();
    } catch (const json::exception &) {
        fail(path + "." + key, "wrong type");
    }
}

template <class T>
T get_or(const json &j, const char *key, T fallback, const std::string &path)
{
    return j.contains(key) ? get<T>(j, key, path) : fallback;
}

Monomial monomial_at(const json &j, const std::string &path)
{
    if (!j.is_object()) {
        fail(path, "expected a monomial object");
    }
    Monomial m;
    try {
        m.coef = j.contains("coef") ? Rational::parse(get<std::string>(j, "coef", path)) : Rational(1);
    } catch (const Error &e) {
        fail(path + ".coef", e.what());
    }
    if (m.coef.is_zero()) {
        fail(path + ".coef", "monomial coefficient must be nonzero");
    }
    m.q = get_or<int>(j, "q", 0, path);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string &k = it.key();
        if (k == "coef" || k == "q") {
            continue;
        }
        int i = k.size() == 1 ? var_index(k[0]) : -1;
        if (i < 0) {
            fail(path, "unknown monomial field \"" + k + "\"");
        }
        m.vars[i] = get<int>(j, k.c_str(), path);
    }
    return m;
}

Affine affine_at(const json &j, const std::string &path)
{
    if (j.is_number_integer()) {
        return {0, j.get<long>()};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        fail(path, "expected [a, b] meaning a*n + b");
    }
    return {j[0].get<long>(), j[1].get<long>()};
}

std::optional<long> bound_at(const json &j, const char *key, const std::string &path)
{
    if (!j.contains(key) || j[key].is_null()) {
        return std::nullopt;
    }
    return get<long>(j, key, path);
}

// A parameter before pairing: plain, already paired, or one signed root.
struct RawParam {
    Param param;
    int sign = 0; // +-1 for {"sqrt": m, "sign": s}
};

RawParam param_at(const json &j, const std::string &path)
{
    if (!j.is_object() || j.size() == 0) {
        fail(path, "expected a parameter object");
    }
    if (j.contains("mono")) {
        return {Param::mono(monomial_at(j["mono"], path + ".mono")), 0};
    }
    if (j.contains("pair_sqrt")) {
        return {Param::pair_sqrt(monomial_at(j["pair_sqrt"], path + ".pair_sqrt")), 0};
    }
    if (j.contains("sqrt")) {
        int sign = get_or<int>(j, "sign", 1, path);
        if (sign != 1 && sign != -1) {
            fail(path + ".sign", "sign must be 1 or -1");
        }
        return {Param::pair_sqrt(monomial_at(j["sqrt"], path + ".sqrt")), sign};
    }
    return {Param::mono(monomial_at(j, path)), 0};
}

// Pairs +sqrt(m) with -sqrt(m) among items agreeing on `key`; an unpaired
// root has no monomial value and is rejected.
template <class Item, class Key>
std::vector<Item> pair_roots(std::vector<std::pair<Item, RawParam>> raw, Key key, const std::string &path)
{
    std::vector<Item> out;
    std::vector<bool> used(raw.size(), false);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) {
            continue;
        }
        used[i] = true;
        if (raw[i].second.sign == 0) {
            out.push_back(raw[i].first);
            continue;
        }
        std::size_t k = i + 1;
        for (; k < raw.size(); ++k) {
            if (!used[k] && raw[k].second.sign == -raw[i].second.sign
                && raw[k].second.param == raw[i].second.param && key(raw[k].first) == key(raw[i].first)) {
                break;
            }
        }
        if (k == raw.size()) {
            fail(path + "[" + std::to_string(i) + "]", "square root " + to_string(raw[i].second.param)
                                                           + " has no partner of opposite sign");
        }
        used[k] = true;
        out.push_back(raw[i].first);
    }
    return out;
}

std::vector<Param> params_at(const json &j, const std::string &path)
{
    if (!j.is_array()) {
        fail(path, "expected an array of parameters");
    }
    std::vector<std::pair<Param, RawParam>> raw;
    for (std::size_t i = 0; i < j.size(); ++i) {
        RawParam r = param_at(j[i], path + "[" + std::to_string(i) + "]");
        raw.emplace_back(r.param, r);
    }
    return pair_roots<Param>(raw, [](const Param &) { return 0; }, path);
}

SumSpec spec_at(const json &j, const std::string &path)
{
    SumSpec s;
    if (j.contains("range")) {
        const json &r = j["range"];
        s.range = {bound_at(r, "from", path + ".range"), bound_at(r, "to", path + ".range")};
    }
    s.alternating = get_or<bool>(j, "alternating", false, path);
    if (j.contains("quad")) {
        auto q = get<std::vector<long>>(j, "quad", path);
        if (q.size() != 3) {
            fail(path + ".quad", "expected [A, B, C] for (A n^2 + B n + C)/2");
        }
        s.quad = {q[0], q[1], q[2]};
    }
    s.power = j.contains("power") ? monomial_at(j["power"], path + ".power") : Monomial();
    if (j.contains("power2")) {
        s.power2 = monomial_at(j["power2"], path + ".power2");
    }
    s.weight = get_or<std::vector<long>>(j, "weight", {}, path);
    if (j.contains("factors")) {
        const json &fs = j["factors"];
        if (!fs.is_array()) {
            fail(path + ".factors", "expected an array");
        }
        std::vector<std::pair<PochFactor, RawParam>> raw;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            std::string fp = path + ".factors[" + std::to_string(i) + "]";
            const json &f = fs[i];
            RawParam p = param_at(field(f, "param", fp), fp + ".param");
            std::string side = get_or<std::string>(f, "side", "num", fp);
            if (side != "num" && side != "den") {
                fail(fp + ".side", "side must be \"num\" or \"den\"");
            }
            PochFactor pf{p.param, f.contains("shift") ? affine_at(f["shift"], fp + ".shift") : Affine{},
                          affine_at(field(f, "length", fp), fp + ".length"), get_or<int>(f, "step", 1, fp),
                          side == "num" ? Side::Numerator : Side::Denominator};
            raw.emplace_back(pf, p);
        }
        s.factors = pair_roots<PochFactor>(
            raw, [](const PochFactor &f) { return std::tuple(f.shift, f.length, f.step, f.side); },
            path + ".factors");
    }
    if (j.contains("tails")) {
        const json &ts = j["tails"];
        if (!ts.is_array()) {
            fail(path + ".tails", "expected an array");
        }
        for (std::size_t i = 0; i < ts.size(); ++i) {
            std::string tp = path + ".tails[" + std::to_string(i) + "]";
            const json &t = ts[i];
            s.tails.push_back(TailFactor{monomial_at(field(t, "base", tp), tp + ".base"),
                                        t.contains("shift") ? affine_at(t["shift"], tp + ".shift") : Affine{},
                                        get_or<int>(t, "step", 1, tp)});
        }
    }
    return s;
}

Expr expr_at(const json &j, const std::string &path);

std::vector<Expr> kids_at(const json &j, const std::string &path)
{
    const json &ks = field(j, "kids", path);
    if (!ks.is_array()) {
        fail(path + ".kids", "expected an array");
    }
    std::vector<Expr> out;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        out.push_back(expr_at(ks[i], path + ".kids[" + std::to_string(i) + "]"));
    }
    return out;
}

Expr single_kid(const json &j, const std::string &path)
{
    if (j.contains("kid")) {
        return expr_at(j["kid"], path + ".kid");
    }
    std::vector<Expr> ks = kids_at(j, path);
    if (ks.size() != 1) {
        fail(path + ".kids", "expected exactly one child");
    }
    return ks[0];
}

Expr expr_at(const json &j, const std::string &path)
{
    std::string node = get<std::string>(j, "node", path);
    try {
        if (node == "Const") {
            const json &v = field(j, "poly", path);
            if (v.is_number_integer()) {
                return Expr::constant(Rational(v.get<long long>()));
            }
            return Expr::constant(LaurentPoly::parse(get<std::string>(j, "poly", path)));
        }
        if (node == "Mono") {
            return Expr::mono(monomial_at(field(j, "m", path), path + ".m"));
        }
        if (node == "Add") {
            return Expr::add(kids_at(j, path));
        }
        if (node == "Mul") {
            return Expr::mul(kids_at(j, path));
        }
        if (node == "Neg") {
            return Expr::neg(single_kid(j, path));
        }
        if (node == "Inv") {
            return Expr::inv(single_kid(j, path));
        }
        if (node == "PochInf") {
            return Expr::poch_inf(monomial_at(field(j, "base", path), path + ".base"), get_or<int>(j, "step", 1, path));
        }
        if (node == "PochFin") {
            RawParam p = param_at(field(j, "param", path), path + ".param");
            if (p.sign != 0) {
                fail(path + ".param", "a single square root is not a monomial; use pair_sqrt");
            }
            return Expr::poch_fin(p.param, get<long>(j, "length", path), get_or<int>(j, "step", 1, path));
        }
        if (node == "Sum") {
            return Expr::sum(spec_at(field(j, "spec", path), path + ".spec"));
        }
        if (node == "Phi") {
            return Expr::sum(hypergeometric_spec(params_at(field(j, "uppers", path), path + ".uppers"),
                                                 params_at(field(j, "lowers", path), path + ".lowers"),
                                                 monomial_at(field(j, "arg", path), path + ".arg"),
                                                 get_or<int>(j, "base", 1, path)));
        }
    } catch (const UsageError &) {
        throw;
    } catch (const Error &e) {
        fail(path, e.what());
    }
    fail(path + ".node", "unknown node \"" + node + "\"");
}

} // namespace

json monomial_to_json(const Monomial &m)
{
    json j{{"coef", m.coef.to_string()}, {"q", m.q}};
    for (int i = 0; i < kMaxVars; ++i) {
        if (m.vars[i] != 0) {
            j[std::string(1, kVarNames[static_cast<std::size_t>(i)])] = m.vars[i];
        }
    }
    return j;
}

json spec_to_json(const SumSpec &s)
{
    json j{{"range", {{"from", opt_bound(s.range.from)}, {"to", opt_bound(s.range.to)}}},
           {"alternating", s.alternating},
           {"quad", json::array({s.quad.A, s.quad.B, s.quad.C})},
           {"power", monomial_to_json(s.power)}};
    if (s.power2) {
        j["power2"] = monomial_to_json(*s.power2);
    }
    if (!s.weight.empty()) {
        j["weight"] = s.weight;
    }
    json fs = json::array();
    for (const PochFactor &f : s.factors) {
        fs.push_back({{"param", param_to_json(f.param)},
                      {"length", affine_to_json(f.length)},
                      {"step", f.step},
                      {"side", f.side == Side::Numerator ? "num" : "den"},
                      {"shift", affine_to_json(f.shift)}});
    }
    j["factors"] = fs;
    json ts = json::array();
    for (const TailFactor &t : s.tails) {
        ts.push_back({{"base", monomial_to_json(t.base)}, {"shift", affine_to_json(t.shift)}, {"step", t.step}});
    }
    j["tails"] = ts;
    return j;
}

json expr_to_json(const Expr &e)
{
    json j{{"node", kind_name(e.kind())}};
    switch (e.kind()) {
    case Expr::Kind::Const: j["poly"] = e.poly().to_string(); break;
    case Expr::Kind::Mono: j["m"] = monomial_to_json(e.monomial()); break;
    case Expr::Kind::PochInf:
        j["base"] = monomial_to_json(e.monomial());
        j["step"] = e.step();
        break;
    case Expr::Kind::PochFin:
        j["param"] = param_to_json(e.param());
        j["length"] = e.length();
        j["step"] = e.step();
        break;
    case Expr::Kind::Sum: j["spec"] = spec_to_json(e.spec()); break;
    default: {
        json kids = json::array();
        for (const Expr &k : e.kids()) {
            kids.push_back(expr_to_json(k));
        }
        j["kids"] = kids;
    }
    }
    return j;
}

json identity_to_json(const Identity &id)
{
    json j{{"id", id.id},
           {"title", id.title},
           {"reference", id.reference},
           {"lhs", expr_to_json(id.lhs)},
           {"rhs", expr_to_json(id.rhs)},
           {"default_order", id.default_order},
           {"form", form_name(id.form)},
           {"provenance", id.provenance},
           {"normalize", id.normalize}};
    if (id.stated_lhs) {
        j["stated_lhs"] = expr_to_json(*id.stated_lhs);
    }
    if (id.stated_rhs) {
        j["stated_rhs"] = expr_to_json(*id.stated_rhs);
    }
    if (id.base_div != 1) {
        j["base_div"] = id.base_div;
    }
    return j;
}

Monomial monomial_from_json(const json &j) { return monomial_at(j, "monomial"); }

SumSpec spec_from_json(const json &j)
{
    SumSpec s = spec_at(j, "spec");
    try {
        check_spec(s);
    } catch (const Error &e) {
        fail("spec", e.what());
    }
    return s;
}

Expr expr_from_json(const json &j) { return expr_at(j, "expr"); }

Identity identity_from_json(const json &j)
{
    Identity id;
    id.id = get<std::string>(j, "id", "identity");
    std::string path = "identity " + id.id;
    if (id.id.empty() || id.id.find_first_of(" ,[]") != std::string::npos) {
        fail(path, "id must be nonempty without spaces, commas or brackets");
    }
    id.title = get_or<std::string>(j, "title", "", path);
    id.reference = get_or<std::string>(j, "reference", "", path);
    id.lhs = expr_at(field(j, "lhs", path), path + ".lhs");
    id.rhs = expr_at(field(j, "rhs", path), path + ".rhs");
    if (j.contains("stated_lhs")) {
        id.stated_lhs = expr_at(j["stated_lhs"], path + ".stated_lhs");
    }
    if (j.contains("stated_rhs")) {
        id.stated_rhs = expr_at(j["stated_rhs"], path + ".stated_rhs");
    }
    id.default_order = get_or<int>(j, "default_order", 40, path);
    if (id.default_order < 1) {
        fail(path + ".default_order", "must be at least 1");
    }
    id.base_div = get_or<int>(j, "base_div", 1, path);
    try {
        id.form = form_from_name(get_or<std::string>(j, "form", "stated", path));
    } catch (const Error &e) {
        fail(path + ".form", e.what());
    }
    id.provenance = get_or<std::string>(j, "provenance", "", path);
    id.normalize = get_or<bool>(j, "normalize", true, path);
    return id;
}

std::vector<Identity> load_definitions(const json &doc)
{
    int schema = get<int>(doc, "schema", "document");
    if (schema != kSchemaVersion) {
        fail("document.schema", "unsupported schema " + std::to_string(schema) + " (this build reads "
                                    + std::to_string(kSchemaVersion) + ")");
    }
    const json &arr = field(doc, "identities", "document");
    if (!arr.is_array()) {
        fail("document.identities", "expected an array");
    }
    std::vector<Identity> out;
    for (const json &j : arr) {
        out.push_back(identity_from_json(j));
    }
    return out;
}

std::vector<Identity> load_definitions_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open definitions file " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw UsageError(path + ": " + e.what());
    }
    return load_definitions(doc);
}

json dump_definitions(const std::vector<Identity> &ids)
{
    json arr = json::array();
    for (const Identity &id : ids) {
        arr.push_back(identity_to_json(id));
    }
    return {{"schema", kSchemaVersion}, {"identities", arr}};
}

} // namespace qtheta
