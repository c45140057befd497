#include <qtheta/registry.hpp>

#include <chrono>
#include <set>

#include <qtheta/errors.hpp>
#include <qtheta/rewrite.hpp>

namespace qtheta
{

const char *form_name(Form f)
{
    switch (f) {
    case Form::Stated: return "stated";
    case Form::Cleared: return "cleared";
    case Form::Specialization: return "specialization";
    }
    return "stated";
}

Form form_from_name(const std::string &s)
{
    if (s == "stated") {
        return Form::Stated;
    }
    if (s == "cleared") {
        return Form::Cleared;
    }
    if (s == "specialization") {
        return Form::Specialization;
    }
    throw UsageError("unknown identity form '" + s + "'");
}

Catalog::Catalog(std::vector<Identity> ids) : ids_(std::move(ids))
{
    std::set<std::string> seen;
    for (const auto &i : ids_) {
        if (!seen.insert(i.id).second) {
            throw UsageError("duplicate identity id '" + i.id + "'");
        }
    }
}

const Catalog &Catalog::builtin()
{
    static const Catalog c(builtin_identities());
    return c;
}

const Identity *Catalog::find(const std::string &id) const
{
    for (const auto &i : ids_) {
        if (i.id == id) {
            return &i;
        }
    }
    return nullptr;
}

const Identity &Catalog::at(const std::string &id) const
{
    if (const Identity *i = find(id)) {
        return *i;
    }
    throw UsageError("unknown identity '" + id + "'");
}

const std::vector<Identity> &list_identities() { return Catalog::builtin().all(); }

Expr prepared_side(const Identity &id, bool left)
{
    const Expr &e = left ? id.lhs : id.rhs;
    return id.normalize ? normalize(e) : e;
}

namespace
{

void require_evaluable(const Expr &e, const std::string &root)
{
    Validation v = validate_evaluable(e, root);
    if (!v.ok) {
        throw NonEvaluable(v.diagnostic);
    }
}

} // namespace

Report check_identity(const Identity &id, int order, const CheckOptions &opts)
{
    if (order < 1) {
        throw UsageError("order must be at least 1");
    }
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    r.id = id.id;
    r.order = order;
    try {
        Expr l = prepared_side(id, true);
        Expr rt = prepared_side(id, false);
        require_evaluable(l, "lhs");
        require_evaluable(rt, "rhs");
        EvalStats st;
        EvalOptions eo{std::nullopt, opts.parallel};
        QSeries a = eval_expr(l, order, eo, &st, "lhs");
        QSeries b = eval_expr(rt, order, eo, &st, "rhs");
        r.mismatch = qs_diff_report(a, b);
        r.status = r.mismatch ? Status::Mismatch : Status::Pass;
        for (const auto &s : st.sums) {
            auto [it, fresh] = r.n_max_used.emplace(s.path, s.n_max);
            if (!fresh) {
                it->second = std::max(it->second, s.n_max);
            }
        }
    } catch (const Error &e) {
        r.status = Status::Error;
        r.error = e.what();
        r.error_kind = error_kind(e);
        r.mismatch.reset();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

Report check_identity(const std::string &id, int order, const CheckOptions &opts)
{
    return check_identity(Catalog::builtin().at(id), order, opts);
}

Identity substitute_identity(const Identity &id, const Bindings &bindings, int q_power)
{
    Identity out = id;
    std::string desc;
    for (const auto &[var, m] : bindings) {
        desc += (desc.empty() ? "" : ", ") + std::string(1, var) + " = " + m.to_string();
    }
    if (q_power != 1) {
        desc += (desc.empty() ? "" : ", ") + std::string("q -> q^") + std::to_string(q_power);
    }
    out.id = id.id + "[" + desc + "]";
    out.title = id.title + " at " + desc;
    out.form = Form::Specialization;
    out.provenance = desc;
    out.lhs = substitute(id.lhs, bindings, q_power);
    out.rhs = substitute(id.rhs, bindings, q_power);
    if (id.stated_lhs) {
        out.stated_lhs = substitute(*id.stated_lhs, bindings, q_power);
    }
    if (id.stated_rhs) {
        out.stated_rhs = substitute(*id.stated_rhs, bindings, q_power);
    }
    require_evaluable(prepared_side(out, true), "lhs");
    require_evaluable(prepared_side(out, false), "rhs");
    return out;
}

Identity substitute_identity(const std::string &id, const Bindings &bindings, int q_power)
{
    return substitute_identity(Catalog::builtin().at(id), bindings, q_power);
}

} // namespace qtheta
