#include <qtheta/cli.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <qtheta/errors.hpp>
#include <qtheta/json_io.hpp>
#include <qtheta/oracle.hpp>
#include <qtheta/rewrite.hpp>

namespace qtheta
{

namespace
{

using nlohmann::json;

struct Settings {
    std::string format = "text";
    std::string defs;
    std::optional<int> order;
    std::string ids;
    std::vector<std::string> targets;
    int jobs = 0;
    std::optional<int> window;
    std::string filter;
    bool normalize = false;
};

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::optional<int> env_order()
{
    const char *v = std::getenv("QTHETA_ORDER");
    if (!v || !*v) {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        int n = std::stoi(v, &used);
        if (used == std::string(v).size() && n >= 1) {
            return n;
        }
    } catch (const std::exception &) {
    }
    throw UsageError(std::string("QTHETA_ORDER must be a positive integer, got '") + v + "'");
}

// --order, then QTHETA_ORDER, then the fallback.
int resolve_order(const Settings &s, int fallback)
{
    if (s.order) {
        if (*s.order < 1) {
            throw UsageError("--order must be at least 1");
        }
        return *s.order;
    }
    if (auto e = env_order()) {
        return *e;
    }
    return fallback;
}

Catalog load_catalog(const Settings &s)
{
    if (s.defs.empty()) {
        return Catalog::builtin();
    }
    std::vector<Identity> ids = Catalog::builtin().all();
    for (Identity &i : load_definitions_file(s.defs)) {
        ids.push_back(std::move(i));
    }
    return Catalog(std::move(ids));
}

std::vector<std::string> split_ids(const std::string &text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

// Positional ids and --ids, in order; "all" expands to the catalog.
std::vector<const Identity *> select(const Catalog &cat, const Settings &s)
{
    std::vector<std::string> names;
    for (const std::string &t : s.targets) {
        for (const std::string &n : split_ids(t)) {
            names.push_back(n);
        }
    }
    for (const std::string &n : split_ids(s.ids)) {
        names.push_back(n);
    }
    if (names.empty()) {
        throw UsageError("no identities given (use --ids a,b,c or all)");
    }
    std::vector<const Identity *> out;
    for (const std::string &n : names) {
        if (n == "all") {
            for (const Identity &i : cat.all()) {
                out.push_back(&i);
            }
        } else {
            out.push_back(&cat.at(n));
        }
    }
    return out;
}

int worker_count(const Settings &s, std::size_t tasks)
{
    int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    int k = s.jobs > 0 ? s.jobs : hw;
    return std::max(1, std::min(k, static_cast<int>(tasks)));
}

// Runs f(i) for every task on `jobs` threads; results stay in input order.
template <class R, class F>
std::vector<R> run_pool(std::size_t tasks, int jobs, F f)
{
    std::vector<R> out(tasks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (jobs > 1)
    for (std::size_t i = 0; i < tasks; ++i) {
        out[i] = f(i);
    }
    return out;
}

int cmd_list(const Settings &s, std::ostream &out)
{
    Catalog cat = load_catalog(s);
    std::string needle = lower(s.filter);
    std::vector<const Identity *> rows;
    for (const Identity &i : cat.all()) {
        if (needle.empty() || lower(i.id + " " + i.title + " " + i.reference).find(needle) != std::string::npos) {
            rows.push_back(&i);
        }
    }
    if (s.format == "json") {
        json arr = json::array();
        for (const Identity *i : rows) {
            arr.push_back({{"id", i->id},
                           {"title", i->title},
                           {"reference", i->reference},
                           {"default_order", i->default_order},
                           {"form", form_name(i->form)}});
        }
        out << json{{"schema", kSchemaVersion}, {"identities", arr}}.dump(2) << "\n";
        return kExitPass;
    }
    std::size_t w = 2;
    for (const Identity *i : rows) {
        w = std::max(w, i->id.size());
    }
    out << std::left << std::setw(static_cast<int>(w)) << "id" << "  " << std::setw(14) << "form"
        << "order  title (reference)\n";
    for (const Identity *i : rows) {
        out << std::left << std::setw(static_cast<int>(w)) << i->id << "  " << std::setw(14) << form_name(i->form)
            << std::setw(5) << i->default_order << "  " << i->title << " (" << i->reference << ")\n";
    }
    return kExitPass;
}

int cmd_check(const Settings &s, bool timing, std::ostream &out)
{
    Catalog cat = load_catalog(s);
    std::vector<const Identity *> ids = select(cat, s);
    std::vector<int> orders;
    for (const Identity *i : ids) {
        orders.push_back(resolve_order(s, i->default_order));
    }
    int jobs = worker_count(s, ids.size());
    CheckOptions opts{jobs == 1};
    auto reports = run_pool<Report>(ids.size(), jobs, [&](std::size_t i) {
        Report r = check_identity(*ids[i], orders[i], opts);
        if (!timing) {
            r.elapsed_ms = 0;
        }
        return r;
    });
    int code = exit_code(reports);
    if (s.format == "json") {
        json arr = json::array();
        for (const Report &r : reports) {
            arr.push_back(report_to_json(r));
        }
        out << json{{"schema", kSchemaVersion}, {"reports", arr}, {"exit_code", code}}.dump(2) << "\n";
        return code;
    }
    std::size_t counts[3] = {0, 0, 0};
    for (const Report &r : reports) {
        out << report_to_text(r) << "\n";
        ++counts[static_cast<int>(r.status)];
    }
    out << counts[0] << " passed, " << counts[1] << " mismatched, " << counts[2] << " errors\n";
    return code;
}

int cmd_expand(const Settings &s, std::ostream &out)
{
    if (s.targets.size() != 1) {
        throw UsageError("expand takes one target: id.lhs, id.rhs or an inline JSON expression");
    }
    const std::string &t = s.targets[0];
    Expr e;
    int fallback = 10;
    if (!t.empty() && t.front() == '{') {
        json j;
        try {
            j = json::parse(t);
        } catch (const json::parse_error &err) {
            throw UsageError(std::string("inline expression: ") + err.what());
        }
        e = expr_from_json(j);
        if (s.normalize) {
            e = normalize(e);
        }
    } else {
        std::size_t dot = t.rfind('.');
        std::string side = dot == std::string::npos ? "" : t.substr(dot + 1);
        if (side != "lhs" && side != "rhs") {
            throw UsageError("expand target must be id.lhs, id.rhs or an inline JSON expression, got '" + t + "'");
        }
        Catalog cat = load_catalog(s);
        const Identity &id = cat.at(t.substr(0, dot));
        e = prepared_side(id, side == "lhs");
        fallback = id.default_order;
    }
    int order = resolve_order(s, fallback);
    EvalOptions opts;
    if (s.window) {
        if (*s.window < 1) {
            throw UsageError("--window must be positive");
        }
        opts.window = *s.window;
    } else {
        Validation v = validate_evaluable(e, "expr");
        if (!v.ok) {
            throw NonEvaluable(v.diagnostic);
        }
    }
    QSeries q = eval_expr(e, order, opts);
    if (s.format == "json") {
        json coeffs = json::array();
        for (int k = std::min(q.valuation(), 0); k <= q.order(); ++k) {
            if (!q.at(k).is_zero()) {
                coeffs.push_back({{"q", k}, {"coef", q.at(k).to_string()}});
            }
        }
        json j{{"schema", kSchemaVersion}, {"order", order}, {"expr", e.to_string()}, {"coefficients", coeffs}};
        if (s.window) {
            j["window"] = *s.window;
        }
        out << j.dump(2) << "\n";
    } else {
        out << q.dump();
    }
    return kExitPass;
}

int cmd_oracle(const Settings &s, bool timing, std::ostream &out)
{
    Catalog cat = load_catalog(s);
    std::vector<const Identity *> ids = select(cat, s);
    int order = resolve_order(s, 12);
    int window = s.window ? *s.window : required_window(order);
    if (window < required_window(order)) {
        throw UsageError("window " + std::to_string(window) + " is too small for order " + std::to_string(order)
                         + "; the minimum is " + std::to_string(required_window(order)));
    }
    int jobs = worker_count(s, ids.size());
    auto results = run_pool<OracleResult>(ids.size(), jobs, [&](std::size_t i) {
        OracleResult r = oracle_identity(*ids[i], order, window);
        if (!timing) {
            r.elapsed_ms = 0;
        }
        return r;
    });
    int code = kExitPass;
    for (const OracleResult &r : results) {
        if (!r.error.empty()) {
            code = kExitError;
        } else if (!r.agree && code == kExitPass) {
            code = kExitMismatch;
        }
    }
    if (s.format == "json") {
        json arr = json::array();
        for (const OracleResult &r : results) {
            arr.push_back(oracle_to_json(r));
        }
        out << json{{"schema", kSchemaVersion}, {"results", arr}, {"exit_code", code}}.dump(2) << "\n";
    } else {
        for (const OracleResult &r : results) {
            out << oracle_to_text(r) << "\n";
        }
    }
    return code;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact q-series identity checker", args.empty() ? "qtheta" : args[0]};
    app.require_subcommand(1);
    Settings s;
    bool no_timing = false;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--defs", s.defs, "Extra identity definitions (JSON)");
    };
    auto selection = [&](CLI::App *sub) {
        sub->add_option("id", s.targets, "Identity ids, comma separated, or all");
        sub->add_option("--ids", s.ids, "Identity ids, comma separated, or all");
        sub->add_option("--order", s.order, "Truncation order (overrides QTHETA_ORDER)");
        sub->add_option("--jobs", s.jobs, "Worker threads (default: available cores)")->check(CLI::PositiveNumber);
        sub->add_flag("--no-timing", no_timing, "Report elapsed times as 0");
    };

    CLI::App *list = app.add_subcommand("list", "List the catalog");
    common(list);
    list->add_option("--filter", s.filter, "Case-insensitive substring of id, title or reference");

    CLI::App *check = app.add_subcommand("check", "Compare both sides coefficient by coefficient");
    common(check);
    selection(check);

    CLI::App *expand = app.add_subcommand("expand", "Print the q-expansion of one expression");
    common(expand);
    expand->add_option("target", s.targets, "id.lhs, id.rhs or an inline JSON expression")->required();
    expand->add_option("--order", s.order, "Truncation order (overrides QTHETA_ORDER)");
    expand->add_option("--window", s.window, "Expand in windowed mode with this variable window");
    expand->add_flag("--normalize", s.normalize, "Normalize an inline expression before expanding");

    CLI::App *oracle = app.add_subcommand("oracle", "Cross-check exact results against windowed expansion");
    common(oracle);
    selection(oracle);
    oracle->add_option("--window", s.window, "Variable window W (at least 2N+4)");

    std::vector<const char *> argv;
    for (const std::string &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (list->parsed()) {
            return cmd_list(s, out);
        }
        if (check->parsed()) {
            return cmd_check(s, !no_timing, out);
        }
        if (expand->parsed()) {
            return cmd_expand(s, out);
        }
        return cmd_oracle(s, !no_timing, out);
    } catch (const UsageError &e) {
        err << "qtheta: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        err << "qtheta: " << error_kind(e) << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception &e) {
        err << "qtheta: internal error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace qtheta
