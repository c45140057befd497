#include <qtheta/oracle.hpp>

#include <chrono>
#include <sstream>

#include <qtheta/errors.hpp>

namespace qtheta
{

int required_window(int order) { return 2 * order + 4; }

int shared_window(int order, int window) { return window - order - 4; }

namespace
{

QSeries restricted(const QSeries &s, int radius)
{
    QSeries r = s;
    r.apply_window(radius);
    return r;
}

} // namespace

OracleResult oracle_identity(const Identity &id, int order, int window)
{
    if (order < 1) {
        throw UsageError("order must be at least 1");
    }
    if (window < required_window(order)) {
        throw UsageError("window " + std::to_string(window) + " is too small for order " + std::to_string(order)
                         + "; the minimum is " + std::to_string(required_window(order)));
    }
    auto t0 = std::chrono::steady_clock::now();
    OracleResult r;
    r.id = id.id;
    r.order = order;
    r.window = window;
    r.shared = shared_window(order, window);
    try {
        EvalOptions exact{std::nullopt, true};
        EvalOptions windowed{window, true};
        for (bool left : {true, false}) {
            const Expr &stated = left ? id.stated_lhs.value_or(id.lhs) : id.stated_rhs.value_or(id.rhs);
            QSeries a = eval_expr(prepared_side(id, left), order, exact, nullptr, left ? "lhs" : "rhs");
            QSeries b = eval_expr(stated, order, windowed, nullptr, left ? "stated lhs" : "stated rhs");
            auto d = qs_diff_report(restricted(a, r.shared), restricted(b, r.shared));
            (left ? r.lhs_diff : r.rhs_diff) = d;
        }
        r.agree = !r.lhs_diff && !r.rhs_diff;
    } catch (const Error &e) {
        r.error = e.what();
        r.agree = false;
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

nlohmann::json oracle_to_json(const OracleResult &r)
{
    auto diff = [](const std::optional<MismatchRecord> &d) -> nlohmann::json {
        if (!d) {
            return nullptr;
        }
        return {{"q_exp", d->q_exp}, {"diff", d->diff.to_string()}};
    };
    nlohmann::json j{{"schema", 1},
                     {"id", r.id},
                     {"order", r.order},
                     {"window", r.window},
                     {"shared_window", r.shared},
                     {"status", r.agree ? "agree" : (r.error.empty() ? "disagree" : "error")},
                     {"lhs_diff", diff(r.lhs_diff)},
                     {"rhs_diff", diff(r.rhs_diff)},
                     {"elapsed_ms", r.elapsed_ms}};
    if (!r.error.empty()) {
        j["error"] = r.error;
    }
    return j;
}

std::string oracle_to_text(const OracleResult &r)
{
    std::ostringstream os;
    os << r.id << "  order " << r.order << "  window " << r.window << " (shared " << r.shared << ")  ";
    if (!r.error.empty()) {
        os << "error: " << r.error;
    } else if (r.agree) {
        os << "windowed and exact paths agree";
    } else {
        if (r.lhs_diff) {
            os << "lhs differs at q^" << r.lhs_diff->q_exp << ": " << r.lhs_diff->diff.to_string() << "  ";
        }
        if (r.rhs_diff) {
            os << "rhs differs at q^" << r.rhs_diff->q_exp << ": " << r.rhs_diff->diff.to_string();
        }
    }
    return os.str();
}

} // namespace qtheta
