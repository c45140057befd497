#include <qtheta/report.hpp>

#include <sstream>

#include <qtheta/errors.hpp>

namespace qtheta
{

const char *status_name(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Mismatch: return "mismatch";
    case Status::Error: return "error";
    }
    return "error";
}

Status status_from_name(const std::string &s)
{
    if (s == "pass") {
        return Status::Pass;
    }
    if (s == "mismatch") {
        return Status::Mismatch;
    }
    if (s == "error") {
        return Status::Error;
    }
    throw UsageError("unknown report status '" + s + "'");
}

nlohmann::json report_to_json(const Report &r)
{
    nlohmann::json j;
    j["schema"] = 1;
    j["id"] = r.id;
    j["order"] = r.order;
    j["status"] = status_name(r.status);
    if (r.mismatch) {
        j["mismatch"] = {{"q_exp", r.mismatch->q_exp}, {"diff", r.mismatch->diff.to_string()}};
    } else {
        j["mismatch"] = nullptr;
    }
    j["n_max_used"] = r.n_max_used;
    j["elapsed_ms"] = r.elapsed_ms;
    if (r.status == Status::Error) {
        j["error"] = r.error;
        j["error_kind"] = r.error_kind;
    }
    return j;
}

Report report_from_json(const nlohmann::json &j)
{
    if (j.value("schema", 0) != 1) {
        throw UsageError("unsupported report schema");
    }
    Report r;
    r.id = j.at("id").get<std::string>();
    r.order = j.at("order").get<int>();
    r.status = status_from_name(j.at("status").get<std::string>());
    if (j.contains("mismatch") && !j["mismatch"].is_null()) {
        const auto &m = j["mismatch"];
        r.mismatch = MismatchRecord{m.at("q_exp").get<int>(), LaurentPoly::parse(m.at("diff").get<std::string>())};
    }
    r.n_max_used = j.at("n_max_used").get<std::map<std::string, long>>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.error = j.value("error", "");
    r.error_kind = j.value("error_kind", "");
    return r;
}

std::string report_to_text(const Report &r)
{
    std::ostringstream os;
    os << r.id << "  order " << r.order << "  " << status_name(r.status);
    if (r.mismatch) {
        os << "  first difference at q^" << r.mismatch->q_exp << ": " << r.mismatch->diff.to_string();
    }
    if (r.status == Status::Error) {
        os << "  [" << r.error_kind << "] " << r.error;
    }
    os.setf(std::ios::fixed);
    os.precision(1);
    os << "  (" << r.elapsed_ms << " ms)";
    return os.str();
}

int exit_code(const std::vector<Report> &reports)
{
    int code = 0;
    for (const auto &r : reports) {
        if (r.status == Status::Error) {
            code = 3;
        } else if (r.status == Status::Mismatch && code == 0) {
            code = 1;
        }
    }
    return code;
}

} // namespace qtheta
