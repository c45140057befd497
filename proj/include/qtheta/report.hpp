#ifndef QTHETA_REPORT_HPP
#define QTHETA_REPORT_HPP

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include <qtheta/qseries.hpp>

namespace qtheta
{

enum class Status { Pass, Mismatch, Error };

const char *status_name(Status s);
Status status_from_name(const std::string &s);

struct Report {
    std::string id;
    int order = 0;
    Status status = Status::Pass;
    std::optional<MismatchRecord> mismatch;
    std::map<std::string, long> n_max_used; // per sum, keyed by AST path
    double elapsed_ms = 0;
    std::string error;      // message when status == Error
    std::string error_kind; // NonEvaluable, NotAUnit, ...

    friend bool operator==(const Report &, const Report &) = default;
};

nlohmann::json report_to_json(const Report &r);
Report report_from_json(const nlohmann::json &j);
std::string report_to_text(const Report &r);

// Exit status of a batch: 0 all pass, 1 any mismatch, 3 any error.
int exit_code(const std::vector<Report> &reports);

} // namespace qtheta

#endif
