#ifndef QTHETA_ORACLE_HPP
#define QTHETA_ORACLE_HPP

#include <optional>
#include <string>

#include <qtheta/registry.hpp>

namespace qtheta
{

// Smallest variable window accepted for an oracle run at this order.
int required_window(int order);
// Radius on which windowed and exact results are compared.
int shared_window(int order, int window);

struct OracleResult {
    std::string id;
    int order = 0;
    int window = 0;
    int shared = 0;
    bool agree = false;
    std::optional<MismatchRecord> lhs_diff; // windowed vs exact, left side
    std::optional<MismatchRecord> rhs_diff;
    std::string error;
    double elapsed_ms = 0;
};

/// Expands the stated sides in windowed mode (non-unit inverses become
/// geometric series in the variables, 1/(1-x) = sum x^k, truncated to
/// exponents in [-window, window]) and compares them with the exact
/// normal-form evaluation on the shared window. Denominators 1/(1 - m q^e)
/// with e < 0 are expanded the same way, as sum (m q^e)^k up to the last
/// power inside the window. Throws UsageError when the window is below
/// required_window(order).
OracleResult oracle_identity(const Identity &id, int order, int window);

nlohmann::json oracle_to_json(const OracleResult &r);
std::string oracle_to_text(const OracleResult &r);

} // namespace qtheta

#endif
