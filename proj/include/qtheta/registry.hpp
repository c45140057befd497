#ifndef QTHETA_REGISTRY_HPP
#define QTHETA_REGISTRY_HPP

#include <optional>
#include <string>
#include <vector>

#include <qtheta/evaluate.hpp>
#include <qtheta/expr.hpp>
#include <qtheta/report.hpp>

namespace qtheta
{

enum class Form { Stated, Cleared, Specialization };

const char *form_name(Form f);
Form form_from_name(const std::string &s);

/// A named equation between two expressions.
struct Identity {
    std::string id;
    std::string title;
    std::string reference; // where the statement comes from in the literature
    Expr lhs;
    Expr rhs;
    // Sides as stated, times the clearing multiplier. The windowed oracle
    // expands these directly; when absent it uses lhs/rhs.
    std::optional<Expr> stated_lhs;
    std::optional<Expr> stated_rhs;
    int base_div = 1;
    int default_order = 40;
    Form form = Form::Stated;
    std::string provenance; // clearing multiplier or bindings
    bool normalize = true;  // compare normal forms (false: evaluate as given)
};

/// Immutable list of identities.
class Catalog
{
public:
    Catalog() = default;
    explicit Catalog(std::vector<Identity> ids);

    static const Catalog &builtin();

    const Identity *find(const std::string &id) const;
    const Identity &at(const std::string &id) const; // throws UsageError
    const std::vector<Identity> &all() const { return ids_; }

private:
    std::vector<Identity> ids_;
};

// Both sides in the form that is evaluated.
Expr prepared_side(const Identity &id, bool left);

struct CheckOptions {
    bool parallel = true;
};

/// Evaluates both sides to q^order and compares them coefficient by
/// coefficient. Evaluation failures are reported with status Error.
Report check_identity(const Identity &id, int order, const CheckOptions &opts = {});
Report check_identity(const std::string &id, int order, const CheckOptions &opts = {});

/// New unregistered identity with the variables bound and q -> q^q_power
/// on both sides. Throws NonEvaluable when a side no longer validates.
Identity substitute_identity(const Identity &id, const Bindings &bindings, int q_power = 1);
Identity substitute_identity(const std::string &id, const Bindings &bindings, int q_power = 1);

const std::vector<Identity> &list_identities();

// Built-in catalog contents.
std::vector<Identity> builtin_identities();

} // namespace qtheta

#endif
