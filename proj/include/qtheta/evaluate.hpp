#ifndef QTHETA_EVALUATE_HPP
#define QTHETA_EVALUATE_HPP

#include <string>
#include <vector>

#include <qtheta/expr.hpp>

namespace qtheta
{

struct EvalOptions {
    Window window;        // windowed (oracle) mode when set
    bool parallel = true; // OpenMP over summands
};

struct SumUse {
    std::string path;
    long n_min = 0;
    long n_max = 0;
    std::size_t terms = 0;
};

struct EvalStats {
    std::vector<SumUse> sums;
};

/// Evaluates e to q^order. Errors carry the AST path of the failing node,
/// rooted at `root`.
QSeries eval_expr(const Expr &e, int order, const EvalOptions &opts = {}, EvalStats *stats = nullptr,
                  const std::string &root = "expr");

// Lower bound on the q-valuation of e. Inverses are probed for their exact
// valuation.
long valuation_lower_bound(const Expr &e, const EvalOptions &opts = {});

struct Validation {
    bool ok = true;
    std::string diagnostic;               // first violation, with its path
    std::vector<std::string> certificate; // per-node bounds used
};

/// Checks that every inverse has a monomial-unit leading coefficient, every
/// denominator factor is geometrically invertible and every sum has a
/// divergent valuation bound.
Validation validate_evaluable(const Expr &e, const std::string &root = "expr");

} // namespace qtheta

#endif
