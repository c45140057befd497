#ifndef QTHETA_REWRITE_HPP
#define QTHETA_REWRITE_HPP

#include <vector>

#include <qtheta/expr.hpp>

namespace qtheta
{

/// Rewrites an expression to evaluable normal form:
///   - paired square roots become plain base-q^(2s) factors, and a pair
///     (m;q^2s)_L (mq^s;q^2s)_L merges into (m;q^s)_2L;
///   - a valuation-0 square denominator (m^2;q^2s)_L splits into
///     (m;q^s)_L (-m;q^s)_L;
///   - (m;q^s)_inf times a sum with denominator (m;q^s)_L(n) becomes a
///     per-summand tail (m q^(sL(n));q^s)_inf;
///   - a numerator (m;q^s)_L1 over a denominator (mq^(sk);q^s)_L2 cancels
///     to (m;q^s)_k (m q^(s(k+L2));q^s)_(L1-k-L2), peeling leading indices
///     off the range when the lengths are not yet ordered there;
///   - inverses distribute over products and cancel in pairs.
/// Children of sums and products are sorted, so equal values built in
/// different orders produce identical trees.
Expr normalize(const Expr &e);

// Factor-level pieces of the normal form, exposed for testing.
SumSpec canonical_factors(SumSpec s);
std::vector<SumSpec> cancel_factors(const SumSpec &s);

} // namespace qtheta

#endif
