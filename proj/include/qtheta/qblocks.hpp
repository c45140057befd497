#ifndef QTHETA_QBLOCKS_HPP
#define QTHETA_QBLOCKS_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <qtheta/qseries.hpp>

namespace qtheta
{

/// Parameter of a Pochhammer factor: a plain monomial, or the joint pair of
/// square roots +-sqrt(m). A pair contributes (m; q^(2*step))_n, so no
/// square root is ever taken and an unpaired root cannot be written down.
struct Param {
    enum class Kind { Mono, PairSqrt };
    Kind kind = Kind::Mono;
    Monomial m;

    static Param mono(const Monomial &m) { return {Kind::Mono, m}; }
    static Param pair_sqrt(const Monomial &m) { return {Kind::PairSqrt, m}; }

    friend bool operator==(const Param &, const Param &) = default;
    friend auto operator<=>(const Param &, const Param &) = default;
};

// a*n + b as a function of the summation index.
struct Affine {
    long a = 0;
    long b = 0;
    long operator()(long n) const { return a * n + b; }
    friend bool operator==(const Affine &, const Affine &) = default;
    friend auto operator<=>(const Affine &, const Affine &) = default;
};

enum class Side { Numerator, Denominator };

/// (param * q^shift(n); q^step)_length(n) on one side of a summand.
struct PochFactor {
    Param param;
    Affine shift{};
    Affine length{};
    int step = 1;
    Side side = Side::Numerator;

    friend bool operator==(const PochFactor &, const PochFactor &) = default;
    friend auto operator<=>(const PochFactor &, const PochFactor &) = default;
};

/// (base * q^shift(n); q^step)_infinity attached to a summand.
struct TailFactor {
    Monomial base;
    Affine shift{};
    int step = 1;

    friend bool operator==(const TailFactor &, const TailFactor &) = default;
    friend auto operator<=>(const TailFactor &, const TailFactor &) = default;
};

// Summation range; an empty bound is infinite on that side.
struct SumRange {
    std::optional<long> from;
    std::optional<long> to;

    static SumRange non_negative() { return {0, std::nullopt}; }
    static SumRange from_one() { return {1, std::nullopt}; }
    static SumRange all_integers() { return {std::nullopt, std::nullopt}; }
    static SumRange single(long n) { return {n, n}; }

    bool contains(long n) const { return (!from || n >= *from) && (!to || n <= *to); }
    friend bool operator==(const SumRange &, const SumRange &) = default;
};

// q-exponent (A n^2 + B n + C) / 2; A + B and C must be even.
struct QuadExp {
    long A = 0;
    long B = 0;
    long C = 0;
    long operator()(long n) const { return (A * n * n + B * n + C) / 2; }
    static QuadExp binom2() { return {1, -1, 0}; }
    friend bool operator==(const QuadExp &, const QuadExp &) = default;
};

/// One summand family:
///   sum_n sign(n) * weight(n) * q^quad(n) * P(n) * prod factors * prod tails
/// where P(n) = power^n, or (power^n - power2^n) / (power - power2) when a
/// second power is given.
struct SumSpec {
    SumRange range = SumRange::non_negative();
    bool alternating = false;
    QuadExp quad{};
    Monomial power{};
    std::optional<Monomial> power2;
    std::vector<long> weight; // coefficients in n, lowest first; empty = 1
    std::vector<PochFactor> factors;
    std::vector<TailFactor> tails;

    friend bool operator==(const SumSpec &, const SumSpec &) = default;
};

// Shorthands for building sum specs.
PochFactor num(const Param &p, Affine length, int step = 1, Affine shift = {});
PochFactor den(const Param &p, Affine length, int step = 1, Affine shift = {});
PochFactor num(const Monomial &m, Affine length, int step = 1, Affine shift = {});
PochFactor den(const Monomial &m, Affine length, int step = 1, Affine shift = {});

SumSpec partial_theta_spec(const Monomial &m);
SumSpec complete_theta_spec(const Monomial &m);
// sum_j (uppers)_j / (q^s, lowers)_j * arg^j in base q^s.
SumSpec hypergeometric_spec(const std::vector<Param> &uppers, const std::vector<Param> &lowers, const Monomial &arg,
                            int base_step = 1);

// Structural checks (parity, nonnegative lengths, steps); throws UsageError.
void check_spec(const SumSpec &spec);

// Lower bound on the q-valuation of summand n.
long valuation_bound(const SumSpec &spec, long n);

// Indices n whose valuation bound is <= order. Throws DivergentBound when
// the bound does not tend to infinity over the range.
std::vector<long> summation_indices(const SumSpec &spec, int order);
// Minimum of the valuation bound over the whole range.
long min_valuation_bound(const SumSpec &spec);

// Exact-mode evaluability of the denominators; returns a diagnostic for the
// first offending factor.
std::optional<std::string> denominator_diagnostic(const SumSpec &spec);

// Single summand, valid to `order`.
QSeries sum_term(const SumSpec &spec, long n, int order, const Window &w = {});

struct SumStats {
    long n_min = 0;
    long n_max = 0;
    std::size_t terms = 0;
};

// Summation over all contributing n; OpenMP-parallel over summands.
QSeries sum_eval(const SumSpec &spec, int order, const Window &w = {}, SumStats *stats = nullptr);
// Serial reference for sum_eval.
QSeries sum_eval_serial(const SumSpec &spec, int order, const Window &w = {}, SumStats *stats = nullptr);

QSeries poch_finite(const Param &p, long length, int step, int order, const Window &w = {});
QSeries poch_infinite(const Monomial &m, int step, int order, const Window &w = {});
QSeries theta_partial(const Monomial &m, int order);
QSeries theta_complete(const Monomial &m, int order);
QSeries gauss_binom(long top, long bottom, int order);
QSeries hypergeometric(const std::vector<Param> &uppers, const std::vector<Param> &lowers, const Monomial &arg,
                       int order, int base_step = 1);

} // namespace qtheta

#endif
