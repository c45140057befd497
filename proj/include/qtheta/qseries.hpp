#ifndef QTHETA_QSERIES_HPP
#define QTHETA_QSERIES_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <qtheta/laurent_poly.hpp>
#include <qtheta/rational.hpp>

namespace qtheta
{

// Radius of the variable-exponent window used by the windowed evaluation
// mode; empty means exact arithmetic.
using Window = std::optional<int>;

/// Monomial c * q^k * x^a y^b u^c v^d with a nonzero rational coefficient.
struct Monomial {
    Rational coef{1};
    int q = 0;
    ExpVec vars{};

    Monomial() = default;
    Monomial(Rational c, int q_exp, ExpVec v = {});

    static Monomial var(char name, int q_exp = 0, Rational c = Rational(1));

    Term term() const { return Term{vars, coef}; }
    Monomial inverse() const;
    Monomial pow(int k) const;
    Monomial times_q(int k) const { return Monomial(coef, q + k, vars); }
    bool is_one() const { return coef.is_one() && q == 0 && vars.is_zero(); }
    bool has_vars() const { return !vars.is_zero(); }

    std::string to_string() const;

    friend Monomial operator*(const Monomial &a, const Monomial &b);
    friend Monomial operator/(const Monomial &a, const Monomial &b) { return a * b.inverse(); }
    friend Monomial operator-(const Monomial &a) { return Monomial(-a.coef, a.q, a.vars); }
    friend bool operator==(const Monomial &, const Monomial &) = default;
    friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b);
};

/// Truncated Laurent series in q with LaurentPoly coefficients.
///
/// Coefficients are stored densely for exponents lo..order; every exponent
/// below lo is zero and nothing is known above order. Arithmetic never
/// claims a coefficient beyond what its inputs determine.
class QSeries
{
public:
    QSeries() : QSeries(0) {}
    // The zero series, valid through `order`.
    explicit QSeries(int order, int arity = kMaxVars, int base_div = 1);

    static QSeries constant(const LaurentPoly &c, int order, int base_div = 1);
    static QSeries monomial(const LaurentPoly &c, int q_exp, int order, int base_div = 1);
    static QSeries from_coeffs(int lo, int order, std::vector<LaurentPoly> coeffs, int base_div = 1);

    int lo() const { return lo_; }
    int order() const { return order_; }
    int base_div() const { return base_div_; }
    int arity() const { return arity_; }

    // Lowest exponent with a nonzero coefficient, or order + 1 for zero.
    int valuation() const;
    bool is_zero() const { return valuation() > order_; }

    // Coefficient of q^e for any e <= order (zero below lo).
    const LaurentPoly &at(int e) const;
    // Mutable access; extends the stored range downward when e < lo.
    LaurentPoly &ref(int e);

    QSeries truncated(int order) const;
    // Drops stored leading zero coefficients.
    void trim();
    // Applies LaurentPoly::truncate_window to every coefficient.
    void apply_window(const Window &w);

    // One line per exponent, `q^e : <poly>`, ascending.
    std::string dump() const;

    friend bool operator==(const QSeries &a, const QSeries &b);

private:
    int lo_ = 0;
    int order_ = 0;
    int base_div_ = 1;
    int arity_ = kMaxVars;
    std::vector<LaurentPoly> c_;
    LaurentPoly zero_;
};

struct MismatchRecord {
    int q_exp = 0;
    LaurentPoly diff;
    friend bool operator==(const MismatchRecord &, const MismatchRecord &) = default;
};

// max |deg_var(coefficient of q^e)| <= slope * max(e, 0) + intercept.
struct DegreeBound {
    Rational slope{0};
    Rational intercept{0};
};

QSeries qs_add(const QSeries &a, const QSeries &b, const Window &w = {});
QSeries qs_sub(const QSeries &a, const QSeries &b, const Window &w = {});
QSeries qs_neg(const QSeries &a);
QSeries qs_scale(const QSeries &a, const LaurentPoly &c, const Window &w = {});
// Shifts every exponent by k (multiplication by q^k).
QSeries qs_shift(const QSeries &a, int k);

// Cauchy product; OpenMP-parallel over output exponents.
QSeries qs_mul(const QSeries &a, const QSeries &b, const Window &w = {});
// Serial reference implementation of qs_mul.
QSeries qs_mul_serial(const QSeries &a, const QSeries &b, const Window &w = {});

// Inverse with n_terms coefficients past the leading one. The leading
// coefficient must be a monomial unit in exact mode; in windowed mode a
// polynomial with a nonzero constant term is expanded geometrically.
QSeries qs_invert(const QSeries &a, int n_terms, const Window &w = {});
// Inverse carried to the largest order the input supports.
QSeries qs_invert_full(const QSeries &a, const Window &w = {});

QSeries qs_subst_q_power(const QSeries &a, int k);
// Replaces var^d by (m)^d in every coefficient. When m carries a q-power the
// result order is derived from `bound`; without one the call refuses.
QSeries qs_subst_var(const QSeries &a, char var, const Monomial &m,
                     const std::optional<DegreeBound> &bound = std::nullopt);

LaurentPoly qs_coeff(const QSeries &a, int e);
std::optional<MismatchRecord> qs_diff_report(const QSeries &a, const QSeries &b);

// Window helpers.
// sum_{k>=0} m^k truncated to the window; m must carry some variable or be a
// constant different from 1.
LaurentPoly window_geometric(const Term &m, int radius);
// Expansion of 1/p around its constant term: 1/p = c^-1 sum_k r^k with
// r = 1 - p/c, truncated to the window.
LaurentPoly window_inverse(const LaurentPoly &p, int radius);

} // namespace qtheta

#endif
