#ifndef QTHETA_LAURENT_POLY_HPP
#define QTHETA_LAURENT_POLY_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <qtheta/rational.hpp>

namespace qtheta
{

// Formal variables of the coefficient ring, in storage order.
inline constexpr int kMaxVars = 4;
inline constexpr std::array<char, kMaxVars> kVarNames{'x', 'y', 'u', 'v'};

// Index of a variable name ('x' -> 0, ...), or -1.
int var_index(char name);

/// Exponent vector of a monomial in x, y, u, v.
struct ExpVec {
    std::array<std::int32_t, kMaxVars> e{};

    ExpVec() = default;
    ExpVec(std::initializer_list<std::int32_t> init);

    std::int32_t operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
    std::int32_t &operator[](int i) { return e[static_cast<std::size_t>(i)]; }

    bool is_zero() const { return e == std::array<std::int32_t, kMaxVars>{}; }
    // Highest variable index with a nonzero exponent, plus one.
    int used_arity() const;

    friend ExpVec operator+(const ExpVec &a, const ExpVec &b);
    friend ExpVec operator-(const ExpVec &a, const ExpVec &b);
    ExpVec operator-() const;
    ExpVec scaled(std::int32_t k) const;

    friend auto operator<=>(const ExpVec &, const ExpVec &) = default;
    friend bool operator==(const ExpVec &, const ExpVec &) = default;
};

struct Term {
    ExpVec exps;
    Rational coef;

    friend bool operator==(const Term &, const Term &) = default;
};

/// Sparse multivariate Laurent polynomial over the rationals.
///
/// Terms are kept sorted by exponent vector with no zero coefficients, so
/// two equal polynomials always have identical term lists. The arity is the
/// number of active variables (prefix of x, y, u, v); operands of binary
/// operations must agree on it.
class LaurentPoly
{
public:
    LaurentPoly() = default;
    explicit LaurentPoly(int arity);
    LaurentPoly(const Rational &c, int arity = kMaxVars);
    LaurentPoly(long long c) : LaurentPoly(Rational(c)) {}

    static LaurentPoly monomial(const Rational &c, const ExpVec &exps, int arity = kMaxVars);
    // The variable with the given index, with coefficient 1.
    static LaurentPoly variable(int index, int arity = kMaxVars);
    // Builds from arbitrary (possibly repeated, possibly zero) terms.
    static LaurentPoly from_terms(std::vector<Term> terms, int arity = kMaxVars);

    int arity() const { return arity_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    // Coefficient of the given monomial (zero when absent).
    Rational coeff(const ExpVec &exps) const;
    // Constant term.
    Rational constant_term() const { return coeff(ExpVec{}); }

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly &a, const LaurentPoly &b);
    friend LaurentPoly operator-(const LaurentPoly &a, const LaurentPoly &b);
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
    LaurentPoly &operator+=(const LaurentPoly &b);
    LaurentPoly &operator-=(const LaurentPoly &b);
    LaurentPoly &operator*=(const LaurentPoly &b) { return *this = *this * b; }

    // this += t * src, merging in place.
    void add_scaled(const Term &t, const LaurentPoly &src);
    LaurentPoly times_term(const Term &t) const;
    LaurentPoly scaled(const Rational &c) const;

    // Drops every term with some exponent outside [-radius, radius].
    void truncate_window(int radius);
    // True when every exponent lies inside [-radius, radius].
    bool within_window(int radius) const;
    // Keeps only terms whose exponents all lie inside [-radius, radius].
    LaurentPoly restricted(int radius) const;

    // Largest |exponent| of the variable over all terms (0 for constants).
    int max_abs_degree(int var) const;

    std::string to_string() const;
    // Parses the text produced by to_string (see docs/laurent-poly-grammar.md).
    static LaurentPoly parse(std::string_view text, int arity = kMaxVars);

    friend bool operator==(const LaurentPoly &, const LaurentPoly &) = default;

private:
    void check_arity(const LaurentPoly &other) const;
    void check_term_arity(const ExpVec &exps) const;

    std::vector<Term> terms_;
    int arity_ = kMaxVars;
};

std::ostream &operator<<(std::ostream &os, const LaurentPoly &p);

LaurentPoly lp_add(const LaurentPoly &p, const LaurentPoly &q);
LaurentPoly lp_mul(const LaurentPoly &p, const LaurentPoly &q);
// Inverse of a single-term polynomial c*m; throws NotAUnit otherwise.
LaurentPoly lp_invert_unit(const LaurentPoly &p);

// Sorts and merges repeated exponents, dropping zero coefficients.
void canonicalize_terms(std::vector<Term> &terms);

} // namespace qtheta

#endif
