#ifndef QTHETA_EXPR_HPP
#define QTHETA_EXPR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <qtheta/qblocks.hpp>

namespace qtheta
{

struct Node;

/// Immutable expression tree for q-series objects. Copies share structure
/// and are safe to pass between threads.
class Expr
{
public:
    enum class Kind { Const, Mono, Add, Mul, Neg, PochInf, PochFin, Sum, Inv };

    Expr();

    static Expr constant(const LaurentPoly &c);
    static Expr constant(const Rational &c) { return constant(LaurentPoly(c)); }
    static Expr mono(const Monomial &m);
    static Expr add(std::vector<Expr> kids);
    static Expr mul(std::vector<Expr> kids);
    static Expr neg(const Expr &e);
    static Expr poch_inf(const Monomial &m, int step = 1);
    static Expr poch_fin(const Param &p, long length, int step = 1);
    static Expr poch_fin(const Monomial &m, long length, int step = 1) { return poch_fin(Param::mono(m), length, step); }
    static Expr sum(SumSpec spec);
    static Expr inv(const Expr &e);

    Kind kind() const;
    const LaurentPoly &poly() const;      // Const
    const Monomial &monomial() const;     // Mono, PochInf
    const Param &param() const;           // PochFin
    long length() const;                  // PochFin
    int step() const;                     // PochInf, PochFin
    const SumSpec &spec() const;          // Sum
    const std::vector<Expr> &kids() const; // Add, Mul, Neg, Inv

    // Canonical one-line rendering; equal strings mean equal trees.
    std::string to_string() const;

    friend bool operator==(const Expr &a, const Expr &b);

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Node {
    Expr::Kind kind = Expr::Kind::Const;
    LaurentPoly poly;
    Monomial mono;
    Param param;
    long length = 0;
    int step = 1;
    SumSpec spec;
    std::vector<Expr> kids;
};

Expr operator+(const Expr &a, const Expr &b);
Expr operator-(const Expr &a, const Expr &b);
Expr operator*(const Expr &a, const Expr &b);
Expr operator-(const Expr &a);

const char *kind_name(Expr::Kind k);

std::string to_string(const SumSpec &spec);
std::string to_string(const Param &p);

/// Variable bindings for substitution: var -> monomial (which may carry a
/// q-power).
using Bindings = std::map<char, Monomial>;

// Substitutes variables simultaneously, then q -> q^q_power, throughout the
// tree.
Expr substitute(const Expr &e, const Bindings &bindings, int q_power = 1);
Monomial substitute(const Monomial &m, const Bindings &bindings, int q_power = 1);

// Largest variable index used anywhere in the tree, plus one.
int expr_arity(const Expr &e);

} // namespace qtheta

#endif
