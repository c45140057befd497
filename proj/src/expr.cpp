#include <qtheta/expr.hpp>

#include <algorithm>
#include <sstream>

#include <qtheta/errors.hpp>

namespace qtheta
{

namespace
{

std::shared_ptr<Node> make(Expr::Kind k)
{
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}

std::string affine_str(const Affine &a) { return "(" + std::to_string(a.a) + "n" + (a.b < 0 ? "" : "+") + std::to_string(a.b) + ")"; }

std::string range_str(const SumRange &r)
{
    std::string s = r.from ? "[" + std::to_string(*r.from) : "(-inf";
    s += ",";
    s += r.to ? std::to_string(*r.to) + "]" : "inf)";
    return s;
}

} // namespace

Expr::Expr() : Expr(constant(LaurentPoly(Rational(0)))) {}

Expr Expr::constant(const LaurentPoly &c)
{
    auto n = make(Kind::Const);
    n->poly = c;
    return Expr(n);
}

Expr Expr::mono(const Monomial &m)
{
    auto n = make(Kind::Mono);
    n->mono = m;
    return Expr(n);
}

Expr Expr::add(std::vector<Expr> kids)
{
    if (kids.empty()) {
        return constant(Rational(0));
    }
    auto n = make(Kind::Add);
    n->kids = std::move(kids);
    return Expr(n);
}

Expr Expr::mul(std::vector<Expr> kids)
{
    if (kids.empty()) {
        return constant(Rational(1));
    }
    auto n = make(Kind::Mul);
    n->kids = std::move(kids);
    return Expr(n);
}

Expr Expr::neg(const Expr &e)
{
    auto n = make(Kind::Neg);
    n->kids = {e};
    return Expr(n);
}

Expr Expr::poch_inf(const Monomial &m, int step)
{
    if (step < 1) {
        throw UsageError("Pochhammer step must be positive");
    }
    auto n = make(Kind::PochInf);
    n->mono = m;
    n->step = step;
    return Expr(n);
}

Expr Expr::poch_fin(const Param &p, long length, int step)
{
    if (step < 1 || length < 0) {
        throw UsageError("finite Pochhammer needs step >= 1 and length >= 0");
    }
    auto n = make(Kind::PochFin);
    n->param = p;
    n->length = length;
    n->step = step;
    return Expr(n);
}

Expr Expr::sum(SumSpec spec)
{
    check_spec(spec);
    auto n = make(Kind::Sum);
    n->spec = std::move(spec);
    return Expr(n);
}

Expr Expr::inv(const Expr &e)
{
    auto n = make(Kind::Inv);
    n->kids = {e};
    return Expr(n);
}

Expr::Kind Expr::kind() const { return node_->kind; }
const LaurentPoly &Expr::poly() const { return node_->poly; }
const Monomial &Expr::monomial() const { return node_->mono; }
const Param &Expr::param() const { return node_->param; }
long Expr::length() const { return node_->length; }
int Expr::step() const { return node_->step; }
const SumSpec &Expr::spec() const { return node_->spec; }
const std::vector<Expr> &Expr::kids() const { return node_->kids; }

const char *kind_name(Expr::Kind k)
{
    switch (k) {
    case Expr::Kind::Const: return "Const";
    case Expr::Kind::Mono: return "Mono";
    case Expr::Kind::Add: return "Add";
    case Expr::Kind::Mul: return "Mul";
    case Expr::Kind::Neg: return "Neg";
    case Expr::Kind::PochInf: return "PochInf";
    case Expr::Kind::PochFin: return "PochFin";
    case Expr::Kind::Sum: return "Sum";
    case Expr::Kind::Inv: return "Inv";
    }
    return "?";
}

std::string to_string(const Param &p)
{
    if (p.kind == Param::Kind::PairSqrt) {
        return "pm_sqrt(" + p.m.to_string() + ")";
    }
    return p.m.to_string();
}

std::string to_string(const SumSpec &s)
{
    std::ostringstream os;
    os << "n in " << range_str(s.range);
    if (s.alternating) {
        os << "; (-1)^n";
    }
    os << "; q^((" << s.quad.A << "n^2+" << s.quad.B << "n+" << s.quad.C << ")/2)";
    if (s.power2) {
        os << "; ([" << s.power.to_string() << "]^n-[" << s.power2->to_string() << "]^n)/(["
           << s.power.to_string() << "]-[" << s.power2->to_string() << "])";
    } else {
        os << "; [" << s.power.to_string() << "]^n";
    }
    if (!s.weight.empty()) {
        os << "; weight";
        for (long w : s.weight) {
            os << " " << w;
        }
    }
    for (const auto &f : s.factors) {
        os << "; " << (f.side == Side::Numerator ? "num" : "den") << "(" << to_string(f.param) << " q^"
           << affine_str(f.shift) << ";q^" << f.step << ")_" << affine_str(f.length);
    }
    for (const auto &t : s.tails) {
        os << "; tail(" << t.base.to_string() << " q^" << affine_str(t.shift) << ";q^" << t.step << ")_inf";
    }
    return os.str();
}

std::string Expr::to_string() const
{
    switch (kind()) {
    case Kind::Const: return "Const(" + poly().to_string() + ")";
    case Kind::Mono: return "Mono(" + monomial().to_string() + ")";
    case Kind::PochInf: return "PochInf(" + monomial().to_string() + ";q^" + std::to_string(step()) + ")";
    case Kind::PochFin:
        return "PochFin(" + qtheta::to_string(param()) + ";q^" + std::to_string(step()) + ")_"
               + std::to_string(length());
    case Kind::Sum: return "Sum{" + qtheta::to_string(spec()) + "}";
    default: break;
    }
    std::string s = kind_name(kind());
    s += "[";
    for (std::size_t i = 0; i < kids().size(); ++i) {
        s += (i ? ", " : "") + kids()[i].to_string();
    }
    return s + "]";
}

bool operator==(const Expr &a, const Expr &b)
{
    return a.node_ == b.node_ || a.to_string() == b.to_string();
}

Expr operator+(const Expr &a, const Expr &b) { return Expr::add({a, b}); }
Expr operator-(const Expr &a, const Expr &b) { return Expr::add({a, Expr::neg(b)}); }
Expr operator*(const Expr &a, const Expr &b) { return Expr::mul({a, b}); }
Expr operator-(const Expr &a) { return Expr::neg(a); }

Monomial substitute(const Monomial &m, const Bindings &bindings, int q_power)
{
    Monomial r(m.coef, m.q);
    for (int i = 0; i < kMaxVars; ++i) {
        int k = m.vars[i];
        if (k == 0) {
            continue;
        }
        char name = kVarNames[static_cast<std::size_t>(i)];
        auto it = bindings.find(name);
        if (it == bindings.end()) {
            ExpVec v;
            v[i] = k;
            r = r * Monomial(Rational(1), 0, v);
        } else {
            r = r * it->second.pow(k);
        }
    }
    return Monomial(r.coef, r.q * q_power, r.vars);
}

namespace
{

Affine scaled(const Affine &a, int k) { return {a.a * k, a.b * k}; }

Param substitute(const Param &p, const Bindings &b, int k) { return {p.kind, substitute(p.m, b, k)}; }

SumSpec substitute(const SumSpec &s, const Bindings &b, int k)
{
    SumSpec r = s;
    r.quad = {s.quad.A * k, s.quad.B * k, s.quad.C * k};
    r.power = substitute(s.power, b, k);
    if (s.power2) {
        r.power2 = substitute(*s.power2, b, k);
    }
    for (auto &f : r.factors) {
        f.param = substitute(f.param, b, k);
        f.shift = scaled(f.shift, k);
        f.step *= k;
    }
    for (auto &t : r.tails) {
        t.base = substitute(t.base, b, k);
        t.shift = scaled(t.shift, k);
        t.step *= k;
    }
    return r;
}

} // namespace

Expr substitute(const Expr &e, const Bindings &b, int k)
{
    if (k < 1) {
        throw UsageError("q-power substitution needs a positive exponent");
    }
    switch (e.kind()) {
    case Expr::Kind::Const: {
        std::vector<Expr> terms;
        bool q_free = true;
        for (const auto &t : e.poly().terms()) {
            Monomial m = substitute(Monomial(t.coef, 0, t.exps), b, k);
            q_free = q_free && m.q == 0;
            terms.push_back(Expr::mono(m));
        }
        if (q_free) {
            LaurentPoly p(e.poly().arity());
            for (const auto &t : terms) {
                p += LaurentPoly::monomial(t.monomial().coef, t.monomial().vars, p.arity());
            }
            return Expr::constant(p);
        }
        return terms.size() == 1 ? terms.front() : Expr::add(std::move(terms));
    }
    case Expr::Kind::Mono: return Expr::mono(substitute(e.monomial(), b, k));
    case Expr::Kind::PochInf: return Expr::poch_inf(substitute(e.monomial(), b, k), e.step() * k);
    case Expr::Kind::PochFin: return Expr::poch_fin(substitute(e.param(), b, k), e.length(), e.step() * k);
    case Expr::Kind::Sum: return Expr::sum(substitute(e.spec(), b, k));
    case Expr::Kind::Neg: return Expr::neg(substitute(e.kids()[0], b, k));
    case Expr::Kind::Inv: return Expr::inv(substitute(e.kids()[0], b, k));
    case Expr::Kind::Add:
    case Expr::Kind::Mul: {
        std::vector<Expr> kids;
        for (const auto &c : e.kids()) {
            kids.push_back(substitute(c, b, k));
        }
        return e.kind() == Expr::Kind::Add ? Expr::add(std::move(kids)) : Expr::mul(std::move(kids));
    }
    }
    return e;
}

namespace
{

int mono_arity(const Monomial &m) { return m.vars.used_arity(); }

} // namespace

int expr_arity(const Expr &e)
{
    int a = 0;
    switch (e.kind()) {
    case Expr::Kind::Const:
        for (const auto &t : e.poly().terms()) {
            a = std::max(a, t.exps.used_arity());
        }
        break;
    case Expr::Kind::Mono:
    case Expr::Kind::PochInf: a = mono_arity(e.monomial()); break;
    case Expr::Kind::PochFin: a = mono_arity(e.param().m); break;
    case Expr::Kind::Sum: {
        const auto &s = e.spec();
        a = mono_arity(s.power);
        if (s.power2) {
            a = std::max(a, mono_arity(*s.power2));
        }
        for (const auto &f : s.factors) {
            a = std::max(a, mono_arity(f.param.m));
        }
        for (const auto &t : s.tails) {
            a = std::max(a, mono_arity(t.base));
        }
        break;
    }
    default:
        for (const auto &c : e.kids()) {
            a = std::max(a, expr_arity(c));
        }
    }
    return a;
}

} // namespace qtheta
