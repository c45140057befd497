#include <qtheta/laurent_poly.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <ostream>

#include <qtheta/errors.hpp>

namespace qtheta
{

int var_index(char name)
{
    for (int i = 0; i < kMaxVars; ++i) {
        if (kVarNames[static_cast<std::size_t>(i)] == name) {
            return i;
        }
    }
    return -1;
}

ExpVec::ExpVec(std::initializer_list<std::int32_t> init)
{
    if (init.size() > static_cast<std::size_t>(kMaxVars)) {
        throw UsageError("too many exponents for ExpVec");
    }
    std::copy(init.begin(), init.end(), e.begin());
}

int ExpVec::used_arity() const
{
    for (int i = kMaxVars; i > 0; --i) {
        if (e[static_cast<std::size_t>(i - 1)] != 0) {
            return i;
        }
    }
    return 0;
}

ExpVec operator+(const ExpVec &a, const ExpVec &b)
{
    ExpVec r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.e[i] = a.e[i] + b.e[i];
    }
    return r;
}

ExpVec operator-(const ExpVec &a, const ExpVec &b)
{
    ExpVec r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.e[i] = a.e[i] - b.e[i];
    }
    return r;
}

ExpVec ExpVec::operator-() const { return ExpVec{} - *this; }

ExpVec ExpVec::scaled(std::int32_t k) const
{
    ExpVec r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.e[i] = e[i] * k;
    }
    return r;
}

void canonicalize_terms(std::vector<Term> &terms)
{
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.exps < b.exps; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        Rational c = terms[i].coef;
        while (j < terms.size() && terms[j].exps == terms[i].exps) {
            c += terms[j].coef;
            ++j;
        }
        if (!c.is_zero()) {
            terms[out].exps = terms[i].exps;
            terms[out].coef = std::move(c);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

LaurentPoly::LaurentPoly(int arity) : arity_(arity)
{
    if (arity < 0 || arity > kMaxVars) {
        throw UsageError("arity must lie in [0, 4]");
    }
}

LaurentPoly::LaurentPoly(const Rational &c, int arity) : LaurentPoly(arity)
{
    if (!c.is_zero()) {
        terms_.push_back({ExpVec{}, c});
    }
}

LaurentPoly LaurentPoly::monomial(const Rational &c, const ExpVec &exps, int arity)
{
    LaurentPoly p(arity);
    p.check_term_arity(exps);
    if (!c.is_zero()) {
        p.terms_.push_back({exps, c});
    }
    return p;
}

LaurentPoly LaurentPoly::variable(int index, int arity)
{
    if (index < 0 || index >= arity) {
        throw UsageError("variable index outside arity");
    }
    ExpVec e;
    e[index] = 1;
    return monomial(Rational(1), e, arity);
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms, int arity)
{
    LaurentPoly p(arity);
    for (const auto &t : terms) {
        p.check_term_arity(t.exps);
    }
    canonicalize_terms(terms);
    p.terms_ = std::move(terms);
    return p;
}

void LaurentPoly::check_arity(const LaurentPoly &other) const
{
    if (arity_ != other.arity_) {
        throw UsageError("Laurent polynomial arity mismatch (" + std::to_string(arity_) + " vs "
                         + std::to_string(other.arity_) + ")");
    }
}

void LaurentPoly::check_term_arity(const ExpVec &exps) const
{
    if (exps.used_arity() > arity_) {
        throw UsageError("monomial uses a variable beyond the polynomial arity");
    }
}

Rational LaurentPoly::coeff(const ExpVec &exps) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                               [](const Term &t, const ExpVec &e) { return t.exps < e; });
    if (it != terms_.end() && it->exps == exps) {
        return it->coef;
    }
    return Rational(0);
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly r = *this;
    for (auto &t : r.terms_) {
        t.coef = -t.coef;
    }
    return r;
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &b)
{
    add_scaled(Term{ExpVec{}, Rational(1)}, b);
    return *this;
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &b)
{
    add_scaled(Term{ExpVec{}, Rational(-1)}, b);
    return *this;
}

LaurentPoly operator+(const LaurentPoly &a, const LaurentPoly &b)
{
    LaurentPoly r = a;
    r += b;
    return r;
}

LaurentPoly operator-(const LaurentPoly &a, const LaurentPoly &b)
{
    LaurentPoly r = a;
    r -= b;
    return r;
}

void LaurentPoly::add_scaled(const Term &t, const LaurentPoly &src)
{
    check_arity(src);
    if (src.terms_.empty() || t.coef.is_zero()) {
        return;
    }
    check_term_arity(t.exps);
    if (terms_.empty()) {
        terms_.reserve(src.terms_.size());
        for (const auto &s : src.terms_) {
            terms_.push_back({s.exps + t.exps, s.coef * t.coef});
        }
        return;
    }
    // Shifting by a fixed exponent vector preserves the lexicographic order,
    // so this is a plain sorted merge.
    std::vector<Term> out;
    out.reserve(terms_.size() + src.terms_.size());
    auto a = terms_.begin();
    auto b = src.terms_.begin();
    bool unit = t.coef.is_one();
    while (a != terms_.end() || b != src.terms_.end()) {
        if (b == src.terms_.end()) {
            out.push_back(std::move(*a++));
            continue;
        }
        ExpVec be = b->exps + t.exps;
        if (a == terms_.end() || be < a->exps) {
            out.push_back({be, unit ? b->coef : b->coef * t.coef});
            ++b;
        } else if (a->exps < be) {
            out.push_back(std::move(*a++));
        } else {
            Rational c = a->coef + (unit ? b->coef : b->coef * t.coef);
            if (!c.is_zero()) {
                out.push_back({be, std::move(c)});
            }
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
}

LaurentPoly LaurentPoly::times_term(const Term &t) const
{
    LaurentPoly r(arity_);
    r.add_scaled(t, *this);
    return r;
}

LaurentPoly LaurentPoly::scaled(const Rational &c) const { return times_term(Term{ExpVec{}, c}); }

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
{
    a.check_arity(b);
    if (a.is_zero() || b.is_zero()) {
        return LaurentPoly(a.arity_);
    }
    if (a.terms_.size() == 1) {
        return b.times_term(a.terms_.front());
    }
    if (b.terms_.size() == 1) {
        return a.times_term(b.terms_.front());
    }
    std::vector<Term> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &s : a.terms_) {
        for (const auto &t : b.terms_) {
            acc.push_back({s.exps + t.exps, s.coef * t.coef});
        }
    }
    canonicalize_terms(acc);
    LaurentPoly r(a.arity_);
    r.terms_ = std::move(acc);
    return r;
}

void LaurentPoly::truncate_window(int radius)
{
    std::erase_if(terms_, [radius](const Term &t) {
        for (auto v : t.exps.e) {
            if (v < -radius || v > radius) {
                return true;
            }
        }
        return false;
    });
}

bool LaurentPoly::within_window(int radius) const
{
    for (const auto &t : terms_) {
        for (auto v : t.exps.e) {
            if (v < -radius || v > radius) {
                return false;
            }
        }
    }
    return true;
}

LaurentPoly LaurentPoly::restricted(int radius) const
{
    LaurentPoly r = *this;
    r.truncate_window(radius);
    return r;
}

int LaurentPoly::max_abs_degree(int var) const
{
    int m = 0;
    for (const auto &t : terms_) {
        m = std::max(m, std::abs(t.exps[var]));
    }
    return m;
}

std::string LaurentPoly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto &t : terms_) {
        if (first) {
            s += t.coef.to_string();
        } else if (t.coef.sign() < 0) {
            s += " - " + (-t.coef).to_string();
        } else {
            s += " + " + t.coef.to_string();
        }
        first = false;
        for (int i = 0; i < kMaxVars; ++i) {
            if (t.exps[i] != 0) {
                s += " * ";
                s += kVarNames[static_cast<std::size_t>(i)];
                s += "^" + std::to_string(t.exps[i]);
            }
        }
    }
    return s;
}

namespace
{

class PolyParser
{
public:
    PolyParser(std::string_view text, int arity) : s_(text), arity_(arity) {}

    LaurentPoly parse()
    {
        std::vector<Term> terms;
        skip();
        if (at_end()) {
            fail("empty polynomial");
        }
        int sign = 1;
        if (peek() == '-' || peek() == '+') {
            sign = get() == '-' ? -1 : 1;
        }
        terms.push_back(term(sign));
        skip();
        while (!at_end()) {
            char c = get();
            if (c != '+' && c != '-') {
                fail("expected '+' or '-'");
            }
            terms.push_back(term(c == '-' ? -1 : 1));
            skip();
        }
        return LaurentPoly::from_terms(std::move(terms), arity_);
    }

private:
    Term term(int sign)
    {
        Term t{ExpVec{}, Rational(sign)};
        factor(t);
        skip();
        while (!at_end() && peek() == '*') {
            get();
            factor(t);
            skip();
        }
        return t;
    }

    void factor(Term &t)
    {
        skip();
        if (at_end()) {
            fail("unexpected end of input");
        }
        char c = peek();
        int vi = var_index(c);
        if (vi >= 0) {
            get();
            if (vi >= arity_) {
                fail(std::string("variable '") + c + "' beyond arity");
            }
            long long e = 1;
            skip();
            if (!at_end() && peek() == '^') {
                get();
                e = integer();
            }
            t.exps[vi] += static_cast<std::int32_t>(e);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            std::size_t start = pos_;
            if (c == '-') {
                get();
            }
            while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) {
                get();
            }
            t.coef *= Rational::parse(s_.substr(start, pos_ - start));
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    long long integer()
    {
        skip();
        std::size_t start = pos_;
        if (!at_end() && (peek() == '-' || peek() == '+')) {
            get();
        }
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            get();
        }
        std::string tok(s_.substr(start, pos_ - start));
        if (tok.empty() || tok == "-" || tok == "+") {
            fail("expected integer exponent");
        }
        return std::stoll(tok);
    }

    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    char get() { return s_[pos_++]; }
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw UsageError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int arity_;
};

} // namespace

LaurentPoly LaurentPoly::parse(std::string_view text, int arity) { return PolyParser(text, arity).parse(); }

std::ostream &operator<<(std::ostream &os, const LaurentPoly &p) { return os << p.to_string(); }

LaurentPoly lp_add(const LaurentPoly &p, const LaurentPoly &q) { return p + q; }

LaurentPoly lp_mul(const LaurentPoly &p, const LaurentPoly &q) { return p * q; }

LaurentPoly lp_invert_unit(const LaurentPoly &p)
{
    if (!p.is_monomial()) {
        throw NotAUnit("not a unit: '" + p.to_string() + "' is not a single monomial term");
    }
    const Term &t = p.terms().front();
    return LaurentPoly::monomial(t.coef.inverse(), -t.exps, p.arity());
}

} // namespace qtheta
