#include <qtheta/rewrite.hpp>

#include <algorithm>

#include <qtheta/errors.hpp>

namespace qtheta
{

namespace
{

constexpr int kMaxPeel = 8;

bool same_base(const Monomial &a, const Monomial &b) { return a.coef == b.coef && a.vars == b.vars; }

std::optional<Rational> rational_sqrt(const Rational &r)
{
    if (r.sign() <= 0) {
        return std::nullopt;
    }
    mpq_class q = r.to_mpq();
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
        return std::nullopt;
    }
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return Rational(mpq_class(n, d));
}

std::optional<Monomial> monomial_sqrt(const Monomial &m)
{
    if (m.q % 2 != 0) {
        return std::nullopt;
    }
    ExpVec half;
    for (int i = 0; i < kMaxVars; ++i) {
        if (m.vars[i] % 2 != 0) {
            return std::nullopt;
        }
        half[i] = m.vars[i] / 2;
    }
    auto c = rational_sqrt(m.coef);
    if (!c) {
        return std::nullopt;
    }
    return Monomial(*c, m.q / 2, half);
}

long range_start(const SumRange &r) { return r.from ? *r.from : (r.to ? *r.to : 0); }

// True when the denominator factor cannot be expanded geometrically at
// some of the first few indices of the range.
bool troublesome(const PochFactor &f, const SumRange &r)
{
    long n0 = range_start(r);
    for (long n = n0; n < n0 + 4 && r.contains(n); ++n) {
        if (f.length(n) < 1) {
            continue;
        }
        long e = f.param.m.q + f.shift(n);
        bool constant_unit = !f.param.m.has_vars() && !f.param.m.coef.is_one();
        if (e < 1 && !(e >= 0 && constant_unit)) {
            return true;
        }
    }
    return false;
}

bool is_empty_length(const Affine &a) { return a.a == 0 && a.b == 0; }

// Tries the cancellation of numerator i against denominator j.
bool try_cancel(SumSpec &cur, std::size_t i, std::size_t j, std::vector<SumSpec> &peeled)
{
    const PochFactor f1 = cur.factors[i];
    const PochFactor f2 = cur.factors[j];
    if (f1.param.kind != Param::Kind::Mono || f2.param.kind != Param::Kind::Mono || f1.step != f2.step
        || !same_base(f1.param.m, f2.param.m) || f1.shift.a != f2.shift.a || !cur.range.from) {
        return false;
    }
    long s = f1.step;
    long delta = (f2.param.m.q + f2.shift.b) - (f1.param.m.q + f1.shift.b);
    if (delta < 0 || delta % s != 0) {
        return false;
    }
    long k = delta / s;
    const Affine L1 = f1.length, L2 = f2.length;
    bool numerator_longer = L1.a >= L2.a;
    // Remaining length after cancellation, as a function of n.
    Affine rest = numerator_longer ? Affine{L1.a - L2.a, L1.b - k - L2.b} : Affine{L2.a - L1.a, L2.b - L1.b + k};
    long n0 = *cur.range.from;
    long limit = n0 + kMaxPeel;
    while (n0 <= limit && (rest(n0) < 0 || L1(n0) < k)) {
        ++n0;
    }
    if (n0 > limit || L1.a < 0) {
        return false;
    }
    if (cur.range.to && *cur.range.to < n0) {
        return false;
    }
    for (long n = *cur.range.from; n < n0; ++n) {
        SumSpec one = cur;
        one.range = SumRange::single(n);
        peeled.push_back(one);
    }
    cur.range.from = n0;

    std::vector<PochFactor> add;
    if (k > 0) {
        add.push_back(num(f1.param, {0, k}, f1.step, f1.shift));
    }
    if (!is_empty_length(rest)) {
        if (numerator_longer) {
            add.push_back(num(f1.param, rest, f1.step, {f1.shift.a + s * L2.a, f1.shift.b + s * (k + L2.b)}));
        } else {
            add.push_back(den(f1.param, rest, f1.step, {f1.shift.a + s * L1.a, f1.shift.b + s * L1.b}));
        }
    }
    std::vector<PochFactor> kept;
    for (std::size_t t = 0; t < cur.factors.size(); ++t) {
        if (t != i && t != j) {
            kept.push_back(cur.factors[t]);
        }
    }
    kept.insert(kept.end(), add.begin(), add.end());
    cur.factors = std::move(kept);
    return true;
}

void sort_spec(SumSpec &s)
{
    std::sort(s.factors.begin(), s.factors.end());
    std::sort(s.tails.begin(), s.tails.end());
}

} // namespace

SumSpec canonical_factors(SumSpec s)
{
    for (auto &f : s.factors) {
        if (f.param.kind == Param::Kind::PairSqrt) {
            f.param.kind = Param::Kind::Mono;
            f.step *= 2;
        }
    }
    // Split valuation-0 square denominators.
    std::vector<PochFactor> split;
    for (const auto &f : s.factors) {
        if (f.side == Side::Denominator && f.step % 2 == 0 && is_empty_length({f.shift.a, 0}) && f.shift.b == 0
            && f.param.m.q == 0 && f.param.m.has_vars()) {
            if (auto r = monomial_sqrt(f.param.m)) {
                split.push_back(den(*r, f.length, f.step / 2));
                split.push_back(den(-*r, f.length, f.step / 2));
                continue;
            }
        }
        split.push_back(f);
    }
    s.factors = std::move(split);
    // Merge (m;q^2t)_L (mq^t;q^2t)_L into (m;q^t)_2L.
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < s.factors.size() && !merged; ++i) {
            for (std::size_t j = 0; j < s.factors.size() && !merged; ++j) {
                const auto &a = s.factors[i];
                const auto &b = s.factors[j];
                if (i == j || a.side != b.side || a.step != b.step || a.step % 2 != 0 || a.length != b.length
                    || a.shift != b.shift || !same_base(a.param.m, b.param.m)
                    || b.param.m.q != a.param.m.q + a.step / 2) {
                    continue;
                }
                PochFactor m = a;
                m.step = a.step / 2;
                m.length = {2 * a.length.a, 2 * a.length.b};
                std::vector<PochFactor> rest;
                for (std::size_t t = 0; t < s.factors.size(); ++t) {
                    if (t != i && t != j) {
                        rest.push_back(s.factors[t]);
                    }
                }
                rest.push_back(m);
                s.factors = std::move(rest);
                merged = true;
            }
        }
    }
    sort_spec(s);
    return s;
}

std::vector<SumSpec> cancel_factors(const SumSpec &s)
{
    std::vector<SumSpec> out;
    SumSpec cur = s;
    for (int round = 0; round < 32; ++round) {
        bool progress = false;
        for (std::size_t j = 0; j < cur.factors.size() && !progress; ++j) {
            if (cur.factors[j].side != Side::Denominator || !troublesome(cur.factors[j], cur.range)) {
                continue;
            }
            for (std::size_t i = 0; i < cur.factors.size() && !progress; ++i) {
                if (cur.factors[i].side == Side::Numerator) {
                    progress = try_cancel(cur, i, j, out);
                }
            }
        }
        if (!progress) {
            break;
        }
    }
    sort_spec(cur);
    out.push_back(cur);
    return out;
}

namespace
{

void sort_kids(std::vector<Expr> &kids)
{
    std::sort(kids.begin(), kids.end(),
              [](const Expr &a, const Expr &b) { return a.to_string() < b.to_string(); });
}

bool is_const_one(const Expr &e) { return e.kind() == Expr::Kind::Const && e.poly() == LaurentPoly(Rational(1), e.poly().arity()); }

Expr structural(const Expr &e);

Expr invert(const Expr &k)
{
    switch (k.kind()) {
    case Expr::Kind::Inv: return k.kids()[0];
    case Expr::Kind::Mono: return Expr::mono(k.monomial().inverse());
    case Expr::Kind::Neg: return Expr::neg(invert(k.kids()[0]));
    case Expr::Kind::Const:
        if (k.poly().is_monomial()) {
            return Expr::constant(lp_invert_unit(k.poly()));
        }
        return Expr::inv(k);
    case Expr::Kind::Mul: {
        std::vector<Expr> kids;
        for (const auto &c : k.kids()) {
            kids.push_back(invert(c));
        }
        return structural(Expr::mul(std::move(kids)));
    }
    default: return Expr::inv(k);
    }
}

// Cancels PochFin(m, A) against Inv(PochFin(m q^(sk), B)) among product
// children.
bool cancel_finite(std::vector<Expr> &kids)
{
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (kids[i].kind() != Expr::Kind::PochFin) {
            continue;
        }
        for (std::size_t j = 0; j < kids.size(); ++j) {
            if (kids[j].kind() != Expr::Kind::Inv || kids[j].kids()[0].kind() != Expr::Kind::PochFin) {
                continue;
            }
            const Expr &a = kids[i];
            const Expr &b = kids[j].kids()[0];
            const Monomial &ma = a.param().m;
            const Monomial &mb = b.param().m;
            long s = a.step();
            if (b.step() != s || !same_base(ma, mb) || mb.q < ma.q || (mb.q - ma.q) % s != 0) {
                continue;
            }
            long k = (mb.q - ma.q) / s;
            if (a.length() < k) {
                continue;
            }
            std::vector<Expr> repl;
            if (k > 0) {
                repl.push_back(Expr::poch_fin(ma, k, static_cast<int>(s)));
            }
            long rest = a.length() - k - b.length();
            if (rest > 0) {
                repl.push_back(Expr::poch_fin(ma.times_q(static_cast<int>(s * (k + b.length()))), rest, static_cast<int>(s)));
            } else if (rest < 0) {
                repl.push_back(Expr::inv(Expr::poch_fin(ma.times_q(static_cast<int>(s * a.length())), -rest, static_cast<int>(s))));
            }
            std::vector<Expr> out;
            for (std::size_t t = 0; t < kids.size(); ++t) {
                if (t != i && t != j) {
                    out.push_back(kids[t]);
                }
            }
            out.insert(out.end(), repl.begin(), repl.end());
            kids = std::move(out);
            return true;
        }
    }
    return false;
}

// Removes X * Inv(X) pairs.
bool cancel_inverse_pair(std::vector<Expr> &kids)
{
    for (std::size_t j = 0; j < kids.size(); ++j) {
        if (kids[j].kind() != Expr::Kind::Inv) {
            continue;
        }
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (i != j && kids[i] == kids[j].kids()[0]) {
                std::vector<Expr> out;
                for (std::size_t t = 0; t < kids.size(); ++t) {
                    if (t != i && t != j) {
                        out.push_back(kids[t]);
                    }
                }
                kids = std::move(out);
                return true;
            }
        }
    }
    return false;
}

// (m;q^s)_L (m q^(sL);q^s)_inf -> (m;q^s)_inf
bool absorb_finite(std::vector<Expr> &kids)
{
    for (std::size_t i = 0; i < kids.size(); ++i) {
        const Expr &a = kids[i];
        if (a.kind() != Expr::Kind::PochFin || a.param().kind != Param::Kind::Mono) {
            continue;
        }
        for (std::size_t j = 0; j < kids.size(); ++j) {
            const Expr &b = kids[j];
            if (b.kind() != Expr::Kind::PochInf || b.step() != a.step()
                || !(b.monomial() == a.param().m.times_q(static_cast<int>(a.step() * a.length())))) {
                continue;
            }
            Expr merged = Expr::poch_inf(a.param().m, a.step());
            std::vector<Expr> out;
            for (std::size_t t = 0; t < kids.size(); ++t) {
                if (t != i && t != j) {
                    out.push_back(kids[t]);
                }
            }
            out.push_back(merged);
            kids = std::move(out);
            return true;
        }
    }
    return false;
}

// Folds (m;q^s)_inf children into a matching denominator of a sum child.
// Children are visited in canonical order so the result does not depend on
// how the product was written.
void fold_tails(std::vector<Expr> &kids)
{
    sort_kids(kids);
    std::vector<std::size_t> sums;
    std::vector<SumSpec> specs;
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (kids[i].kind() == Expr::Kind::Sum) {
            sums.push_back(i);
            specs.push_back(kids[i].spec());
        }
    }
    if (sums.empty()) {
        return;
    }
    std::vector<Expr> out;
    for (std::size_t i = 0; i < kids.size(); ++i) {
        const Expr &k = kids[i];
        if (k.kind() == Expr::Kind::Sum) {
            continue;
        }
        bool folded = false;
        for (std::size_t s = 0; s < specs.size() && !folded && k.kind() == Expr::Kind::PochInf; ++s) {
            auto &spec = specs[s];
            for (std::size_t f = 0; f < spec.factors.size(); ++f) {
                const auto &pf = spec.factors[f];
                if (pf.side == Side::Denominator && pf.param.kind == Param::Kind::Mono && pf.param.m == k.monomial()
                    && pf.step == k.step() && is_empty_length(pf.shift)) {
                    long st = pf.step;
                    spec.tails.push_back(TailFactor{k.monomial(), {st * pf.length.a, st * pf.length.b}, pf.step});
                    spec.factors.erase(spec.factors.begin() + static_cast<long>(f));
                    folded = true;
                    break;
                }
            }
        }
        if (!folded) {
            out.push_back(k);
        }
    }
    for (auto &spec : specs) {
        sort_spec(spec);
        out.push_back(Expr::sum(spec));
    }
    kids = std::move(out);
}

Expr structural(const Expr &e)
{
    switch (e.kind()) {
    case Expr::Kind::Const:
    case Expr::Kind::Mono:
    case Expr::Kind::PochInf: return e;
    case Expr::Kind::PochFin:
        if (e.param().kind == Param::Kind::PairSqrt) {
            return Expr::poch_fin(e.param().m, e.length(), 2 * e.step());
        }
        return e;
    case Expr::Kind::Sum: return Expr::sum(canonical_factors(e.spec()));
    case Expr::Kind::Neg: {
        Expr k = structural(e.kids()[0]);
        if (k.kind() == Expr::Kind::Neg) {
            return k.kids()[0];
        }
        return Expr::neg(k);
    }
    case Expr::Kind::Inv: return invert(structural(e.kids()[0]));
    case Expr::Kind::Add: {
        std::vector<Expr> kids;
        for (const auto &c : e.kids()) {
            Expr k = structural(c);
            if (k.kind() == Expr::Kind::Add) {
                kids.insert(kids.end(), k.kids().begin(), k.kids().end());
            } else {
                kids.push_back(k);
            }
        }
        if (kids.size() == 1) {
            return kids.front();
        }
        sort_kids(kids);
        return Expr::add(std::move(kids));
    }
    case Expr::Kind::Mul: {
        std::vector<Expr> kids;
        bool negate = false;
        for (const auto &c : e.kids()) {
            Expr k = structural(c);
            while (k.kind() == Expr::Kind::Neg) {
                negate = !negate;
                k = k.kids()[0];
            }
            if (k.kind() == Expr::Kind::Mul) {
                kids.insert(kids.end(), k.kids().begin(), k.kids().end());
            } else if (!is_const_one(k)) {
                kids.push_back(k);
            }
        }
        while (cancel_inverse_pair(kids) || cancel_finite(kids) || absorb_finite(kids)) {
        }
        fold_tails(kids);
        Expr r;
        if (kids.empty()) {
            r = Expr::constant(Rational(1));
        } else if (kids.size() == 1) {
            r = kids.front();
        } else {
            sort_kids(kids);
            r = Expr::mul(std::move(kids));
        }
        return negate ? Expr::neg(r) : r;
    }
    }
    return e;
}

Expr cancel_pass(const Expr &e)
{
    switch (e.kind()) {
    case Expr::Kind::Sum: {
        auto parts = cancel_factors(e.spec());
        if (parts.size() == 1) {
            return Expr::sum(parts.front());
        }
        std::vector<Expr> kids;
        for (auto &p : parts) {
            kids.push_back(Expr::sum(p));
        }
        sort_kids(kids);
        return Expr::add(std::move(kids));
    }
    case Expr::Kind::Neg: return Expr::neg(cancel_pass(e.kids()[0]));
    case Expr::Kind::Inv: return Expr::inv(cancel_pass(e.kids()[0]));
    case Expr::Kind::Add:
    case Expr::Kind::Mul: {
        std::vector<Expr> kids;
        for (const auto &c : e.kids()) {
            kids.push_back(cancel_pass(c));
        }
        return e.kind() == Expr::Kind::Add ? Expr::add(std::move(kids)) : Expr::mul(std::move(kids));
    }
    default: return e;
    }
}

} // namespace

Expr normalize(const Expr &e)
{
    Expr cur = structural(e);
    for (int i = 0; i < 4; ++i) {
        Expr next = structural(cancel_pass(cur));
        if (next == cur) {
            break;
        }
        cur = next;
    }
    return cur;
}

} // namespace qtheta
