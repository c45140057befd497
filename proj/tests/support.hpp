#ifndef QTHETA_TESTS_SUPPORT_HPP
#define QTHETA_TESTS_SUPPORT_HPP

#include <array>
#include <map>
#include <random>

#include <gmpxx.h>

#include <qtheta/qseries.hpp>

namespace qtheta::test
{

inline Monomial mono(long long c, int q, int x = 0, int y = 0) { return Monomial(Rational(c), q, ExpVec{x, y, 0, 0}); }

inline LaurentPoly poly(std::string_view text) { return LaurentPoly::parse(text); }

// Series from "q^e : poly" pairs, valid to `order`.
inline QSeries series(std::map<int, std::string> coeffs, int order)
{
    QSeries s(order);
    for (const auto &[e, text] : coeffs) {
        s.ref(e) = poly(text);
    }
    s.trim();
    return s;
}

// Deterministic generators for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    Rational rational()
    {
        // Mostly small, sometimes past the inline range.
        if (range(0, 9) == 0) {
            mpz_class big = 1;
            big <<= range(62, 90);
            mpq_class q(mpz_class(big * range(1, 9) - range(0, 5)), mpz_class(range(1, 7)));
            q.canonicalize();
            return Rational(q);
        }
        int d = range(1, 4);
        int n = range(-6, 6);
        return Rational(n == 0 ? 1 : n, d);
    }

    ExpVec exps(int arity, int lo = -5, int hi = 5)
    {
        ExpVec v;
        for (int i = 0; i < arity; ++i) {
            v[i] = range(lo, hi);
        }
        return v;
    }

    LaurentPoly laurent(int arity = 2, int max_terms = 8, int lo = -5, int hi = 5)
    {
        std::vector<Term> ts;
        int n = range(0, max_terms);
        for (int i = 0; i < n; ++i) {
            ts.push_back(Term{exps(arity, lo, hi), rational()});
        }
        return LaurentPoly::from_terms(ts);
    }

    Monomial monomial(int arity = 2, int qlo = -2, int qhi = 3)
    {
        return Monomial(rational(), range(qlo, qhi), exps(arity, -2, 2));
    }

    // Random series with coefficients on lo..order.
    QSeries qseries(int lo, int order, int arity = 2)
    {
        QSeries s(order);
        for (int e = lo; e <= order; ++e) {
            if (range(0, 3) != 0) {
                s.ref(e) = laurent(arity, 3, -3, 3);
            }
        }
        s.trim();
        return s;
    }
};

// Independent dense-map polynomial oracle: exponent (q, x, y, u, v) -> mpq.
using Key = std::array<int, 5>;
using Naive = std::map<Key, mpq_class>;

inline Naive naive_one() { return Naive{{Key{0, 0, 0, 0, 0}, mpq_class(1)}}; }

inline Naive naive_mul(const Naive &a, const Naive &b)
{
    Naive r;
    for (const auto &[ka, ca] : a) {
        for (const auto &[kb, cb] : b) {
            Key k;
            for (int i = 0; i < 5; ++i) {
                k[static_cast<std::size_t>(i)] = ka[static_cast<std::size_t>(i)] + kb[static_cast<std::size_t>(i)];
            }
            r[k] += ca * cb;
        }
    }
    for (auto it = r.begin(); it != r.end();) {
        it = it->second == 0 ? r.erase(it) : std::next(it);
    }
    return r;
}

// 1 - m q^e as a naive polynomial.
inline Naive naive_binomial(const Monomial &m, int e)
{
    Naive r = naive_one();
    Key k{m.q + e, m.vars[0], m.vars[1], m.vars[2], m.vars[3]};
    r[k] -= m.coef.to_mpq();
    for (auto it = r.begin(); it != r.end();) {
        it = it->second == 0 ? r.erase(it) : std::next(it);
    }
    return r;
}

// Truncates to q-exponents <= order and converts to a QSeries.
inline QSeries naive_to_series(const Naive &p, int order)
{
    QSeries s(order);
    for (const auto &[k, c] : p) {
        if (k[0] <= order) {
            s.ref(k[0]) += LaurentPoly::monomial(Rational(c), ExpVec{k[1], k[2], k[3], k[4]});
        }
    }
    s.trim();
    return s;
}

} // namespace qtheta::test

#endif
