#include <qtheta/kernels.hpp>

#include <algorithm>

#include <omp.h>

#include <qtheta/errors.hpp>

namespace qtheta::kernels
{

namespace
{

constexpr std::size_t kCompactThreshold = std::size_t{1} << 16;

LaurentPoly cauchy_coeff(const QSeries &a, const QSeries &b, int k, int va, int vb, const Window &w)
{
    TermAccumulator acc;
    int i_lo = std::max(va, k - b.order());
    int i_hi = std::min(a.order(), k - vb);
    for (int i = i_lo; i <= i_hi; ++i) {
        const LaurentPoly &x = a.at(i);
        if (x.is_zero()) {
            continue;
        }
        const LaurentPoly &y = b.at(k - i);
        if (y.is_zero()) {
            continue;
        }
        acc.add_product(x, y);
    }
    LaurentPoly r = acc.take(a.arity());
    if (w) {
        r.truncate_window(*w);
    }
    return r;
}

} // namespace

void TermAccumulator::add_product(const LaurentPoly &a, const LaurentPoly &b)
{
    for (const auto &s : a.terms()) {
        for (const auto &t : b.terms()) {
            buf_.push_back({s.exps + t.exps, s.coef * t.coef});
        }
        if (buf_.size() > compacted_ + kCompactThreshold) {
            compact();
        }
    }
}

void TermAccumulator::add(const LaurentPoly &a)
{
    buf_.insert(buf_.end(), a.terms().begin(), a.terms().end());
    if (buf_.size() > compacted_ + kCompactThreshold) {
        compact();
    }
}

void TermAccumulator::compact()
{
    canonicalize_terms(buf_);
    compacted_ = buf_.size();
}

LaurentPoly TermAccumulator::take(int arity)
{
    LaurentPoly r = LaurentPoly::from_terms(std::move(buf_), arity);
    buf_.clear();
    compacted_ = 0;
    return r;
}

std::vector<LaurentPoly> cauchy_serial(const QSeries &a, const QSeries &b, int lo, int order, const Window &w)
{
    std::vector<LaurentPoly> out(static_cast<std::size_t>(std::max(0, order - lo + 1)), LaurentPoly(a.arity()));
    int va = a.valuation(), vb = b.valuation();
    for (int k = lo; k <= order; ++k) {
        out[static_cast<std::size_t>(k - lo)] = cauchy_coeff(a, b, k, va, vb, w);
    }
    return out;
}

std::vector<LaurentPoly> cauchy_parallel(const QSeries &a, const QSeries &b, int lo, int order, const Window &w)
{
    std::vector<LaurentPoly> out(static_cast<std::size_t>(std::max(0, order - lo + 1)), LaurentPoly(a.arity()));
    int va = a.valuation(), vb = b.valuation();
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = lo; k <= order; ++k) {
        out[static_cast<std::size_t>(k - lo)] = cauchy_coeff(a, b, k, va, vb, w);
    }
    return out;
}

void mul_binomial(QSeries &s, const Term &m, int e, const Window &w)
{
    if (m.coef.is_zero()) {
        return;
    }
    int v = s.valuation();
    if (v > s.order()) {
        return;
    }
    Term neg{m.exps, -m.coef};
    if (e == 0) {
        for (int k = v; k <= s.order(); ++k) {
            LaurentPoly &c = s.ref(k);
            if (c.is_zero()) {
                continue;
            }
            LaurentPoly add = c.times_term(neg);
            c += add;
            if (w) {
                c.truncate_window(*w);
            }
        }
        return;
    }
    if (e > 0) {
        // Descending so a[k - e] is still the old value.
        for (int k = s.order(); k >= v + e; --k) {
            const LaurentPoly &src = s.at(k - e);
            if (src.is_zero()) {
                continue;
            }
            LaurentPoly &c = s.ref(k);
            c.add_scaled(neg, src);
            if (w) {
                c.truncate_window(*w);
            }
        }
        return;
    }
    // e < 0: a[k] -= m a[k - e] with k - e > k, ascending.
    s.ref(v + e);
    for (int k = v + e; k <= s.order(); ++k) {
        int src_e = k - e;
        if (src_e > s.order()) {
            break;
        }
        const LaurentPoly &src = s.at(src_e);
        if (src.is_zero()) {
            continue;
        }
        // src_e != k and the range is already extended, so no aliasing.
        LaurentPoly &c = s.ref(k);
        c.add_scaled(neg, src);
        if (w) {
            c.truncate_window(*w);
        }
    }
}

bool binomial_invertible(const Term &m, int e)
{
    if (e >= 1) {
        return true;
    }
    return e == 0 && m.exps.is_zero() && !m.coef.is_one();
}

int max_abs_degree(const ExpVec &v)
{
    int d = 0;
    for (int x : v.e) {
        d = std::max(d, std::abs(x));
    }
    return d;
}

void div_binomial(QSeries &s, const Term &m, int e, const Window &w)
{
    if (m.coef.is_zero()) {
        return;
    }
    if (e == 0 && m.exps.is_zero()) {
        if (m.coef.is_one()) {
            throw NonEvaluable("division by the zero factor (1 - 1)");
        }
        Rational f = (Rational(1) - m.coef).inverse();
        for (int k = s.lo(); k <= s.order(); ++k) {
            LaurentPoly &c = s.ref(k);
            if (!c.is_zero()) {
                c = c.scaled(f);
            }
        }
        return;
    }
    if (e == 0) {
        if (!w) {
            throw NonEvaluable("denominator factor (1 - " + LaurentPoly::monomial(m.coef, m.exps).to_string()
                               + ") has q-valuation 0");
        }
        LaurentPoly g = window_geometric(m, *w);
        for (int k = s.lo(); k <= s.order(); ++k) {
            LaurentPoly &c = s.ref(k);
            if (!c.is_zero()) {
                c = c * g;
                c.truncate_window(*w);
            }
        }
        return;
    }
    if (e < 0) {
        if (!w) {
            throw NonEvaluable("denominator factor with negative q-valuation " + std::to_string(e));
        }
        if (!m.exps.is_zero()) {
            // sum_{k<=K} (m q^e)^k, K the last power inside the window;
            // the result loses -e*K orders at the top.
            int K = window_power(m.exps, *w);
            LaurentPoly mp = LaurentPoly::monomial(m.coef, m.exps, s.arity());
            QSeries acc = s;
            QSeries cur = s;
            for (int k = 1; k <= K; ++k) {
                cur = qs_scale(qs_shift(cur, e), mp, w);
                acc = qs_add(acc, cur, w);
            }
            s = std::move(acc);
            return;
        }
        // 1/(1 - c q^e) = -c^-1 q^-e / (1 - c^-1 q^-e)
        Term inv{-m.exps, m.coef.inverse()};
        Term neg_inv{-m.exps, -m.coef.inverse()};
        QSeries shifted = qs_scale(qs_shift(s, -e), LaurentPoly::monomial(neg_inv.coef, neg_inv.exps, s.arity()), w);
        s = shifted.truncated(s.order());
        div_binomial(s, inv, -e, w);
        return;
    }
    int v = s.valuation();
    for (int k = v + e; k <= s.order(); ++k) {
        const LaurentPoly &src = s.at(k - e);
        if (src.is_zero()) {
            continue;
        }
        LaurentPoly &c = s.ref(k);
        c.add_scaled(m, src);
        if (w) {
            c.truncate_window(*w);
        }
    }
}

namespace
{

void accumulate_into(QSeries &total, const QSeries &t, const Window &w)
{
    if (t.is_zero()) {
        return;
    }
    for (int k = t.valuation(); k <= std::min(t.order(), total.order()); ++k) {
        const LaurentPoly &c = t.at(k);
        if (!c.is_zero()) {
            LaurentPoly &dst = total.ref(k);
            dst += c;
            if (w) {
                dst.truncate_window(*w);
            }
        }
    }
}

void check_term_order(const QSeries &t, int order)
{
    if (t.order() < order) {
        throw OrderExceeded("summand valid only to q^" + std::to_string(t.order()) + ", needed q^"
                            + std::to_string(order));
    }
}

} // namespace

QSeries sum_serial(int count, int order, int arity, const std::function<QSeries(int)> &term, const Window &w)
{
    QSeries total(order, arity);
    for (int i = 0; i < count; ++i) {
        QSeries t = term(i);
        check_term_order(t, order);
        accumulate_into(total, t, w);
    }
    return total;
}

QSeries sum_parallel(int count, int order, int arity, const std::function<QSeries(int)> &term, const Window &w)
{
    if (count <= 1 || omp_get_max_threads() == 1 || omp_in_parallel()) {
        return sum_serial(count, order, arity, term, w);
    }
    std::vector<QSeries> terms(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
        try {
            terms[static_cast<std::size_t>(i)] = term(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    QSeries total(order, arity);
    for (int i = 0; i < count; ++i) {
        if (errors[static_cast<std::size_t>(i)]) {
            std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
        }
        check_term_order(terms[static_cast<std::size_t>(i)], order);
        accumulate_into(total, terms[static_cast<std::size_t>(i)], w);
    }
    return total;
}

} // namespace qtheta::kernels
