#include <qtheta/qblocks.hpp>

#include <algorithm>
#include <limits>
#include <numeric>

#include <qtheta/errors.hpp>
#include <qtheta/kernels.hpp>

namespace qtheta
{

namespace
{

constexpr long kHuge = std::numeric_limits<long>::max() / 4;

struct FactorShape {
    Term term;  // coefficient and variables of the base
    long E = 0; // q-exponent of the first factor
    long step = 1;
    long length = 0;
};

FactorShape shape(const PochFactor &f, long n)
{
    FactorShape s;
    s.term = f.param.m.term();
    s.E = f.param.m.q + f.shift(n);
    s.step = f.param.kind == Param::Kind::PairSqrt ? 2L * f.step : f.step;
    s.length = f.length(n);
    return s;
}

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// Sum of the negative exponents among E, E + s, ..., E + s(L - 1).
long negative_sum(long E, long s, long L)
{
    if (E >= 0 || L <= 0) {
        return 0;
    }
    long c = std::min(L, ceil_div(-E, s));
    return c * E + s * c * (c - 1) / 2;
}

long tail_negative_sum(const TailFactor &t, long n)
{
    long E = t.base.q + t.shift(n);
    if (E >= 0) {
        return 0;
    }
    long c = ceil_div(-E, t.step);
    return c * E + static_cast<long>(t.step) * c * (c - 1) / 2;
}

long power_exponent(const SumSpec &spec, long n)
{
    if (!spec.power2) {
        return n * spec.power.q;
    }
    if (n <= 0) {
        return kHuge;
    }
    return (n - 1) * std::min(spec.power.q, spec.power2->q);
}

Rational weight_at(const SumSpec &spec, long n)
{
    if (spec.weight.empty()) {
        return Rational(1);
    }
    Rational acc(0);
    for (auto it = spec.weight.rbegin(); it != spec.weight.rend(); ++it) {
        acc = acc * Rational(n) + Rational(*it);
    }
    return acc;
}

long deficit(const SumSpec &spec, long n)
{
    long d = 0;
    for (const auto &f : spec.factors) {
        if (f.side == Side::Numerator) {
            auto s = shape(f, n);
            d -= negative_sum(s.E, s.step, s.length);
        }
    }
    for (const auto &t : spec.tails) {
        d -= tail_negative_sum(t, n);
    }
    return d;
}

long abs_l(long v) { return v < 0 ? -v : v; }

// Beyond |n| >= certificate_radius every piecewise ingredient of the
// valuation bound is in its final regime.
long certificate_radius(const SumSpec &spec)
{
    long r = 2;
    for (const auto &f : spec.factors) {
        long s = f.param.kind == Param::Kind::PairSqrt ? 2L * f.step : f.step;
        r += abs_l(f.param.m.q) + abs_l(f.shift.a) + abs_l(f.shift.b) + s * (abs_l(f.length.b) + abs_l(f.length.a) + 1);
    }
    for (const auto &t : spec.tails) {
        r += abs_l(t.base.q) + abs_l(t.shift.a) + abs_l(t.shift.b) + t.step;
    }
    return r;
}

long period(const SumSpec &spec)
{
    long p = 1;
    for (const auto &f : spec.factors) {
        p = std::lcm(p, f.param.kind == Param::Kind::PairSqrt ? 2L * f.step : static_cast<long>(f.step));
    }
    for (const auto &t : spec.tails) {
        p = std::lcm(p, static_cast<long>(t.step));
    }
    return p;
}

// Largest t such that, for every t' > t, the bound at start + dir * t'
// exceeds `threshold`.
long scan_limit(const SumSpec &spec, long start, int dir, long threshold)
{
    long radius = certificate_radius(spec);
    long t0 = dir > 0 ? std::max(0L, radius - start) : std::max(0L, radius + start);
    long P = period(spec);
    long t_stop = t0;
    auto b = [&](long t) { return valuation_bound(spec, start + dir * t); };
    for (long r = 0; r < P; ++r) {
        long b0 = b(t0 + r), b1 = b(t0 + r + P), b2 = b(t0 + r + 2 * P);
        long d1 = b1 - b0;
        long d2 = b2 - 2 * b1 + b0;
        if (d2 < 0 || (d2 == 0 && d1 <= 0)) {
            throw DivergentBound("valuation bound does not grow along the summation range (direction "
                                 + std::string(dir > 0 ? "+" : "-") + ")");
        }
        long k = 0;
        auto bk = [&](long kk) { return b0 + d1 * kk + d2 * kk * (kk - 1) / 2; };
        while (!(bk(k) > threshold && d1 + d2 * k > 0)) {
            ++k;
            if (k > 100000000L) {
                throw DivergentBound("valuation bound grows too slowly to certify");
            }
        }
        t_stop = std::max(t_stop, t0 + r + k * P);
    }
    return t_stop;
}

struct Segment {
    long start;
    int dir;
    std::optional<long> count; // number of indices, or infinite
};

std::vector<Segment> segments(const SumRange &r)
{
    if (r.from && r.to) {
        if (*r.to < *r.from) {
            return {};
        }
        return {Segment{*r.from, +1, *r.to - *r.from + 1}};
    }
    if (r.from) {
        return {Segment{*r.from, +1, std::nullopt}};
    }
    if (r.to) {
        return {Segment{*r.to, -1, std::nullopt}};
    }
    return {Segment{0, +1, std::nullopt}, Segment{-1, -1, std::nullopt}};
}

// Extra q-headroom for windowed expansions of variable-carrying denominator
// factors with negative exponent, which shift down by -e per power.
long window_deficit(const SumSpec &spec, long n, const Window &w)
{
    if (!w) {
        return 0;
    }
    long total = 0;
    for (const auto &f : spec.factors) {
        if (f.side != Side::Denominator || f.param.m.vars.is_zero()) {
            continue;
        }
        auto s = shape(f, n);
        total -= negative_sum(s.E, s.step, s.length) * kernels::window_power(s.term.exps, *w);
    }
    return total;
}

long window_deficit_bound(const SumSpec &spec, const Window &w)
{
    long best = 0;
    if (!w) {
        return best;
    }
    for (const auto &seg : segments(spec.range)) {
        if (seg.count) {
            for (long t = 0; t < *seg.count; ++t) {
                best = std::max(best, window_deficit(spec, seg.start + seg.dir * t, w));
            }
            continue;
        }
        long total = 0;
        for (const auto &f : spec.factors) {
            if (f.side != Side::Denominator || f.param.m.vars.is_zero()) {
                continue;
            }
            if (f.shift.a * seg.dir < 0) {
                throw NonEvaluable("windowed expansion: denominator factor " + f.param.m.to_string()
                                   + " has a q-shift decreasing without bound along the range");
            }
            auto s = shape(f, seg.start);
            total -= negative_sum(s.E, s.step, kHuge) * kernels::window_power(s.term.exps, *w);
        }
        best = std::max(best, total);
    }
    return best;
}

QSeries product_of_binomials(const std::vector<std::pair<Term, long>> &factors, int order, const Window &w,
                             int arity = kMaxVars)
{
    long d = 0;
    for (const auto &[t, e] : factors) {
        if (e < 0) {
            d -= e;
        }
    }
    QSeries buf(static_cast<int>(order + d), arity);
    buf.ref(0) = LaurentPoly(Rational(1), arity);
    for (const auto &[t, e] : factors) {
        if (e > order + d) {
            continue;
        }
        kernels::mul_binomial(buf, t, static_cast<int>(e), w);
    }
    return buf.truncated(order);
}

} // namespace

PochFactor num(const Param &p, Affine length, int step, Affine shift)
{
    return PochFactor{p, shift, length, step, Side::Numerator};
}
PochFactor den(const Param &p, Affine length, int step, Affine shift)
{
    return PochFactor{p, shift, length, step, Side::Denominator};
}
PochFactor num(const Monomial &m, Affine length, int step, Affine shift)
{
    return num(Param::mono(m), length, step, shift);
}
PochFactor den(const Monomial &m, Affine length, int step, Affine shift)
{
    return den(Param::mono(m), length, step, shift);
}

SumSpec partial_theta_spec(const Monomial &m)
{
    SumSpec s;
    s.range = SumRange::non_negative();
    s.alternating = true;
    s.quad = QuadExp::binom2();
    s.power = m;
    return s;
}

SumSpec complete_theta_spec(const Monomial &m)
{
    SumSpec s = partial_theta_spec(m);
    s.range = SumRange::all_integers();
    return s;
}

SumSpec hypergeometric_spec(const std::vector<Param> &uppers, const std::vector<Param> &lowers, const Monomial &arg,
                            int base_step)
{
    SumSpec s;
    s.range = SumRange::non_negative();
    s.power = arg;
    for (const auto &p : uppers) {
        s.factors.push_back(num(p, {1, 0}, base_step));
    }
    s.factors.push_back(den(Monomial(Rational(1), base_step), {1, 0}, base_step));
    for (const auto &p : lowers) {
        s.factors.push_back(den(p, {1, 0}, base_step));
    }
    return s;
}

void check_spec(const SumSpec &spec)
{
    if ((spec.quad.A + spec.quad.B) % 2 != 0 || spec.quad.C % 2 != 0) {
        throw UsageError("quadratic exponent (A n^2 + B n + C)/2 needs A + B and C even");
    }
    if (spec.power2 && (!spec.range.from || *spec.range.from < 0)) {
        throw UsageError("divided-difference power needs a range starting at n >= 0");
    }
    auto check_len = [&](const Affine &len, const std::string &what) {
        for (const auto &seg : segments(spec.range)) {
            if (len(seg.start) < 0) {
                throw UsageError(what + " has negative length at n = " + std::to_string(seg.start));
            }
            if (seg.count) {
                long end = seg.start + (*seg.count - 1) * seg.dir;
                if (len(end) < 0) {
                    throw UsageError(what + " has negative length at n = " + std::to_string(end));
                }
            } else if (len.a * seg.dir < 0) {
                throw UsageError(what + " length becomes negative along the range");
            }
        }
    };
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        const auto &f = spec.factors[i];
        if (f.step < 1) {
            throw UsageError("Pochhammer step must be positive");
        }
        check_len(f.length, "factor " + std::to_string(i));
    }
    for (const auto &t : spec.tails) {
        if (t.step < 1) {
            throw UsageError("tail step must be positive");
        }
    }
}

long valuation_bound(const SumSpec &spec, long n)
{
    long p = power_exponent(spec, n);
    if (p >= kHuge) {
        return kHuge;
    }
    return spec.quad(n) + p - deficit(spec, n);
}

std::vector<long> summation_indices(const SumSpec &spec, int order)
{
    check_spec(spec);
    std::vector<long> out;
    for (const auto &seg : segments(spec.range)) {
        long count = seg.count ? *seg.count : scan_limit(spec, seg.start, seg.dir, order) + 1;
        for (long t = 0; t < count; ++t) {
            long n = seg.start + seg.dir * t;
            if (valuation_bound(spec, n) <= order) {
                out.push_back(n);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long min_valuation_bound(const SumSpec &spec)
{
    check_spec(spec);
    long best = kHuge;
    for (const auto &seg : segments(spec.range)) {
        long count = seg.count ? *seg.count : 0;
        if (!seg.count) {
            long threshold = valuation_bound(spec, seg.start);
            count = scan_limit(spec, seg.start, seg.dir, threshold) + 1;
        }
        for (long t = 0; t < count; ++t) {
            best = std::min(best, valuation_bound(spec, seg.start + seg.dir * t));
        }
    }
    return best;
}

std::optional<std::string> denominator_diagnostic(const SumSpec &spec)
{
    long radius = certificate_radius(spec);
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        const auto &f = spec.factors[i];
        if (f.side != Side::Denominator) {
            continue;
        }
        std::string where = "denominator factor " + std::to_string(i) + " (" + f.param.m.to_string() + ")";
        for (const auto &seg : segments(spec.range)) {
            long count = seg.count ? *seg.count : radius + 2;
            if (!seg.count && f.shift.a * seg.dir < 0) {
                return where + ": q-shift decreases without bound along the range";
            }
            for (long t = 0; t < count; ++t) {
                long n = seg.start + seg.dir * t;
                auto s = shape(f, n);
                if (s.length < 1) {
                    continue;
                }
                bool constant_unit = s.term.exps.is_zero() && !s.term.coef.is_one();
                if (s.E >= 1 || (s.E >= 0 && constant_unit)) {
                    continue;
                }
                return where + ": valuation-" + std::to_string(s.E) + " denominator factor at n = "
                       + std::to_string(n) + " is not geometrically invertible";
            }
        }
    }
    return std::nullopt;
}

QSeries sum_term(const SumSpec &spec, long n, int order, const Window &w)
{
    QSeries zero(order);
    Rational c = weight_at(spec, n);
    if (spec.alternating && (n % 2 != 0)) {
        c = -c;
    }
    if (c.is_zero()) {
        return zero;
    }
    // Starting polynomial in q: sign * weight * q^quad * P(n).
    std::vector<Monomial> start;
    long quad = spec.quad(n);
    if (!spec.power2) {
        start.push_back(spec.power.pow(static_cast<int>(n)));
    } else {
        for (long k = 0; k < n; ++k) {
            start.push_back(spec.power.pow(static_cast<int>(k)) * spec.power2->pow(static_cast<int>(n - 1 - k)));
        }
    }
    if (start.empty()) {
        return zero;
    }
    long v0 = kHuge;
    for (const auto &m : start) {
        v0 = std::min(v0, quad + m.q);
    }
    long d = deficit(spec, n) + window_deficit(spec, n, w);
    if (v0 - d > order) {
        return zero;
    }
    long cap = order + d;
    long limit = cap - v0; // factors with exponent beyond this cannot reach q^order
    QSeries buf(static_cast<int>(cap));
    for (const auto &m : start) {
        long e = quad + m.q;
        if (e <= cap) {
            buf.ref(static_cast<int>(e)).add_scaled(Term{m.vars, m.coef * c}, LaurentPoly(Rational(1)));
        }
    }
    if (w) {
        buf.apply_window(w);
    }
    for (const auto &f : spec.factors) {
        if (f.side != Side::Numerator) {
            continue;
        }
        auto s = shape(f, n);
        for (long j = 0; j < s.length; ++j) {
            long e = s.E + s.step * j;
            if (e > limit) {
                break;
            }
            kernels::mul_binomial(buf, s.term, static_cast<int>(e), w);
        }
    }
    for (const auto &t : spec.tails) {
        long E = t.base.q + t.shift(n);
        Term term = t.base.term();
        for (long e = E; e <= limit; e += t.step) {
            kernels::mul_binomial(buf, term, static_cast<int>(e), w);
        }
    }
    for (const auto &f : spec.factors) {
        if (f.side != Side::Denominator) {
            continue;
        }
        auto s = shape(f, n);
        for (long j = 0; j < s.length; ++j) {
            long e = s.E + s.step * j;
            if (e > limit) {
                break;
            }
            kernels::div_binomial(buf, s.term, static_cast<int>(e), w);
        }
    }
    return buf.truncated(order);
}

namespace
{

QSeries sum_eval_impl(const SumSpec &spec, int order, const Window &w, SumStats *stats, bool parallel)
{
    if (!w) {
        if (auto diag = denominator_diagnostic(spec)) {
            throw NonEvaluable(*diag);
        }
    }
    std::vector<long> idx;
    if (!w) {
        idx = summation_indices(spec, order);
    } else {
        long extra = window_deficit_bound(spec, w);
        for (long n : summation_indices(spec, static_cast<int>(order + extra))) {
            if (valuation_bound(spec, n) - window_deficit(spec, n, w) <= order) {
                idx.push_back(n);
            }
        }
    }
    if (stats) {
        stats->terms = idx.size();
        stats->n_min = idx.empty() ? 0 : idx.front();
        stats->n_max = idx.empty() ? 0 : idx.back();
    }
    auto term = [&](int i) { return sum_term(spec, idx[static_cast<std::size_t>(i)], order, w); };
    int count = static_cast<int>(idx.size());
    return parallel ? kernels::sum_parallel(count, order, kMaxVars, term, w)
                    : kernels::sum_serial(count, order, kMaxVars, term, w);
}

} // namespace

QSeries sum_eval(const SumSpec &spec, int order, const Window &w, SumStats *stats)
{
    return sum_eval_impl(spec, order, w, stats, true);
}

QSeries sum_eval_serial(const SumSpec &spec, int order, const Window &w, SumStats *stats)
{
    return sum_eval_impl(spec, order, w, stats, false);
}

QSeries poch_finite(const Param &p, long length, int step, int order, const Window &w)
{
    if (length < 0 || step < 1) {
        throw UsageError("poch_finite needs length >= 0 and step >= 1");
    }
    long s = p.kind == Param::Kind::PairSqrt ? 2L * step : step;
    std::vector<std::pair<Term, long>> fs;
    for (long j = 0; j < length; ++j) {
        fs.push_back({p.m.term(), p.m.q + s * j});
    }
    return product_of_binomials(fs, order, w);
}

QSeries poch_infinite(const Monomial &m, int step, int order, const Window &w)
{
    if (step < 1) {
        throw UsageError("poch_infinite needs step >= 1");
    }
    long d = 0;
    for (long e = m.q; e < 0; e += step) {
        d -= e;
    }
    std::vector<std::pair<Term, long>> fs;
    for (long e = m.q; e <= order + d; e += step) {
        fs.push_back({m.term(), e});
    }
    return product_of_binomials(fs, order, w);
}

QSeries theta_partial(const Monomial &m, int order) { return sum_eval(partial_theta_spec(m), order); }

QSeries theta_complete(const Monomial &m, int order) { return sum_eval(complete_theta_spec(m), order); }

QSeries gauss_binom(long top, long bottom, int order)
{
    if (bottom < 0 || top < 0 || bottom > top) {
        throw UsageError("gauss_binom needs 0 <= bottom <= top");
    }
    long degree = bottom * (top - bottom);
    int cap = static_cast<int>(std::max<long>(order, degree));
    QSeries buf(cap);
    buf.ref(0) = LaurentPoly(Rational(1));
    Term one{ExpVec{}, Rational(1)};
    for (long j = 1; j <= top; ++j) {
        kernels::mul_binomial(buf, one, static_cast<int>(j), {});
    }
    for (long j = 1; j <= bottom; ++j) {
        kernels::div_binomial(buf, one, static_cast<int>(j), {});
    }
    for (long j = 1; j <= top - bottom; ++j) {
        kernels::div_binomial(buf, one, static_cast<int>(j), {});
    }
    return buf.truncated(order);
}

QSeries hypergeometric(const std::vector<Param> &uppers, const std::vector<Param> &lowers, const Monomial &arg,
                       int order, int base_step)
{
    return sum_eval(hypergeometric_spec(uppers, lowers, arg, base_step), order);
}

} // namespace qtheta
