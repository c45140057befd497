#include <qtheta/qseries.hpp>

#include <algorithm>
#include <sstream>

#include <qtheta/errors.hpp>
#include <qtheta/kernels.hpp>

namespace qtheta
{

// --- Monomial ---------------------------------------------------------------

Monomial::Monomial(Rational c, int q_exp, ExpVec v) : coef(std::move(c)), q(q_exp), vars(v)
{
    if (coef.is_zero()) {
        throw UsageError("monomial with zero coefficient");
    }
}

Monomial Monomial::var(char name, int q_exp, Rational c)
{
    int i = var_index(name);
    if (i < 0) {
        throw UsageError(std::string("unknown variable '") + name + "'");
    }
    ExpVec e;
    e[i] = 1;
    return Monomial(std::move(c), q_exp, e);
}

Monomial Monomial::inverse() const { return Monomial(coef.inverse(), -q, -vars); }

Monomial Monomial::pow(int k) const { return Monomial(coef.pow(k), q * k, vars.scaled(k)); }

Monomial operator*(const Monomial &a, const Monomial &b)
{
    return Monomial(a.coef * b.coef, a.q + b.q, a.vars + b.vars);
}

std::strong_ordering operator<=>(const Monomial &a, const Monomial &b)
{
    if (auto c = a.q <=> b.q; c != 0) {
        return c;
    }
    if (auto c = a.vars <=> b.vars; c != 0) {
        return c;
    }
    return a.coef <=> b.coef;
}

std::string Monomial::to_string() const
{
    std::string s = coef.to_string();
    if (q != 0) {
        s += " * q^" + std::to_string(q);
    }
    for (int i = 0; i < kMaxVars; ++i) {
        if (vars[i] != 0) {
            s += " * ";
            s += kVarNames[static_cast<std::size_t>(i)];
            s += "^" + std::to_string(vars[i]);
        }
    }
    return s;
}

// --- QSeries ----------------------------------------------------------------

QSeries::QSeries(int order, int arity, int base_div)
    : lo_(std::min(0, order + 1)), order_(order), base_div_(base_div), arity_(arity), zero_(arity)
{
    if (base_div < 1) {
        throw UsageError("base_div must be positive");
    }
    c_.assign(static_cast<std::size_t>(std::max(0, order_ - lo_ + 1)), LaurentPoly(arity));
}

QSeries QSeries::constant(const LaurentPoly &c, int order, int base_div)
{
    return monomial(c, 0, order, base_div);
}

QSeries QSeries::monomial(const LaurentPoly &c, int q_exp, int order, int base_div)
{
    QSeries s(order, c.arity(), base_div);
    if (q_exp <= order && !c.is_zero()) {
        s.ref(q_exp) = c;
    }
    return s;
}

QSeries QSeries::from_coeffs(int lo, int order, std::vector<LaurentPoly> coeffs, int base_div)
{
    if (static_cast<int>(coeffs.size()) > std::max(0, order - lo + 1)) {
        throw UsageError("more coefficients than the exponent range lo..order holds");
    }
    int arity = coeffs.empty() ? kMaxVars : coeffs.front().arity();
    QSeries s(order, arity, base_div);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_zero()) {
            s.ref(lo + static_cast<int>(i)) = std::move(coeffs[i]);
        }
    }
    return s;
}

int QSeries::valuation() const
{
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
            return lo_ + static_cast<int>(i);
        }
    }
    return order_ + 1;
}

const LaurentPoly &QSeries::at(int e) const
{
    if (e > order_) {
        throw OrderExceeded("coefficient of q^" + std::to_string(e) + " requested beyond validated order "
                            + std::to_string(order_));
    }
    if (e < lo_) {
        return zero_;
    }
    return c_[static_cast<std::size_t>(e - lo_)];
}

LaurentPoly &QSeries::ref(int e)
{
    if (e > order_) {
        throw OrderExceeded("write to q^" + std::to_string(e) + " beyond order " + std::to_string(order_));
    }
    if (e < lo_) {
        c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - e), LaurentPoly(arity_));
        lo_ = e;
    }
    return c_[static_cast<std::size_t>(e - lo_)];
}

QSeries QSeries::truncated(int order) const
{
    QSeries r = *this;
    if (order < r.order_) {
        r.order_ = order;
        r.c_.resize(static_cast<std::size_t>(std::max(0, order - r.lo_ + 1)));
    }
    return r;
}

void QSeries::trim()
{
    std::size_t i = 0;
    while (i < c_.size() && c_[i].is_zero()) {
        ++i;
    }
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(i));
    lo_ += static_cast<int>(i);
}

void QSeries::apply_window(const Window &w)
{
    if (!w) {
        return;
    }
    for (auto &c : c_) {
        c.truncate_window(*w);
    }
}

std::string QSeries::dump() const
{
    std::ostringstream os;
    int start = std::min(valuation(), std::min(0, order_));
    for (int e = start; e <= order_; ++e) {
        os << "q^" << e << " : " << at(e).to_string() << "\n";
    }
    return os.str();
}

bool operator==(const QSeries &a, const QSeries &b)
{
    if (a.order_ != b.order_ || a.base_div_ != b.base_div_) {
        return false;
    }
    int lo = std::min(a.lo_, b.lo_);
    for (int e = lo; e <= a.order_; ++e) {
        if (a.at(e) != b.at(e)) {
            return false;
        }
    }
    return true;
}

// --- ring operations -------------------------------------------------------

namespace
{

void check_compatible(const QSeries &a, const QSeries &b)
{
    if (a.base_div() != b.base_div()) {
        throw UsageError("series base_div mismatch (" + std::to_string(a.base_div()) + " vs "
                         + std::to_string(b.base_div()) + ")");
    }
    if (a.arity() != b.arity()) {
        throw UsageError("series coefficient arity mismatch");
    }
}

QSeries mul_impl(const QSeries &a, const QSeries &b, const Window &w, bool parallel)
{
    check_compatible(a, b);
    int va = a.valuation(), vb = b.valuation();
    int order = std::min(a.order() + vb, b.order() + va);
    QSeries r(order, a.arity(), a.base_div());
    if (va > a.order() || vb > b.order()) {
        return r;
    }
    int lo = va + vb;
    auto coeffs = parallel ? kernels::cauchy_parallel(a, b, lo, order, w) : kernels::cauchy_serial(a, b, lo, order, w);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_zero()) {
            r.ref(lo + static_cast<int>(i)) = std::move(coeffs[i]);
        }
    }
    return r;
}

} // namespace

QSeries qs_add(const QSeries &a, const QSeries &b, const Window &w)
{
    check_compatible(a, b);
    int order = std::min(a.order(), b.order());
    QSeries r(order, a.arity(), a.base_div());
    int lo = std::min(a.lo(), b.lo());
    for (int e = lo; e <= order; ++e) {
        LaurentPoly c = a.at(e) + b.at(e);
        if (w) {
            c.truncate_window(*w);
        }
        if (!c.is_zero()) {
            r.ref(e) = std::move(c);
        }
    }
    if (lo < r.lo()) {
        r.ref(lo);
    }
    return r;
}

QSeries qs_neg(const QSeries &a)
{
    QSeries r = a;
    for (int e = a.lo(); e <= a.order(); ++e) {
        LaurentPoly &c = r.ref(e);
        if (!c.is_zero()) {
            c = -c;
        }
    }
    return r;
}

QSeries qs_sub(const QSeries &a, const QSeries &b, const Window &w) { return qs_add(a, qs_neg(b), w); }

QSeries qs_scale(const QSeries &a, const LaurentPoly &c, const Window &w)
{
    QSeries r(a.order(), a.arity(), a.base_div());
    if (c.is_zero()) {
        return r;
    }
    for (int e = a.lo(); e <= a.order(); ++e) {
        const LaurentPoly &x = a.at(e);
        if (x.is_zero()) {
            continue;
        }
        LaurentPoly p = x * c;
        if (w) {
            p.truncate_window(*w);
        }
        if (!p.is_zero()) {
            r.ref(e) = std::move(p);
        }
    }
    return r;
}

QSeries qs_shift(const QSeries &a, int k)
{
    QSeries r(a.order() + k, a.arity(), a.base_div());
    for (int e = a.lo(); e <= a.order(); ++e) {
        const LaurentPoly &x = a.at(e);
        if (!x.is_zero()) {
            r.ref(e + k) = x;
        }
    }
    return r;
}

QSeries qs_mul(const QSeries &a, const QSeries &b, const Window &w) { return mul_impl(a, b, w, true); }

QSeries qs_mul_serial(const QSeries &a, const QSeries &b, const Window &w) { return mul_impl(a, b, w, false); }

namespace
{

LaurentPoly invert_leading(const LaurentPoly &c0, const Window &w)
{
    if (c0.is_monomial() || !w) {
        return lp_invert_unit(c0);
    }
    return window_inverse(c0, *w);
}

} // namespace

QSeries qs_invert(const QSeries &a, int n_terms, const Window &w)
{
    if (n_terms < 0) {
        throw UsageError("qs_invert needs n_terms >= 0");
    }
    int v = a.valuation();
    if (v > a.order()) {
        throw NotAUnit("cannot invert a series that vanishes through q^" + std::to_string(a.order()));
    }
    int avail = a.order() - v;
    if (n_terms > avail) {
        throw OrderExceeded("inverse with " + std::to_string(n_terms) + " terms needs the input through q^"
                            + std::to_string(v + n_terms) + ", have q^" + std::to_string(a.order()));
    }
    LaurentPoly inv0 = invert_leading(a.at(v), w);
    std::vector<LaurentPoly> b;
    b.reserve(static_cast<std::size_t>(n_terms + 1));
    b.push_back(inv0);
    for (int k = 1; k <= n_terms; ++k) {
        kernels::TermAccumulator acc;
        for (int i = 1; i <= k; ++i) {
            const LaurentPoly &ai = a.at(v + i);
            const LaurentPoly &bk = b[static_cast<std::size_t>(k - i)];
            if (!ai.is_zero() && !bk.is_zero()) {
                acc.add_product(ai, bk);
            }
        }
        LaurentPoly s = acc.take(a.arity());
        if (w) {
            s.truncate_window(*w);
        }
        LaurentPoly bk = -(s * inv0);
        if (w) {
            bk.truncate_window(*w);
        }
        b.push_back(std::move(bk));
    }
    return QSeries::from_coeffs(-v, -v + n_terms, std::move(b), a.base_div());
}

QSeries qs_invert_full(const QSeries &a, const Window &w)
{
    int v = a.valuation();
    if (v > a.order()) {
        throw NotAUnit("cannot invert a series that vanishes through q^" + std::to_string(a.order()));
    }
    return qs_invert(a, a.order() - v, w);
}

QSeries qs_subst_q_power(const QSeries &a, int k)
{
    if (k < 1) {
        throw UsageError("q-power substitution needs k >= 1");
    }
    QSeries r(a.order() * k, a.arity(), a.base_div());
    for (int e = a.lo(); e <= a.order(); ++e) {
        const LaurentPoly &c = a.at(e);
        if (!c.is_zero()) {
            r.ref(e * k) = c;
        }
    }
    return r;
}

namespace
{

long long floor_rational(const Rational &r)
{
    mpq_class q = r.to_mpq();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

} // namespace

QSeries qs_subst_var(const QSeries &a, char var, const Monomial &m, const std::optional<DegreeBound> &bound)
{
    int vi = var_index(var);
    if (vi < 0 || vi >= a.arity()) {
        throw UsageError(std::string("cannot substitute unknown variable '") + var + "'");
    }
    if (m.vars.used_arity() > a.arity()) {
        throw UsageError("substituted monomial uses variables beyond the series arity");
    }
    int order = a.order();
    if (m.q != 0) {
        if (!bound) {
            throw UnsoundTruncation(std::string("substituting ") + var + " -> " + m.to_string()
                                    + " moves q-exponents; a degree bound is required to size the result");
        }
        Rational alpha(std::abs(m.q));
        Rational shrink = Rational(1) - alpha * bound->slope;
        if (shrink.sign() <= 0) {
            throw UnsoundTruncation("degree bound grows too fast for this substitution; cannot bound the order");
        }
        // Unknown terms live at e >= order + 1 with |deg| <= slope e + intercept,
        // so they land no lower than (order + 1) * shrink - alpha * intercept.
        Rational lowest = Rational(order + 1) * shrink - alpha * bound->intercept;
        long long ceil_lowest = -floor_rational(-lowest);
        order = static_cast<int>(std::min<long long>(order, ceil_lowest - 1));
    }
    std::vector<std::pair<int, Term>> moved;
    for (int e = a.lo(); e <= a.order(); ++e) {
        for (const auto &t : a.at(e).terms()) {
            int d = t.exps[vi];
            ExpVec rest = t.exps;
            rest[vi] = 0;
            Monomial md = m.pow(d);
            moved.push_back({e + md.q, Term{rest + md.vars, t.coef * md.coef}});
        }
    }
    QSeries r(order, a.arity(), a.base_div());
    std::vector<std::vector<Term>> buckets;
    int lo = order + 1;
    for (const auto &[e, t] : moved) {
        if (e <= order) {
            lo = std::min(lo, e);
        }
    }
    if (lo <= order) {
        buckets.resize(static_cast<std::size_t>(order - lo + 1));
        for (auto &[e, t] : moved) {
            if (e <= order) {
                buckets[static_cast<std::size_t>(e - lo)].push_back(std::move(t));
            }
        }
        for (std::size_t i = 0; i < buckets.size(); ++i) {
            LaurentPoly p = LaurentPoly::from_terms(std::move(buckets[i]), a.arity());
            if (!p.is_zero()) {
                r.ref(lo + static_cast<int>(i)) = std::move(p);
            }
        }
    }
    return r;
}

LaurentPoly qs_coeff(const QSeries &a, int e) { return a.at(e); }

std::optional<MismatchRecord> qs_diff_report(const QSeries &a, const QSeries &b)
{
    check_compatible(a, b);
    int lo = std::min(a.lo(), b.lo());
    int hi = std::min(a.order(), b.order());
    if (hi < lo) {
        throw UsageError("series share no validated exponent range");
    }
    for (int e = lo; e <= hi; ++e) {
        if (a.at(e) != b.at(e)) {
            return MismatchRecord{e, a.at(e) - b.at(e)};
        }
    }
    return std::nullopt;
}

// --- window helpers --------------------------------------------------------

LaurentPoly window_geometric(const Term &m, int radius)
{
    if (m.exps.is_zero()) {
        if (m.coef.is_one()) {
            throw NonEvaluable("geometric expansion of 1/(1 - 1)");
        }
        return LaurentPoly((Rational(1) - m.coef).inverse());
    }
    LaurentPoly acc(Rational(1));
    LaurentPoly power(Rational(1));
    LaurentPoly step = LaurentPoly::monomial(m.coef, m.exps);
    while (true) {
        power = power * step;
        power.truncate_window(radius);
        if (power.is_zero()) {
            break;
        }
        acc += power;
    }
    return acc;
}

LaurentPoly window_inverse(const LaurentPoly &p, int radius)
{
    Rational c = p.constant_term();
    if (c.is_zero()) {
        throw UnsoundTruncation("windowed inverse of '" + p.to_string()
                                + "' has no constant term to expand around");
    }
    LaurentPoly r = LaurentPoly(Rational(1), p.arity()) - p.scaled(c.inverse());
    LaurentPoly acc(Rational(1), p.arity());
    LaurentPoly power(Rational(1), p.arity());
    int limit = 8 * radius + 8;
    for (int k = 1;; ++k) {
        power = power * r;
        power.truncate_window(radius);
        if (power.is_zero()) {
            break;
        }
        if (k > limit) {
            throw UnsoundTruncation("windowed inverse of '" + p.to_string() + "' does not terminate in the window");
        }
        acc += power;
    }
    acc = acc.scaled(c.inverse());
    acc.truncate_window(radius);
    return acc;
}

} // namespace qtheta
