#include <qtheta/evaluate.hpp>

#include <algorithm>
#include <limits>

#include <qtheta/errors.hpp>

namespace qtheta
{

namespace
{

constexpr long kInf = std::numeric_limits<long>::max() / 4;
constexpr int kProbeLimit = 256;

// Sum of negative exponents among E, E+s, ...; `length` < 0 means infinite.
long negative_exponents(long E, long s, long length)
{
    long total = 0;
    for (long j = 0; (length < 0 || j < length) && E + s * j < 0; ++j) {
        total += E + s * j;
    }
    return total;
}

int fin_step(const Expr &e) { return e.param().kind == Param::Kind::PairSqrt ? 2 * e.step() : e.step(); }

std::string child_path(const std::string &path, const Expr &parent, std::size_t i)
{
    std::string s = path + "/" + kind_name(parent.kind());
    if (parent.kids().size() > 1) {
        s += "[" + std::to_string(i) + "]";
    }
    return s;
}

template <class F>
auto at_path(const std::string &path, F &&f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error &) {
        rethrow_with_context("at " + path);
    }
}

int clamp_order(long v)
{
    if (v > std::numeric_limits<int>::max() / 4 || v < std::numeric_limits<int>::min() / 4) {
        throw OrderExceeded("truncation order out of range");
    }
    return static_cast<int>(v);
}

class Evaluator
{
public:
    Evaluator(const EvalOptions &opts, EvalStats *stats) : opts_(opts), stats_(stats) {}

    QSeries eval(const Expr &e, int order, const std::string &path);
    long lower_bound(const Expr &e, const std::string &path);
    int exact_valuation(const Expr &e, const std::string &path);

private:
    EvalOptions opts_;
    EvalStats *stats_;
};

long Evaluator::lower_bound(const Expr &e, const std::string &path)
{
    switch (e.kind()) {
    case Expr::Kind::Const: return e.poly().is_zero() ? kInf : 0;
    case Expr::Kind::Mono: return e.monomial().q;
    case Expr::Kind::PochInf: return negative_exponents(e.monomial().q, e.step(), -1);
    case Expr::Kind::PochFin: return negative_exponents(e.param().m.q, fin_step(e), e.length());
    case Expr::Kind::Sum: return at_path(path + "/Sum", [&] { return min_valuation_bound(e.spec()); });
    case Expr::Kind::Neg: return lower_bound(e.kids()[0], child_path(path, e, 0));
    case Expr::Kind::Inv: return -exact_valuation(e.kids()[0], child_path(path, e, 0));
    case Expr::Kind::Add: {
        long v = kInf;
        for (std::size_t i = 0; i < e.kids().size(); ++i) {
            v = std::min(v, lower_bound(e.kids()[i], child_path(path, e, i)));
        }
        return v;
    }
    case Expr::Kind::Mul: {
        long v = 0;
        for (std::size_t i = 0; i < e.kids().size(); ++i) {
            long b = lower_bound(e.kids()[i], child_path(path, e, i));
            if (b >= kInf) {
                return kInf;
            }
            v += b;
        }
        return v;
    }
    }
    return 0;
}

int Evaluator::exact_valuation(const Expr &e, const std::string &path)
{
    long lb = lower_bound(e, path);
    if (lb >= kInf) {
        throw NotAUnit("at " + path + ": cannot invert the zero series");
    }
    for (int extra = 0;; extra = extra == 0 ? 8 : extra * 4) {
        if (extra > kProbeLimit) {
            throw NotAUnit("at " + path + ": no nonzero coefficient through q^" + std::to_string(lb + extra / 4));
        }
        QSeries s = eval(e, clamp_order(lb + extra), path);
        if (!s.is_zero()) {
            return s.valuation();
        }
    }
}

QSeries Evaluator::eval(const Expr &e, int order, const std::string &path)
{
    const Window &w = opts_.window;
    switch (e.kind()) {
    case Expr::Kind::Const:
        return at_path(path, [&] {
            QSeries s = QSeries::constant(e.poly(), order);
            s.apply_window(w);
            return s;
        });
    case Expr::Kind::Mono:
        return at_path(path, [&] {
            const Monomial &m = e.monomial();
            QSeries s = QSeries::monomial(LaurentPoly::monomial(m.coef, m.vars), m.q, order);
            s.apply_window(w);
            return s;
        });
    case Expr::Kind::PochInf:
        return at_path(path, [&] { return poch_infinite(e.monomial(), e.step(), order, w); });
    case Expr::Kind::PochFin:
        return at_path(path, [&] { return poch_finite(e.param(), e.length(), e.step(), order, w); });
    case Expr::Kind::Sum:
        return at_path(path, [&] {
            SumStats st;
            QSeries s = opts_.parallel ? sum_eval(e.spec(), order, w, &st) : sum_eval_serial(e.spec(), order, w, &st);
            if (stats_) {
#pragma omp critical(qtheta_eval_stats)
                stats_->sums.push_back(SumUse{path, st.n_min, st.n_max, st.terms});
            }
            return s;
        });
    case Expr::Kind::Neg: return qs_neg(eval(e.kids()[0], order, child_path(path, e, 0)));
    case Expr::Kind::Add: {
        QSeries acc(order);
        for (std::size_t i = 0; i < e.kids().size(); ++i) {
            QSeries k = eval(e.kids()[i], order, child_path(path, e, i));
            acc = qs_add(acc, k, w);
        }
        return acc;
    }
    case Expr::Kind::Mul: {
        std::vector<long> lb;
        long total = 0;
        for (std::size_t i = 0; i < e.kids().size(); ++i) {
            lb.push_back(lower_bound(e.kids()[i], child_path(path, e, i)));
            if (lb.back() >= kInf) {
                return QSeries(order);
            }
            total += lb.back();
        }
        if (total > order) {
            return QSeries(order);
        }
        QSeries acc;
        for (std::size_t i = 0; i < e.kids().size(); ++i) {
            int need = clamp_order(order - (total - lb[i]));
            QSeries k = eval(e.kids()[i], need, child_path(path, e, i));
            acc = i == 0 ? k : at_path(path, [&] { return qs_mul(acc, k, w); });
        }
        return at_path(path, [&] { return acc.truncated(order); });
    }
    case Expr::Kind::Inv: {
        std::string cp = child_path(path, e, 0);
        int v = exact_valuation(e.kids()[0], cp);
        if (order + v < 0) {
            return QSeries(order);
        }
        QSeries k = eval(e.kids()[0], clamp_order(static_cast<long>(order) + 2L * v), cp);
        return at_path(path, [&] { return qs_invert(k, order + v, w).truncated(order); });
    }
    }
    return QSeries(order);
}

} // namespace

QSeries eval_expr(const Expr &e, int order, const EvalOptions &opts, EvalStats *stats, const std::string &root)
{
    Evaluator ev(opts, stats);
    return ev.eval(e, order, root);
}

long valuation_lower_bound(const Expr &e, const EvalOptions &opts)
{
    Evaluator ev(opts, nullptr);
    return ev.lower_bound(e, "expr");
}

namespace
{

void validate(const Expr &e, const std::string &path, Validation &out)
{
    if (!out.ok) {
        return;
    }
    auto fail = [&](const std::string &msg) {
        out.ok = false;
        out.diagnostic = path + ": " + msg;
    };
    switch (e.kind()) {
    case Expr::Kind::Sum: {
        if (auto d = denominator_diagnostic(e.spec())) {
            fail(*d);
            return;
        }
        try {
            long v = min_valuation_bound(e.spec());
            out.certificate.push_back(path + ": sum valuation bound >= " + std::to_string(v)
                                      + ", divergent along the range");
        } catch (const Error &err) {
            fail(err.what());
        }
        return;
    }
    case Expr::Kind::PochFin: {
        return;
    }
    case Expr::Kind::Inv: {
        std::string cp = child_path(path, e, 0);
        validate(e.kids()[0], cp, out);
        if (!out.ok) {
            return;
        }
        try {
            Evaluator ev(EvalOptions{std::nullopt, false}, nullptr);
            int v = ev.exact_valuation(e.kids()[0], cp);
            QSeries s = ev.eval(e.kids()[0], v, cp);
            const LaurentPoly &lead = s.at(v);
            if (!lead.is_monomial()) {
                fail("NotAUnit: leading coefficient " + lead.to_string() + " of the inverted expression is not a monomial");
                return;
            }
            out.certificate.push_back(path + ": inverse of valuation-" + std::to_string(v) + " unit "
                                      + lead.to_string());
        } catch (const Error &err) {
            fail(err.what());
        }
        return;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Mul:
    case Expr::Kind::Neg:
        for (std::size_t i = 0; i < e.kids().size(); ++i) {
            validate(e.kids()[i], child_path(path, e, i), out);
        }
        return;
    default: return;
    }
}

} // namespace

Validation validate_evaluable(const Expr &e, const std::string &root)
{
    Validation out;
    validate(e, root, out);
    return out;
}

} // namespace qtheta
