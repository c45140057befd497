#ifndef QTHETA_KERNELS_HPP
#define QTHETA_KERNELS_HPP

#include <functional>
#include <vector>

#include <qtheta/qseries.hpp>

// Inner loops shared by the series ring and the sum evaluator. Every
// parallel kernel has a serial twin with identical results; the serial
// versions are the reference used by the tests and the benchmark.
namespace qtheta::kernels
{

// Accumulator that compacts itself when it grows large.
class TermAccumulator
{
public:
    void add_product(const LaurentPoly &a, const LaurentPoly &b);
    void add(const LaurentPoly &a);
    LaurentPoly take(int arity);

private:
    void compact();
    std::vector<Term> buf_;
    std::size_t compacted_ = 0;
};

// Coefficients of the Cauchy product for exponents lo..order.
std::vector<LaurentPoly> cauchy_serial(const QSeries &a, const QSeries &b, int lo, int order, const Window &w);
std::vector<LaurentPoly> cauchy_parallel(const QSeries &a, const QSeries &b, int lo, int order, const Window &w);

// s *= (1 - m q^e), in place over the stored range of s (extended downward
// when e < 0). Coefficients above s.order() are discarded.
void mul_binomial(QSeries &s, const Term &m, int e, const Window &w);

// s /= (1 - m q^e). Exact mode requires e >= 1, or e == 0 with a constant
// m != 1. Windowed mode also accepts e <= 0 and then expands 1/(1 - X) as
// sum X^k in the variables: for e < 0 the sum stops at the last power inside
// the window and s loses -e * window_power(m) orders at the top.
void div_binomial(QSeries &s, const Term &m, int e, const Window &w);

// Largest |exponent| over the variables.
int max_abs_degree(const ExpVec &v);
// Number of powers K with m^K inside window w (w / max_abs_degree).
inline int window_power(const ExpVec &m, int w) { return w / max_abs_degree(m); }

// True when dividing by (1 - m q^e) is legal in exact mode.
bool binomial_invertible(const Term &m, int e);

// Evaluates term(i) for i in [0, count) and returns their sum, valid to
// `order`. The terms are combined in index order so the result is the same
// for every thread count.
QSeries sum_parallel(int count, int order, int arity, const std::function<QSeries(int)> &term, const Window &w);
QSeries sum_serial(int count, int order, int arity, const std::function<QSeries(int)> &term, const Window &w);

} // namespace qtheta::kernels

#endif
