#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>

#include <omp.h>

#include <qtheta/qblocks.hpp>
#include <qtheta/registry.hpp>

using namespace qtheta;

namespace
{

double time_ms(const std::function<void()> &f, int reps)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

bool row(const std::string &name, const QSeries &serial_out, const QSeries &parallel_out, double ts, double tp)
{
    bool same = serial_out == parallel_out;
    std::cout << std::left << std::setw(34) << name << std::right << std::fixed << std::setprecision(1)
              << std::setw(11) << ts << std::setw(11) << tp << std::setw(9) << std::setprecision(2) << ts / tp
              << "x  " << (same ? "equal" : "DIFFERENT") << "\n";
    return same;
}

} // namespace

// usage: qtheta_bench [order] [reps]
int main(int argc, char **argv)
{
    int order = argc > 1 ? std::atoi(argv[1]) : 120;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    std::cout << "threads " << omp_get_max_threads() << ", order " << order << ", best of " << reps << "\n";
    std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(11) << "serial ms" << std::setw(11)
              << "parallel ms" << std::setw(10) << "speedup" << "\n";
    bool ok = true;

    Monomial x = Monomial::var('x'), y = Monomial::var('y');
    SumSpec md;
    md.power = Monomial(1, 1);
    md.factors = {num(x * y, {2, 0}), den(Monomial(1, 1), {1, 0}), den(x.times_q(1), {1, 0}),
                  den(y.times_q(1), {1, 0}), den((x * y).times_q(1), {1, 0})};
    QSeries a, b;
    double ts = time_ms([&] { a = sum_eval_serial(md, order); }, reps);
    double tp = time_ms([&] { b = sum_eval(md, order); }, reps);
    ok &= row("sum_eval (xy)_2n/(q,qx,qy,qxy)_n", a, b, ts, tp);

    SumSpec jac = complete_theta_spec(x);
    ts = time_ms([&] { a = sum_eval_serial(jac, 4 * order); }, reps);
    tp = time_ms([&] { b = sum_eval(jac, 4 * order); }, reps);
    ok &= row("sum_eval complete theta, 4N", a, b, ts, tp);

    QSeries p = poch_infinite(x, 1, order);
    QSeries r = poch_infinite(y.times_q(1), 1, order);
    ts = time_ms([&] { a = qs_mul_serial(p, r); }, reps);
    tp = time_ms([&] { b = qs_mul(p, r); }, reps);
    ok &= row("qs_mul (x)_inf * (qy)_inf", a, b, ts, tp);

    const Identity &id = Catalog::builtin().at("main-difference");
    ts = time_ms([&] { (void)check_identity(id, order / 2, CheckOptions{false}); }, 1);
    tp = time_ms([&] { (void)check_identity(id, order / 2, CheckOptions{true}); }, 1);
    std::cout << std::left << std::setw(34) << "check main-difference, N/2" << std::right << std::fixed
              << std::setprecision(1) << std::setw(11) << ts << std::setw(11) << tp << std::setw(9)
              << std::setprecision(2) << ts / tp << "x\n";
    return ok ? 0 : 1;
}
