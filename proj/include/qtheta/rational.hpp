#ifndef QTHETA_RATIONAL_HPP
#define QTHETA_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qtheta
{

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values that fit in 64-bit numerator/denominator are stored inline and
/// combined with 128-bit intermediates; anything larger falls back to a
/// shared, immutable GMP rational. The representation is canonical: a value
/// that fits inline is never stored as a GMP rational.
class Rational
{
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}
    Rational(long long n, long long d);
    explicit Rational(const mpq_class &q);

    // Accepts "p", "-p", "p/q" (decimal integers, q != 0).
    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;

    // Inline accessors; only valid when !is_big().
    bool is_big() const { return static_cast<bool>(big_); }
    long long small_num() const { return num_; }
    long long small_den() const { return den_; }

    mpq_class to_mpq() const;
    std::string to_string() const;

    Rational operator-() const;
    Rational inverse() const;

    friend Rational operator+(const Rational &a, const Rational &b);
    friend Rational operator-(const Rational &a, const Rational &b);
    friend Rational operator*(const Rational &a, const Rational &b);
    friend Rational operator/(const Rational &a, const Rational &b);

    Rational &operator+=(const Rational &b) { return *this = *this + b; }
    Rational &operator-=(const Rational &b) { return *this = *this - b; }
    Rational &operator*=(const Rational &b) { return *this = *this * b; }
    Rational &operator/=(const Rational &b) { return *this = *this / b; }

    friend bool operator==(const Rational &a, const Rational &b);
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

    // Integer power; negative exponents require a nonzero base.
    Rational pow(long long e) const;

private:
    static Rational from_i128(__int128 n, __int128 d);

    long long num_ = 0;
    long long den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

} // namespace qtheta

#endif
