#include <qtheta/rational.hpp>

#include <limits>
#include <ostream>

#include <qtheta/errors.hpp>

namespace qtheta
{

namespace
{

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v)
{
    return v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max();
}

mpz_class to_mpz(i128 v)
{
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

} // namespace

Rational::Rational(long long n, long long d)
{
    if (d == 0) {
        throw UsageError("rational with zero denominator");
    }
    *this = from_i128(n, d);
}

Rational::Rational(const mpq_class &q)
{
    mpq_class c(q);
    c.canonicalize();
    if (c.get_num().fits_slong_p() && c.get_den().fits_slong_p()) {
        num_ = c.get_num().get_si();
        den_ = c.get_den().get_si();
    } else {
        big_ = std::make_shared<const mpq_class>(std::move(c));
    }
}

Rational Rational::from_i128(i128 n, i128 d)
{
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0) {
        d = 1;
    }
    Rational r;
    if (fits64(n) && fits64(d)) {
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
    } else {
        r.big_ = std::make_shared<const mpq_class>(mpq_class(to_mpz(n), to_mpz(d)));
    }
    return r;
}

Rational Rational::parse(std::string_view text)
{
    std::string s(text);
    if (s.empty()) {
        throw UsageError("empty rational literal");
    }
    auto valid_int = [](const std::string &t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) {
            return false;
        }
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') {
                return false;
            }
        }
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
        throw UsageError("malformed rational literal '" + s + "'");
    }
    if (num[0] == '+') {
        num.erase(0, 1);
    }
    mpz_class n(num), d(den);
    if (d == 0) {
        throw UsageError("rational with zero denominator");
    }
    return Rational(mpq_class(n, d));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const
{
    if (big_) {
        return sgn(*big_);
    }
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const
{
    if (big_) {
        return *big_;
    }
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::to_string() const
{
    if (big_) {
        return big_->get_str();
    }
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const
{
    if (!big_ && num_ != std::numeric_limits<long long>::min()) {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    return Rational(mpq_class(-to_mpq()));
}

Rational Rational::inverse() const
{
    if (is_zero()) {
        throw UsageError("inverse of zero rational");
    }
    if (!big_) {
        return from_i128(den_, num_);
    }
    return Rational(mpq_class(1 / to_mpq()));
}

Rational operator+(const Rational &a, const Rational &b)
{
    if (!a.big_ && !b.big_) {
        if (a.den_ == 1 && b.den_ == 1) {
            i128 s = static_cast<i128>(a.num_) + b.num_;
            if (fits64(s)) {
                Rational r;
                r.num_ = static_cast<long long>(s);
                return r;
            }
        }
        i128 n = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
        i128 d = static_cast<i128>(a.den_) * b.den_;
        return Rational::from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }

Rational operator*(const Rational &a, const Rational &b)
{
    if (!a.big_ && !b.big_) {
        if (a.den_ == 1 && b.den_ == 1) {
            i128 p = static_cast<i128>(a.num_) * b.num_;
            if (fits64(p)) {
                Rational r;
                r.num_ = static_cast<long long>(p);
                return r;
            }
        }
        i128 n = static_cast<i128>(a.num_) * b.num_;
        i128 d = static_cast<i128>(a.den_) * b.den_;
        return Rational::from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational &a, const Rational &b) { return a * b.inverse(); }

bool operator==(const Rational &a, const Rational &b)
{
    if (!a.big_ && !b.big_) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    if (a.big_ && b.big_) {
        return *a.big_ == *b.big_;
    }
    // Canonical storage: a big value never equals an inline one.
    return false;
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b)
{
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

Rational Rational::pow(long long e) const
{
    if (e < 0) {
        return inverse().pow(-e);
    }
    Rational base = *this, acc(1);
    while (e > 0) {
        if (e & 1) {
            acc *= base;
        }
        e >>= 1;
        if (e > 0) {
            base *= base;
        }
    }
    return acc;
}

std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

} // namespace qtheta
