#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace microloc {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper around `mpq_class`. The wrapper exists so that every
/// arithmetic expression materializes immediately; GMP's expression templates
/// do not mix well with `auto` inside generic code.
class Rational {
public:
    Rational() = default;
    Rational(int v) : q_(v) {}                       // NOLINT(google-explicit-constructor)
    Rational(long v) : q_(v) {}                      // NOLINT(google-explicit-constructor)
    Rational(long long v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& v) : q_(v) {}          // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& num, const mpz_class& den);
    Rational(long num, long den);
    explicit Rational(const mpq_class& v) : q_(v) { q_.canonicalize(); }

    /// Parses "n" or "n/m" (optional leading sign). Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational inverse() const;
    Rational pow(long e) const;
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    /// Largest integer <= value.
    mpz_class floor() const;
    /// Smallest integer >= value.
    mpz_class ceil() const;

    std::string to_string() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class q_;
};

/// p-adic valuation of a nonzero integer.
long padic_valuation(const mpz_class& n, unsigned long p);
/// p-adic valuation of a nonzero rational: v_p(num) - v_p(den).
long padic_valuation(const Rational& r, unsigned long p);

bool is_prime(unsigned long p);

Rational factorial(unsigned long n);
/// Falling product u (u-1) ... (u-k+1); 1 when k = 0. Defined for negative u.
Rational falling(long u, unsigned long k);
Rational binomial(long n, unsigned long k);

}  // namespace microloc
