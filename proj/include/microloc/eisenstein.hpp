#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "microloc/rational.hpp"
#include "microloc/valuation.hpp"

namespace microloc {

/// Element of Q(pi) where pi is a fixed root of x^(p-1) + p = 0.
///
/// Stored as c_0 + c_1 pi + ... + c_{p-2} pi^(p-2) with trailing zeros trimmed.
/// An element built from a rational carries prime 0 ("unbound") and combines
/// with elements of any prime; this lets generic code write K(1) or K(r).
class EisensteinScalar {
public:
    EisensteinScalar() = default;
    EisensteinScalar(int v) : EisensteinScalar(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    EisensteinScalar(Rational v);                               // NOLINT(google-explicit-constructor)
    EisensteinScalar(unsigned long p, std::vector<Rational> coeffs);

    /// The uniformizer pi for the prime p.
    static EisensteinScalar pi(unsigned long p);

    unsigned long prime() const { return p_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t j) const { return j < c_.size() ? c_[j] : Rational(); }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rational as_rational() const;

    /// min_j (v_p(c_j) + j/(p-1)); `p_hint` supplies the prime for unbound rationals.
    Valuation valuation(unsigned long p_hint = 0) const;

    EisensteinScalar inverse() const;
    EisensteinScalar pow(long e) const;

    std::string to_string() const;

    EisensteinScalar& operator+=(const EisensteinScalar& o);
    EisensteinScalar& operator-=(const EisensteinScalar& o);
    EisensteinScalar& operator*=(const EisensteinScalar& o);
    EisensteinScalar& operator/=(const EisensteinScalar& o) { return *this *= o.inverse(); }

    friend EisensteinScalar operator+(EisensteinScalar a, const EisensteinScalar& b) { return a += b; }
    friend EisensteinScalar operator-(EisensteinScalar a, const EisensteinScalar& b) { return a -= b; }
    friend EisensteinScalar operator*(EisensteinScalar a, const EisensteinScalar& b) { return a *= b; }
    friend EisensteinScalar operator/(EisensteinScalar a, const EisensteinScalar& b) { return a /= b; }
    friend EisensteinScalar operator-(const EisensteinScalar& a);

    friend bool operator==(const EisensteinScalar& a, const EisensteinScalar& b);

    friend std::ostream& operator<<(std::ostream& os, const EisensteinScalar& x);

private:
    void trim();
    unsigned long merged_prime(const EisensteinScalar& o) const;

    unsigned long p_ = 0;
    std::vector<Rational> c_;
};

Valuation eisenstein_valuation(const EisensteinScalar& x, unsigned long p_hint = 0);

}  // namespace microloc
