#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "microloc/errors.hpp"
#include "microloc/scalar.hpp"

namespace microloc {

/// Laurent polynomial sum_k c_k x^k with finitely many nonzero terms.
///
/// Operator coefficients are ordinary polynomials almost everywhere; negative
/// exponents only appear transiently during coordinate changes and at infinity.
template <Scalar K>
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(K c) { // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    LaurentPoly(long low, std::vector<K> coeffs) : low_(low), c_(std::move(coeffs)) { normalize(); }

    static LaurentPoly monomial(long k, K c) { return LaurentPoly(k, std::vector<K>{std::move(c)}); }
    static LaurentPoly x() { return monomial(1, K(Rational(1))); }
    /// Polynomial with coefficients c_0, c_1, ...
    static LaurentPoly from_coeffs(std::vector<K> coeffs) { return LaurentPoly(0, std::move(coeffs)); }

    bool is_zero() const { return c_.empty(); }
    /// Lowest and highest exponents; both 0 for the zero polynomial.
    long low() const { return low_; }
    long high() const { return c_.empty() ? 0 : low_ + static_cast<long>(c_.size()) - 1; }
    long degree() const { return high(); }
    bool is_polynomial() const { return c_.empty() || low_ >= 0; }
    bool is_constant() const { return c_.empty() || (low_ == 0 && c_.size() == 1); }

    K coeff(long k) const {
        if (k < low_ || k > high() || c_.empty()) return K();
        return c_[static_cast<std::size_t>(k - low_)];
    }
    K leading() const { return c_.empty() ? K() : c_.back(); }

    /// Dense coefficients c_0..c_deg; the polynomial must have no negative exponents.
    std::vector<K> poly_coeffs() const {
        if (!is_polynomial()) throw std::domain_error("poly_coeffs of a Laurent polynomial with negative exponents");
        std::vector<K> out(c_.empty() ? 0 : static_cast<std::size_t>(high() + 1));
        for (std::size_t i = 0; i < c_.size(); ++i) out[static_cast<std::size_t>(low_) + i] = c_[i];
        return out;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { return accumulate(o, K(Rational(1))); }
    LaurentPoly& operator-=(const LaurentPoly& o) { return accumulate(o, K(Rational(-1))); }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(LaurentPoly a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return {};
        std::vector<K> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
        }
        return LaurentPoly(a.low_ + b.low_, std::move(out));
    }
    friend LaurentPoly operator*(const K& s, LaurentPoly a) {
        for (auto& c : a.c_) c = s * c;
        a.normalize();
        return a;
    }

    LaurentPoly derivative() const {
        std::vector<K> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = K(Rational(low_ + static_cast<long>(i))) * c_[i];
        return LaurentPoly(low_ - 1, std::move(out));
    }

    /// Multiplication by x^k.
    LaurentPoly shifted(long k) const {
        LaurentPoly r = *this;
        if (!r.c_.empty()) r.low_ += k;
        return r;
    }

    /// x -> x^q for q >= 1.
    LaurentPoly compose_power(long q) const {
        if (q < 1) throw std::invalid_argument("compose_power needs q >= 1");
        LaurentPoly r;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) r += monomial((low_ + static_cast<long>(i)) * q, c_[i]);
        return r;
    }

    /// x -> x + c; only for genuine polynomials.
    LaurentPoly translated(const K& c) const {
        if (!is_polynomial()) throw std::domain_error("translation of a Laurent polynomial with negative exponents");
        // Horner in the shifted variable
        LaurentPoly r;
        const LaurentPoly lin = LaurentPoly::from_coeffs({c, K(Rational(1))});
        for (long k = high(); k >= 0; --k) r = r * lin + LaurentPoly(coeff(k));
        return r;
    }

    K eval(const K& x0) const {
        if (!is_polynomial()) throw std::domain_error("eval of a Laurent polynomial with negative exponents");
        K acc;
        for (long k = high(); k >= 0; --k) acc = acc * x0 + coeff(k);
        return acc;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.low_ == b.low_ && a.c_ == b.c_; }

    /// Rendering such as "t^2 + 2*t - 1/3". Used for diagnostics only.
    std::string to_string(const char* var = "t") const {
        std::string out;
        for (long k = high(); k >= low_ && !c_.empty(); --k) {
            const K c = coeff(k);
            if (c.is_zero()) continue;
            std::string cs = c.to_string();
            const bool neg = cs[0] == '-';
            if (neg) cs = cs.substr(1);
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            const std::string mono = k == 0 ? "" : std::string(var) + (k == 1 ? "" : "^" + std::to_string(k));
            if (mono.empty()) out += cs;
            else if (cs == "1") out += mono;
            else out += cs + "*" + mono;
        }
        return out.empty() ? "0" : out;
    }

private:
    LaurentPoly& accumulate(const LaurentPoly& o, const K& sign) {
        if (o.c_.empty()) return *this;
        if (c_.empty()) {
            *this = o;
            if (sign != K(Rational(1))) *this = sign * *this;
            return *this;
        }
        const long lo = std::min(low_, o.low_);
        const long hi = std::max(high(), o.high());
        std::vector<K> out(static_cast<std::size_t>(hi - lo + 1));
        for (std::size_t i = 0; i < c_.size(); ++i) out[static_cast<std::size_t>(low_ - lo) + i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            auto& slot = out[static_cast<std::size_t>(o.low_ - lo) + i];
            slot = slot + sign * o.c_[i];
        }
        low_ = lo;
        c_ = std::move(out);
        normalize();
        return *this;
    }
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            low_ += static_cast<long>(lead);
        }
        if (c_.empty()) low_ = 0;
    }

    long low_ = 0;
    std::vector<K> c_;
};

/// Quotient and remainder of polynomial division; `b` must be nonzero.
template <Scalar K>
std::pair<LaurentPoly<K>, LaurentPoly<K>> poly_divmod(const LaurentPoly<K>& a, const LaurentPoly<K>& b) {
    if (b.is_zero()) throw ZeroDivisor("polynomial division by zero");
    LaurentPoly<K> q, r = a;
    const K lead_inv = b.leading().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const auto term = LaurentPoly<K>::monomial(r.degree() - b.degree(), r.leading() * lead_inv);
        q += term;
        r -= term * b;
    }
    return {q, r};
}

/// Monic greatest common divisor.
template <Scalar K>
LaurentPoly<K> poly_gcd(LaurentPoly<K> a, LaurentPoly<K> b) {
    while (!b.is_zero()) {
        auto r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.leading().inverse() * a;
}

}  // namespace microloc
