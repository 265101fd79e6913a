#include "microloc/eisenstein.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "microloc/errors.hpp"

namespace microloc {

EisensteinScalar::EisensteinScalar(Rational v) {
    if (!v.is_zero()) c_.push_back(std::move(v));
}

EisensteinScalar::EisensteinScalar(unsigned long p, std::vector<Rational> coeffs)
    : p_(p), c_(std::move(coeffs)) {
    if (!is_prime(p)) throw std::invalid_argument("EisensteinScalar: " + std::to_string(p) + " is not prime");
    if (c_.size() > p - 1) throw std::invalid_argument("EisensteinScalar: too many coefficients");
    trim();
}

EisensteinScalar EisensteinScalar::pi(unsigned long p) {
    if (p == 2) return EisensteinScalar(2, {Rational(-2)});
    return EisensteinScalar(p, {Rational(0), Rational(1)});
}

void EisensteinScalar::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

unsigned long EisensteinScalar::merged_prime(const EisensteinScalar& o) const {
    if (p_ == 0) return o.p_;
    if (o.p_ == 0 || o.p_ == p_) return p_;
    if (is_rational() && o.is_rational()) return std::max(p_, o.p_);
    throw PrimeMismatch("Q(pi) elements for primes " + std::to_string(p_) + " and " + std::to_string(o.p_));
}

Rational EisensteinScalar::as_rational() const {
    if (!is_rational()) throw std::domain_error("EisensteinScalar::as_rational on " + to_string());
    return c_.empty() ? Rational() : c_[0];
}

Valuation EisensteinScalar::valuation(unsigned long p_hint) const {
    if (c_.empty()) return Valuation::infinity();
    const unsigned long p = p_ != 0 ? p_ : p_hint;
    if (p == 0) throw std::domain_error("EisensteinScalar::valuation: prime unknown for " + to_string());
    std::optional<Rational> best;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        Rational v = Rational(padic_valuation(c_[j], p)) + Rational(static_cast<long>(j), static_cast<long>(p - 1));
        if (!best || v < *best) best = v;
    }
    return *best;
}

EisensteinScalar& EisensteinScalar::operator+=(const EisensteinScalar& o) {
    p_ = merged_prime(o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
    trim();
    return *this;
}

EisensteinScalar& EisensteinScalar::operator-=(const EisensteinScalar& o) {
    p_ = merged_prime(o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
    trim();
    return *this;
}

EisensteinScalar& EisensteinScalar::operator*=(const EisensteinScalar& o) {
    const unsigned long p = merged_prime(o);
    if (c_.empty() || o.c_.empty()) {
        p_ = p;
        c_.clear();
        return *this;
    }
    std::vector<Rational> prod(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    if (p != 0) {
        // pi^(p-1) = -p
        const std::size_t n = p - 1;
        for (std::size_t k = prod.size(); k-- > n;) {
            if (prod[k].is_zero()) continue;
            prod[k - n] -= Rational(static_cast<long>(p)) * prod[k];
            prod[k] = Rational();
        }
        if (prod.size() > n) prod.resize(n);
    }
    p_ = p;
    c_ = std::move(prod);
    trim();
    return *this;
}

EisensteinScalar operator-(const EisensteinScalar& a) {
    EisensteinScalar r = a;
    for (auto& c : r.c_) c = -c;
    return r;
}

bool operator==(const EisensteinScalar& a, const EisensteinScalar& b) {
    if (a.c_ != b.c_) return false;
    return a.p_ == b.p_ || a.p_ == 0 || b.p_ == 0 || a.is_rational();
}

EisensteinScalar EisensteinScalar::inverse() const {
    if (c_.empty()) throw ZeroDivisor("inverse of zero in Q(pi)");
    if (is_rational()) {
        EisensteinScalar r(c_[0].inverse());
        r.p_ = p_;
        return r;
    }
    // Solve M y = e_0 where M is the matrix of multiplication by *this on the basis pi^j.
    const std::size_t n = p_ - 1;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    EisensteinScalar basis(p_, {Rational(1)});
    const EisensteinScalar pi_elt = pi(p_);
    for (std::size_t col = 0; col < n; ++col) {
        const EisensteinScalar image = *this * basis;
        for (std::size_t row = 0; row < n; ++row) m[row][col] = image.coeff(row);
        basis *= pi_elt;
    }
    m[0][n] = Rational(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw ZeroDivisor("singular multiplication matrix in Q(pi)");
        std::swap(m[piv], m[col]);
        const Rational inv = m[col][col].inverse();
        for (std::size_t k = col; k <= n; ++k) m[col][k] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            const Rational f = m[row][col];
            for (std::size_t k = col; k <= n; ++k) m[row][k] -= f * m[col][k];
        }
    }
    std::vector<Rational> y(n);
    for (std::size_t row = 0; row < n; ++row) y[row] = m[row][n];
    return EisensteinScalar(p_, std::move(y));
}

EisensteinScalar EisensteinScalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    EisensteinScalar result(Rational(1));
    result.p_ = p_;
    EisensteinScalar base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

std::string EisensteinScalar::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        Rational c = c_[j];
        if (!first) {
            os << (c.sign() < 0 ? " - " : " + ");
            c = c.abs();
        }
        if (j == 0) {
            os << c;
        } else {
            if (c == Rational(-1)) os << "-";
            else if (c != Rational(1)) os << c << "*";
            os << "pi";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    return c_.size() > 1 ? "(" + os.str() + ")" : os.str();
}

std::ostream& operator<<(std::ostream& os, const EisensteinScalar& x) { return os << x.to_string(); }

Valuation eisenstein_valuation(const EisensteinScalar& x, unsigned long p_hint) { return x.valuation(p_hint); }

}  // namespace microloc
