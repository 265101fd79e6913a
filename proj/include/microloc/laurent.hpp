#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "microloc/errors.hpp"
#include "microloc/scalar.hpp"

namespace microloc {

/// Element of K[[eta^-1]][eta] known modulo eta^floor.
///
/// Coefficients of eta^j are stored for floor < j <= top. The top order is the
/// largest index with a nonzero coefficient; an element whose known window is
/// entirely zero reports top() == floor().
template <Scalar K>
class LaurentScalarTrunc {
public:
    LaurentScalarTrunc() = default;
    explicit LaurentScalarTrunc(long floor, Var var = Var::eta) : var_(var), floor_(floor) {}
    /// Coefficients for eta^(floor+1), eta^(floor+2), ...
    LaurentScalarTrunc(long floor, std::vector<K> coeffs, Var var = Var::eta)
        : var_(var), floor_(floor), c_(std::move(coeffs)) {
        trim();
    }

    static LaurentScalarTrunc monomial(long exponent, K c, long floor, Var var = Var::eta) {
        LaurentScalarTrunc r(floor, var);
        if (exponent > floor) r.set(exponent, std::move(c));
        return r;
    }
    /// Constant with `depth` known coefficients (eta^0 down to eta^(1-depth)).
    static LaurentScalarTrunc constant(K c, long depth, Var var = Var::eta) {
        return monomial(0, std::move(c), -depth, var);
    }

    Var var() const { return var_; }
    long floor() const { return floor_; }
    long top() const { return floor_ + static_cast<long>(c_.size()); }
    long depth() const { return top() - floor_; }
    bool is_zero() const { return c_.empty(); }

    K coeff(long j) const {
        if (j <= floor_) throw PrecisionExhausted("eta^" + std::to_string(j) + " at or below window floor " + std::to_string(floor_));
        const long k = j - floor_ - 1;
        return k < static_cast<long>(c_.size()) ? c_[static_cast<std::size_t>(k)] : K();
    }

    void set(long j, K c) {
        if (j <= floor_) throw PrecisionExhausted("set below window floor");
        const auto k = static_cast<std::size_t>(j - floor_ - 1);
        if (k >= c_.size()) {
            if (c.is_zero()) return;
            c_.resize(k + 1);
        }
        c_[k] = std::move(c);
        trim();
    }

    /// Discards knowledge at or below `new_floor` (no-op if already coarser).
    LaurentScalarTrunc with_floor(long new_floor) const {
        if (new_floor <= floor_) return *this;
        LaurentScalarTrunc r(new_floor, var_);
        for (long j = new_floor + 1; j <= top(); ++j) r.set(j, coeff(j));
        return r;
    }

    LaurentScalarTrunc& operator+=(const LaurentScalarTrunc& o) { return accumulate(o, false); }
    LaurentScalarTrunc& operator-=(const LaurentScalarTrunc& o) { return accumulate(o, true); }
    friend LaurentScalarTrunc operator+(LaurentScalarTrunc a, const LaurentScalarTrunc& b) { return a += b; }
    friend LaurentScalarTrunc operator-(LaurentScalarTrunc a, const LaurentScalarTrunc& b) { return a -= b; }
    friend LaurentScalarTrunc operator-(LaurentScalarTrunc a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }

    friend LaurentScalarTrunc operator*(const LaurentScalarTrunc& a, const LaurentScalarTrunc& b) {
        a.check_var(b);
        const long floor = std::max(a.top() + b.floor_, b.top() + a.floor_);
        LaurentScalarTrunc r(floor, a.var_);
        if (a.c_.empty() || b.c_.empty()) return r;
        std::vector<K> acc(static_cast<std::size_t>(std::max(0L, a.top() + b.top() - floor)));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            const long ja = a.floor_ + 1 + static_cast<long>(i);
            for (std::size_t k = 0; k < b.c_.size(); ++k) {
                if (b.c_[k].is_zero()) continue;
                const long j = ja + b.floor_ + 1 + static_cast<long>(k);
                if (j <= floor) continue;
                auto& slot = acc[static_cast<std::size_t>(j - floor - 1)];
                slot = slot + a.c_[i] * b.c_[k];
            }
        }
        r.c_ = std::move(acc);
        r.trim();
        return r;
    }

    friend LaurentScalarTrunc operator*(const K& s, LaurentScalarTrunc a) {
        for (auto& c : a.c_) c = s * c;
        a.trim();
        return a;
    }

    /// Multiplication by eta^k.
    LaurentScalarTrunc shifted(long k) const {
        LaurentScalarTrunc r = *this;
        r.floor_ += k;
        return r;
    }

    /// Inverse within the window; the depth (top - floor) is preserved.
    LaurentScalarTrunc inverse() const {
        if (c_.empty()) throw ZeroDivisor("inverse of an element that vanishes in its window");
        const long r = top();
        const long depth = r - floor_;
        const K lead_inv = coeff(r).inverse();
        // a = lead eta^r (1 + u), u = sum_{k>=1} u_k eta^-k
        std::vector<K> u(static_cast<std::size_t>(depth));
        for (long k = 1; k < depth; ++k) u[static_cast<std::size_t>(k)] = coeff(r - k) * lead_inv;
        // w = 1/(1+u): w_0 = 1, w_n = -sum_{k=1..n} u_k w_{n-k}
        std::vector<K> w(static_cast<std::size_t>(depth));
        w[0] = K(Rational(1));
        for (long n = 1; n < depth; ++n) {
            K acc;
            for (long k = 1; k <= n; ++k) acc = acc + u[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(n - k)];
            w[static_cast<std::size_t>(n)] = -acc;
        }
        LaurentScalarTrunc out(-r - depth, var_);
        for (long n = 0; n < depth; ++n) out.set(-r - n, lead_inv * w[static_cast<std::size_t>(n)]);
        return out;
    }

    /// d/d(eta).
    LaurentScalarTrunc d_eta() const {
        LaurentScalarTrunc r(floor_ - 1, var_);
        for (long j = floor_ + 1; j <= top(); ++j) {
            if (j == 0) continue;
            const K c = coeff(j);
            if (!c.is_zero()) r.set(j - 1, K(Rational(j)) * c);
        }
        return r;
    }

    /// The derivation d/d(eta^-1) = -eta^2 d/d(eta); raises the top order by one.
    LaurentScalarTrunc d_eta_inv() const {
        LaurentScalarTrunc r(floor_ + 1, var_);
        for (long j = floor_ + 1; j <= top(); ++j) {
            if (j == 0) continue;
            const K c = coeff(j);
            if (!c.is_zero()) r.set(j + 1, K(Rational(-j)) * c);
        }
        return r;
    }

    /// Equality of coefficients in the common window.
    bool agrees_with(const LaurentScalarTrunc& o) const {
        const long f = std::max(floor_, o.floor_);
        const long t = std::max(top(), o.top());
        for (long j = f + 1; j <= t; ++j)
            if (coeff(j) != o.coeff(j)) return false;
        return true;
    }

    friend bool operator==(const LaurentScalarTrunc& a, const LaurentScalarTrunc& b) {
        return a.var_ == b.var_ && a.floor_ == b.floor_ && a.c_ == b.c_;
    }

    std::string to_string() const {
        std::string out;
        for (long j = top(); j > floor_; --j) {
            const K c = coeff(j);
            if (c.is_zero()) continue;
            std::string cs = c.to_string();
            const bool neg = !cs.empty() && cs[0] == '-';
            if (!out.empty()) out += neg ? " - " : " + ";
            else if (neg) out += "-";
            if (neg) cs = cs.substr(1);
            const std::string mono = j == 0 ? "" : std::string(var_name(var_)) + (j == 1 ? "" : "^" + std::to_string(j));
            if (mono.empty()) out += cs;
            else if (cs == "1") out += mono;
            else out += cs + "*" + mono;
        }
        if (out.empty()) out = "0";
        return out;
    }

private:
    void check_var(const LaurentScalarTrunc& o) const {
        if (var_ != o.var_) throw VariableMismatch("Laurent scalars in different variables");
    }
    LaurentScalarTrunc& accumulate(const LaurentScalarTrunc& o, bool subtract) {
        check_var(o);
        const long f = std::max(floor_, o.floor_);
        const long t = std::max(top(), o.top());
        std::vector<K> acc(static_cast<std::size_t>(std::max(0L, t - f)));
        for (long j = f + 1; j <= t; ++j) {
            const K a = j <= top() ? coeff(j) : K();
            const K b = j <= o.top() ? o.coeff(j) : K();
            acc[static_cast<std::size_t>(j - f - 1)] = subtract ? a - b : a + b;
        }
        floor_ = f;
        c_ = std::move(acc);
        trim();
        return *this;
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Var var_ = Var::eta;
    long floor_ = 0;
    std::vector<K> c_;
};

enum class LaurentOp { add, mul, invert, d_eta_inv };

template <Scalar K>
LaurentScalarTrunc<K> laurent_arith(const LaurentScalarTrunc<K>& a, const LaurentScalarTrunc<K>& b, LaurentOp op) {
    switch (op) {
        case LaurentOp::add: return a + b;
        case LaurentOp::mul: return a * b;
        case LaurentOp::invert: return a.inverse();
        case LaurentOp::d_eta_inv: return a.d_eta_inv();
    }
    return a;
}

}  // namespace microloc
