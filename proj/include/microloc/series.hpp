#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "microloc/errors.hpp"
#include "microloc/scalar.hpp"

namespace microloc {

/// Precision used for coefficients known exactly (e.g. zeros above the top order).
inline constexpr int kExactPrecision = 1 << 28;

/// Truncated power series c_0 + c_1 x + ... known modulo x^N.
///
/// Only coefficients below the precision are stored; trailing zeros are trimmed,
/// so an element with no stored coefficients is zero modulo x^N.
template <Scalar K>
class PowerSeriesTrunc {
public:
    PowerSeriesTrunc() = default;
    PowerSeriesTrunc(Var var, int precision) : var_(var), prec_(std::clamp(precision, 0, kExactPrecision)) {}
    PowerSeriesTrunc(Var var, std::vector<K> coeffs, int precision)
        : var_(var), c_(std::move(coeffs)), prec_(std::clamp(precision, 0, kExactPrecision)) {
        normalize();
    }

    static PowerSeriesTrunc constant(Var var, K c, int precision) {
        return PowerSeriesTrunc(var, std::vector<K>{std::move(c)}, precision);
    }
    /// The monomial x^k modulo x^precision.
    static PowerSeriesTrunc monomial(Var var, int k, K c, int precision) {
        std::vector<K> v(static_cast<std::size_t>(std::max(k, 0)) + 1);
        v.back() = std::move(c);
        return PowerSeriesTrunc(var, std::move(v), precision);
    }

    Var var() const { return var_; }
    int precision() const { return prec_; }
    const std::vector<K>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_exact() const { return prec_ >= kExactPrecision; }

    /// Coefficient of x^i; throws PrecisionExhausted beyond the known window.
    K operator[](int i) const {
        if (i >= prec_) throw PrecisionExhausted("coefficient x^" + std::to_string(i) + " beyond precision " + std::to_string(prec_));
        return i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : K();
    }

    /// Index of the first nonzero known coefficient.
    std::optional<int> order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<int>(i);
        return std::nullopt;
    }

    PowerSeriesTrunc truncated(int precision) const {
        PowerSeriesTrunc r = *this;
        r.prec_ = std::clamp(std::min(prec_, precision), 0, kExactPrecision);
        r.normalize();
        return r;
    }

    PowerSeriesTrunc& operator+=(const PowerSeriesTrunc& o) {
        check_var(o);
        prec_ = std::min(prec_, o.prec_);
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        normalize();
        return *this;
    }
    PowerSeriesTrunc& operator-=(const PowerSeriesTrunc& o) {
        check_var(o);
        prec_ = std::min(prec_, o.prec_);
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        normalize();
        return *this;
    }
    friend PowerSeriesTrunc operator+(PowerSeriesTrunc a, const PowerSeriesTrunc& b) { return a += b; }
    friend PowerSeriesTrunc operator-(PowerSeriesTrunc a, const PowerSeriesTrunc& b) { return a -= b; }
    friend PowerSeriesTrunc operator-(PowerSeriesTrunc a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }

    /// Product. Known modulo x^min(N_a + ord b, N_b + ord a), which is min(N_a, N_b) for units.
    friend PowerSeriesTrunc operator*(const PowerSeriesTrunc& a, const PowerSeriesTrunc& b) {
        a.check_var(b);
        const auto oa = a.order();
        const auto ob = b.order();
        int prec = a.prec_ + b.prec_;
        if (ob) prec = std::min(prec, a.prec_ + *ob);
        if (oa) prec = std::min(prec, b.prec_ + *oa);
        PowerSeriesTrunc r(a.var_, prec);
        if (a.c_.empty() || b.c_.empty()) return r;
        const std::size_t n = std::min<std::size_t>(a.c_.size() + b.c_.size() - 1, static_cast<std::size_t>(prec));
        r.c_.assign(n, K());
        for (std::size_t i = 0; i < a.c_.size() && i < n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
            }
        }
        r.normalize();
        return r;
    }

    friend PowerSeriesTrunc operator*(const K& s, PowerSeriesTrunc a) {
        if (s.is_zero()) {
            a.c_.clear();
            return a;
        }
        for (auto& c : a.c_) c = s * c;
        return a;
    }

    /// d/dx; precision drops by one.
    PowerSeriesTrunc derive() const {
        PowerSeriesTrunc r(var_, prec_ >= kExactPrecision ? prec_ : prec_ - 1);
        if (c_.size() > 1) {
            r.c_.resize(c_.size() - 1);
            for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = K(Rational(static_cast<long>(i))) * c_[i];
        }
        r.normalize();
        return r;
    }

    /// Multiplication by x^k, k >= 0; precision rises by k.
    PowerSeriesTrunc shifted_up(int k) const {
        PowerSeriesTrunc r(var_, prec_ >= kExactPrecision ? prec_ : prec_ + k);
        if (!c_.empty()) {
            r.c_.assign(static_cast<std::size_t>(k), K());
            r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        }
        r.normalize();
        return r;
    }

    /// Exact quotient by x^k; the caller guarantees the first k coefficients vanish.
    PowerSeriesTrunc shifted_down(int k) const {
        PowerSeriesTrunc r(var_, prec_ >= kExactPrecision ? prec_ : prec_ - k);
        for (int i = 0; i < k && i < static_cast<int>(c_.size()); ++i)
            if (!c_[static_cast<std::size_t>(i)].is_zero()) throw std::domain_error("shifted_down: series not divisible");
        if (static_cast<int>(c_.size()) > k) r.c_.assign(c_.begin() + k, c_.end());
        r.normalize();
        return r;
    }

    /// Multiplicative inverse modulo x^N. Throws NotAUnit when c_0 = 0.
    PowerSeriesTrunc inverse() const {
        if (is_exact()) throw std::domain_error("inverse of an exact series needs an explicit precision");
        if (prec_ == 0) throw PrecisionExhausted("inverse of a series with no known coefficients");
        if (c_.empty() || c_[0].is_zero()) throw NotAUnit("series with zero constant term");
        const K inv0 = c_[0].inverse();
        std::vector<K> r(static_cast<std::size_t>(prec_));
        r[0] = inv0;
        for (int n = 1; n < prec_; ++n) {
            K acc;
            for (int k = 1; k <= n && k < static_cast<int>(c_.size()); ++k)
                acc = acc + c_[static_cast<std::size_t>(k)] * r[static_cast<std::size_t>(n - k)];
            r[static_cast<std::size_t>(n)] = -(acc * inv0);
        }
        return PowerSeriesTrunc(var_, std::move(r), prec_);
    }

    /// Equality of the common known part.
    bool agrees_with(const PowerSeriesTrunc& o) const {
        if (var_ != o.var_) return false;
        const int n = std::min({prec_, o.prec_, static_cast<int>(std::max(c_.size(), o.c_.size()))});
        for (int i = 0; i < n; ++i)
            if ((*this)[i] != o[i]) return false;
        return true;
    }

    friend bool operator==(const PowerSeriesTrunc& a, const PowerSeriesTrunc& b) {
        return a.var_ == b.var_ && a.prec_ == b.prec_ && a.c_ == b.c_;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[i].to_string() + ")";
            if (i > 0) out += std::string("*") + var_name(var_) + (i > 1 ? "^" + std::to_string(i) : "");
        }
        if (out.empty()) out = "0";
        return out + " + O(" + var_name(var_) + "^" + std::to_string(prec_) + ")";
    }

private:
    void check_var(const PowerSeriesTrunc& o) const {
        if (var_ != o.var_)
            throw VariableMismatch(std::string("series in ") + var_name(var_) + " and " + var_name(o.var_));
    }
    void normalize() {
        if (static_cast<int>(c_.size()) > prec_) c_.resize(static_cast<std::size_t>(prec_));
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Var var_ = Var::z;
    std::vector<K> c_;
    int prec_ = 0;
};

enum class SeriesOp { add, mul, derive };

/// Dispatches the basic series operations; `b` is ignored for derive.
template <Scalar K>
PowerSeriesTrunc<K> series_arith(const PowerSeriesTrunc<K>& a, const PowerSeriesTrunc<K>& b, SeriesOp op) {
    switch (op) {
        case SeriesOp::add: return a + b;
        case SeriesOp::mul: return a * b;
        case SeriesOp::derive: return a.derive();
    }
    return a;
}

template <Scalar K>
PowerSeriesTrunc<K> series_invert(const PowerSeriesTrunc<K>& a) {
    return a.inverse();
}

}  // namespace microloc
