#pragma once

#include <string>
#include <utility>
#include <vector>

#include "microloc/errors.hpp"
#include "microloc/lpoly.hpp"
#include "microloc/rational.hpp"
#include "microloc/scalar.hpp"

namespace microloc {

/// Spelling of the derivation attached to a coordinate: t -> dt, eta -> deta.
inline std::string deriv_name(Var v) { return std::string("d") + var_name(v); }

/// Differential operator sum_i a_i(x) d_x^i in normal form (coefficients on the left).
///
/// Coefficients are Laurent polynomials so that coordinate changes can be carried
/// out before clearing denominators; user-facing operators have polynomial coefficients.
template <Scalar K>
class WeylOp {
public:
    using Poly = LaurentPoly<K>;

    WeylOp() = default;
    explicit WeylOp(Var var) : var_(var) {}
    WeylOp(Var var, std::vector<Poly> coeffs) : var_(var), a_(std::move(coeffs)) { trim(); }

    static WeylOp scalar(Var var, K c) { return WeylOp(var, {Poly(std::move(c))}); }
    static WeylOp coefficient(Var var, Poly a) { return WeylOp(var, {std::move(a)}); }
    /// The coordinate x.
    static WeylOp x(Var var) { return WeylOp(var, {Poly::x()}); }
    /// The derivation d_x.
    static WeylOp d(Var var) { return WeylOp(var, {Poly(), Poly(K(Rational(1)))}); }
    /// c x^k d^i.
    static WeylOp term(Var var, long k, long i, K c) {
        std::vector<Poly> a(static_cast<std::size_t>(i) + 1);
        a.back() = Poly::monomial(k, std::move(c));
        return WeylOp(var, std::move(a));
    }

    Var var() const { return var_; }
    bool is_zero() const { return a_.empty(); }
    /// Order in d; -1 for the zero operator.
    long order() const { return static_cast<long>(a_.size()) - 1; }
    const std::vector<Poly>& coeffs() const { return a_; }
    Poly coeff(long i) const { return i >= 0 && i <= order() ? a_[static_cast<std::size_t>(i)] : Poly(); }
    Poly leading() const { return a_.empty() ? Poly() : a_.back(); }

    bool is_polynomial() const {
        return std::all_of(a_.begin(), a_.end(), [](const Poly& p) { return p.is_polynomial(); });
    }
    /// max_j deg a_j over all indices j = 0..order.
    long max_degree() const {
        long m = 0;
        for (const auto& p : a_)
            if (!p.is_zero()) m = std::max(m, p.high());
        return m;
    }
    long min_low() const {
        bool any = false;
        long m = 0;
        for (const auto& p : a_) {
            if (p.is_zero()) continue;
            m = any ? std::min(m, p.low()) : p.low();
            any = true;
        }
        return m;
    }

    /// Left multiplication by x^k.
    WeylOp left_shift(long k) const {
        WeylOp r = *this;
        for (auto& p : r.a_) p = p.shifted(k);
        return r;
    }

    WeylOp& operator+=(const WeylOp& o) {
        check_var(o);
        if (a_.size() < o.a_.size()) a_.resize(o.a_.size());
        for (std::size_t i = 0; i < o.a_.size(); ++i) a_[i] += o.a_[i];
        trim();
        return *this;
    }
    WeylOp& operator-=(const WeylOp& o) {
        check_var(o);
        if (a_.size() < o.a_.size()) a_.resize(o.a_.size());
        for (std::size_t i = 0; i < o.a_.size(); ++i) a_[i] -= o.a_[i];
        trim();
        return *this;
    }
    friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
    friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
    friend WeylOp operator-(WeylOp a) {
        for (auto& p : a.a_) p = -p;
        return a;
    }
    friend WeylOp operator*(const K& s, WeylOp a) {
        for (auto& p : a.a_) p = s * p;
        a.trim();
        return a;
    }

    /// Ring product, normal ordered with d^i b = sum_k binom(i,k) b^(k) d^(i-k).
    friend WeylOp operator*(const WeylOp& P, const WeylOp& Q) {
        P.check_var(Q);
        if (P.is_zero() || Q.is_zero()) return WeylOp(P.var_);
        std::vector<Poly> out(static_cast<std::size_t>(P.order() + Q.order() + 1));
        for (long j = 0; j <= Q.order(); ++j) {
            Poly deriv = Q.a_[static_cast<std::size_t>(j)];
            for (long k = 0; k <= P.order() && !deriv.is_zero(); ++k) {
                for (long i = k; i <= P.order(); ++i) {
                    const Poly& ai = P.a_[static_cast<std::size_t>(i)];
                    if (ai.is_zero()) continue;
                    out[static_cast<std::size_t>(i - k + j)] += K(binomial(i, static_cast<unsigned long>(k))) * (ai * deriv);
                }
                deriv = deriv.derivative();
            }
        }
        return WeylOp(P.var_, std::move(out));
    }

    WeylOp pow(unsigned long e) const {
        WeylOp r = scalar(var_, K(Rational(1)));
        for (unsigned long n = 0; n < e; ++n) r = r * *this;
        return r;
    }

    friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.var_ == b.var_ && a.a_ == b.a_; }

    /// Text form such as "t^2*dt + 1": terms by decreasing d-order, then decreasing x-degree.
    std::string to_string() const {
        std::string out;
        const std::string xn = var_name(var_);
        const std::string dn = deriv_name(var_);
        for (long i = order(); i >= 0; --i) {
            const Poly& p = a_[static_cast<std::size_t>(i)];
            for (long k = p.high(); k >= p.low() && !p.is_zero(); --k) {
                const K c = p.coeff(k);
                if (c.is_zero()) continue;
                std::string cs = c.to_string();
                const bool neg = cs[0] == '-';
                if (neg) cs = cs.substr(1);
                out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
                std::string mono;
                if (k != 0) mono = xn + (k == 1 ? "" : "^" + std::to_string(k));
                if (i != 0) mono += (mono.empty() ? "" : "*") + dn + (i == 1 ? "" : "^" + std::to_string(i));
                if (mono.empty()) out += cs;
                else if (cs == "1") out += mono;
                else out += cs + "*" + mono;
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    void check_var(const WeylOp& o) const {
        if (var_ != o.var_)
            throw VariableMismatch(std::string("operators in ") + var_name(var_) + " and " + var_name(o.var_));
    }
    void trim() {
        while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
    }

    Var var_ = Var::t;
    std::vector<Poly> a_;
};

template <Scalar K>
WeylOp<K> weyl_mul(const WeylOp<K>& P, const WeylOp<K>& Q) {
    return P * Q;
}

/// Fourier transform with scale s: t -> -d_eta / s, d_t -> s eta.
/// s = 1 is the formal transform; s = pi is the p-adic one.
template <Scalar K>
WeylOp<K> fourier_scaled(const WeylOp<K>& P, const K& s) {
    if (P.var() != Var::t) throw VariableMismatch("fourier expects an operator in t");
    if (!P.is_polynomial()) throw NotLocalizable("fourier of an operator with negative powers of t");
    const WeylOp<K> t_img = (-s.inverse()) * WeylOp<K>::d(Var::eta);
    const WeylOp<K> d_img = s * WeylOp<K>::x(Var::eta);
    WeylOp<K> out(Var::eta);
    std::vector<WeylOp<K>> d_pows{WeylOp<K>::scalar(Var::eta, K(Rational(1)))};
    std::vector<WeylOp<K>> t_pows{WeylOp<K>::scalar(Var::eta, K(Rational(1)))};
    for (long i = 0; i <= P.order(); ++i) {
        const auto& a = P.coeff(i);
        if (a.is_zero()) continue;
        while (static_cast<long>(d_pows.size()) <= i) d_pows.push_back(d_pows.back() * d_img);
        WeylOp<K> left(Var::eta);
        for (long k = a.low(); k <= a.high(); ++k) {
            if (a.coeff(k).is_zero()) continue;
            while (static_cast<long>(t_pows.size()) <= k) t_pows.push_back(t_pows.back() * t_img);
            left += a.coeff(k) * t_pows[static_cast<std::size_t>(k)];
        }
        out += left * d_pows[static_cast<std::size_t>(i)];
    }
    return out;
}

/// Inverse transform with scale s: eta -> d_t / s, d_eta -> -s t.
template <Scalar K>
WeylOp<K> inverse_fourier_scaled(const WeylOp<K>& P, const K& s) {
    if (P.var() != Var::eta) throw VariableMismatch("inverse_fourier expects an operator in eta");
    if (!P.is_polynomial()) throw NotLocalizable("inverse_fourier of an operator with negative powers of eta");
    const WeylOp<K> eta_img = s.inverse() * WeylOp<K>::d(Var::t);
    const WeylOp<K> d_img = (-s) * WeylOp<K>::x(Var::t);
    WeylOp<K> out(Var::t);
    for (long i = 0; i <= P.order(); ++i) {
        const auto& a = P.coeff(i);
        if (a.is_zero()) continue;
        WeylOp<K> left(Var::t);
        for (long k = a.low(); k <= a.high(); ++k)
            if (!a.coeff(k).is_zero()) left += a.coeff(k) * eta_img.pow(static_cast<unsigned long>(k));
        out += left * d_img.pow(static_cast<unsigned long>(i));
    }
    return out;
}

template <Scalar K>
WeylOp<K> fourier(const WeylOp<K>& P) {
    return fourier_scaled(P, K(Rational(1)));
}

template <Scalar K>
WeylOp<K> inverse_fourier(const WeylOp<K>& P) {
    return inverse_fourier_scaled(P, K(Rational(1)));
}

/// Coefficients a_i(t) -> a_i(t + c).
template <Scalar K>
WeylOp<K> translate(const WeylOp<K>& P, const K& c) {
    std::vector<LaurentPoly<K>> a;
    for (const auto& p : P.coeffs()) a.push_back(p.translated(c));
    return WeylOp<K>(P.var(), std::move(a));
}

/// Substitutes x = 1/s, d_x = -s^2 d_s and multiplies on the left by the least
/// power s^k (k >= 0) that makes every coefficient polynomial.
template <Scalar K>
std::pair<long, WeylOp<K>> invert_coordinate(const WeylOp<K>& P) {
    const WeylOp<K> d_img = K(Rational(-1)) * WeylOp<K>::term(Var::s, 2, 1, K(Rational(1)));
    WeylOp<K> out(Var::s);
    WeylOp<K> d_pow = WeylOp<K>::scalar(Var::s, K(Rational(1)));
    for (long i = 0; i <= P.order(); ++i) {
        const auto& a = P.coeff(i);
        if (!a.is_zero()) {
            LaurentPoly<K> inv;
            for (long k = a.low(); k <= a.high(); ++k)
                if (!a.coeff(k).is_zero()) inv += LaurentPoly<K>::monomial(-k, a.coeff(k));
            out += WeylOp<K>::coefficient(Var::s, inv) * d_pow;
        }
        d_pow = d_pow * d_img;
    }
    const long k = std::max(0L, -out.min_low());
    return {k, out.left_shift(k)};
}

/// Pullback along t = z^q: d_t = (1/(q z^(q-1))) d_z, followed by the least left power of z
/// (k >= 0) clearing denominators.
template <Scalar K>
WeylOp<K> ramify(const WeylOp<K>& P, long q) {
    if (q < 1) throw std::invalid_argument("ramify needs q >= 1");
    if (q == 1) return P;
    const Var v = P.var() == Var::t ? Var::z : P.var();
    const WeylOp<K> d_img = WeylOp<K>::term(v, 1 - q, 1, K(Rational(1, q)));
    WeylOp<K> out(v);
    WeylOp<K> d_pow = WeylOp<K>::scalar(v, K(Rational(1)));
    for (long i = 0; i <= P.order(); ++i) {
        const auto& a = P.coeff(i);
        if (!a.is_zero()) out += WeylOp<K>::coefficient(v, a.compose_power(q)) * d_pow;
        d_pow = d_pow * d_img;
    }
    return out.left_shift(std::max(0L, -out.min_low()));
}

/// Renames the coordinate (the operator is unchanged as an abstract object).
template <Scalar K>
WeylOp<K> with_var(const WeylOp<K>& P, Var v) {
    return WeylOp<K>(v, P.coeffs());
}

struct SingularPoint {
    Rational c;
    long multiplicity = 0;
};

/// Roots of the leading coefficient and the rank bookkeeping of the module W/WP.
struct SingularityProfile {
    std::vector<SingularPoint> points;  // sorted by c
    long dhat = 0;
    long deg_ad = 0;
    long nu_inf = 0;

    long multiplicity_at(const Rational& c) const {
        for (const auto& p : points)
            if (p.c == c) return p.multiplicity;
        return 0;
    }
};

using WeylQ = WeylOp<Rational>;

/// Factors a_d over Q (squarefree decomposition, then rational roots).
/// Throws FieldExtensionRequired when a_d has an irreducible factor of degree > 1.
SingularityProfile singularity_profile(const WeylQ& P);

/// Rational roots with multiplicities of a nonzero polynomial, and the leftover cofactor.
std::pair<std::vector<SingularPoint>, LaurentPoly<Rational>> rational_roots(const LaurentPoly<Rational>& f);

}  // namespace microloc
