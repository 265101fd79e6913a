#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "microloc/errors.hpp"
#include "microloc/laurent.hpp"
#include "microloc/series.hpp"
#include "microloc/weyl.hpp"

namespace microloc {

enum class FlavorKind { FiniteC, InfInf, InfZero };

/// Which ring of microdifferential operators an element lives in.
///
/// FiniteC(c): sum_j a_j(z) eta^j with z = t - c, product uses d_eta and d_z.
/// InfInf:     sum_j a_j(z) eta^j with z = 1/t, product uses d_eta and d_t = -z^2 d_z.
/// InfZero:    sum_j a_j(eta) t^j, product uses d_t and d_eta.
template <Scalar K>
struct Flavor {
    FlavorKind kind = FlavorKind::FiniteC;
    K c{};

    static Flavor finite(K c) { return {FlavorKind::FiniteC, std::move(c)}; }
    static Flavor inf_inf() { return {FlavorKind::InfInf, K()}; }
    static Flavor inf_zero() { return {FlavorKind::InfZero, K()}; }

    /// Variable of the coefficient series.
    Var series_var() const { return kind == FlavorKind::InfZero ? Var::eta : Var::z; }
    /// Variable whose powers index the coefficients.
    Var symbol_var() const { return kind == FlavorKind::InfZero ? Var::t : Var::eta; }

    std::string name() const {
        switch (kind) {
            case FlavorKind::FiniteC: return "(" + c.to_string() + ",inf)";
            case FlavorKind::InfInf: return "(inf,inf)";
            case FlavorKind::InfZero: return "(inf,0)";
        }
        return "?";
    }

    friend bool operator==(const Flavor& a, const Flavor& b) {
        return a.kind == b.kind && (a.kind != FlavorKind::FiniteC || a.c == b.c);
    }
};

/// Truncated microdifferential operator sum_{floor < j <= top} a_j y^j, coefficients on the left.
///
/// Each coefficient is a truncated series carrying its own guaranteed precision;
/// indices at or below the floor are unknown, indices above the top are exactly zero.
template <Scalar K>
class MicroOp {
public:
    using Series = PowerSeriesTrunc<K>;

    MicroOp() = default;
    MicroOp(Flavor<K> flavor, long floor) : flavor_(std::move(flavor)), floor_(floor) {}

    /// Single term a * y^j with the window floor below it.
    static MicroOp term(Flavor<K> flavor, long j, Series a, long floor) {
        MicroOp r(std::move(flavor), floor);
        r.set(j, std::move(a));
        return r;
    }
    /// The element a(z) * y^0 known to `depth` symbol orders.
    static MicroOp series(Flavor<K> flavor, Series a, long depth) { return term(std::move(flavor), 0, std::move(a), -depth); }
    /// A scalar of K_{y^-1} viewed as an operator (constant coefficients of precision `prec`).
    static MicroOp scalar(Flavor<K> flavor, const LaurentScalarTrunc<K>& s, int prec) {
        MicroOp r(flavor, s.floor());
        for (long j = s.floor() + 1; j <= s.top(); ++j)
            if (!s.coeff(j).is_zero()) r.set(j, Series::constant(flavor.series_var(), s.coeff(j), prec));
        return r;
    }

    const Flavor<K>& flavor() const { return flavor_; }
    long floor() const { return floor_; }
    long top() const { return floor_ + static_cast<long>(c_.size()); }
    long depth() const { return top() - floor_; }
    bool is_zero() const { return c_.empty(); }
    /// Order = top index with a nonzero coefficient (the zero element reports its floor).
    long order() const { return top(); }

    Series coeff(long j) const {
        if (j <= floor_) throw PrecisionExhausted("symbol order " + std::to_string(j) + " at or below window floor " + std::to_string(floor_));
        const long k = j - floor_ - 1;
        if (k >= static_cast<long>(c_.size())) return Series(flavor_.series_var(), kExactPrecision);
        return c_[static_cast<std::size_t>(k)];
    }

    /// Principal symbol coefficient a_r (zero series for the zero element).
    Series symbol() const { return c_.empty() ? Series(flavor_.series_var(), kExactPrecision) : c_.back(); }

    /// Smallest guaranteed series precision over the window.
    int min_precision() const {
        int p = kExactPrecision;
        for (const auto& s : c_) p = std::min(p, s.precision());
        return p;
    }

    void set(long j, Series a) {
        if (j <= floor_) throw PrecisionExhausted("set below window floor");
        const auto k = static_cast<std::size_t>(j - floor_ - 1);
        if (k >= c_.size()) {
            if (a.is_zero()) return;
            const int fill = a.precision();
            while (c_.size() < k) c_.emplace_back(flavor_.series_var(), fill);
            c_.push_back(std::move(a));
        } else {
            c_[k] = std::move(a);
        }
        trim();
    }

    /// Coarsens the window to the given floor.
    MicroOp with_floor(long new_floor) const {
        if (new_floor <= floor_) return *this;
        MicroOp r(flavor_, new_floor);
        for (long j = new_floor + 1; j <= top(); ++j) r.set(j, coeff(j));
        return r;
    }

    /// Clips every coefficient to at most the given series precision.
    MicroOp truncated(int prec) const {
        MicroOp r = *this;
        for (auto& s : r.c_) s = s.truncated(prec);
        r.trim();
        return r;
    }

    MicroOp& operator+=(const MicroOp& o) { return accumulate(o, false); }
    MicroOp& operator-=(const MicroOp& o) { return accumulate(o, true); }
    friend MicroOp operator+(MicroOp a, const MicroOp& b) { return a += b; }
    friend MicroOp operator-(MicroOp a, const MicroOp& b) { return a -= b; }
    friend MicroOp operator-(MicroOp a) {
        for (auto& s : a.c_) s = -s;
        return a;
    }
    friend MicroOp operator*(const K& k, MicroOp a) {
        for (auto& s : a.c_) s = k * s;
        a.trim();
        return a;
    }

    /// Multiplication by y^k on the left (y^k is central up to lower order only in
    /// FiniteC/InfInf; this is the plain index shift used for normalizations).
    MicroOp shifted(long k) const {
        MicroOp r = *this;
        r.floor_ += k;
        return r;
    }

    /// Equality of coefficients over the common window, each up to the common series precision.
    bool agrees_with(const MicroOp& o) const {
        if (!(flavor_ == o.flavor_)) return false;
        const long f = std::max(floor_, o.floor_);
        const long t = std::max(top(), o.top());
        for (long j = f + 1; j <= t; ++j)
            if (!coeff(j).agrees_with(o.coeff(j))) return false;
        return true;
    }

    friend bool operator==(const MicroOp& a, const MicroOp& b) {
        return a.flavor_ == b.flavor_ && a.floor_ == b.floor_ && a.c_ == b.c_;
    }

    /// Text form "(1 + 2*t)*eta^2 + ..." with the series variable shown as t (FiniteC, meaning t - c),
    /// z (InfInf, meaning 1/t) or eta (InfZero).
    std::string to_string() const;

private:
    MicroOp& accumulate(const MicroOp& o, bool subtract) {
        if (!(flavor_ == o.flavor_)) throw FlavorMismatch(flavor_.name() + " vs " + o.flavor_.name());
        const long f = std::max(floor_, o.floor_);
        const long t = std::max(top(), o.top());
        std::vector<Series> acc;
        acc.reserve(static_cast<std::size_t>(std::max(0L, t - f)));
        for (long j = f + 1; j <= t; ++j) acc.push_back(subtract ? coeff(j) - o.coeff(j) : coeff(j) + o.coeff(j));
        floor_ = f;
        c_ = std::move(acc);
        trim();
        return *this;
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Flavor<K> flavor_;
    long floor_ = 0;
    std::vector<Series> c_;
};

/// Applies the flavor's series derivation: d_z (FiniteC), -z^2 d_z (InfInf), d_eta (InfZero).
template <Scalar K>
PowerSeriesTrunc<K> series_derivation(const Flavor<K>& fl, const PowerSeriesTrunc<K>& a) {
    if (fl.kind == FlavorKind::InfInf) return K(Rational(-1)) * a.derive().shifted_up(2);
    return a.derive();
}

/// Product sum_alpha (1/alpha!) d_y^alpha P * D^alpha Q.
template <Scalar K>
MicroOp<K> micro_mul(const MicroOp<K>& P, const MicroOp<K>& Q) {
    using Series = PowerSeriesTrunc<K>;
    if (!(P.flavor() == Q.flavor())) throw FlavorMismatch(P.flavor().name() + " vs " + Q.flavor().name());
    const auto& fl = P.flavor();
    const long floor = std::max(P.floor() + Q.top(), P.top() + Q.floor());
    MicroOp<K> out(fl, floor);
    if (P.is_zero() || Q.is_zero()) return out;
    const long top = P.top() + Q.top();
    std::vector<Series> acc(static_cast<std::size_t>(top - floor), Series(fl.series_var(), kExactPrecision));
    // D^alpha q_j, computed lazily
    std::vector<std::vector<Series>> dq(static_cast<std::size_t>(Q.top() - Q.floor()));
    auto derived = [&](long j, long alpha) -> const Series& {
        auto& v = dq[static_cast<std::size_t>(j - Q.floor() - 1)];
        if (v.empty()) v.push_back(Q.coeff(j));
        while (static_cast<long>(v.size()) <= alpha) v.push_back(series_derivation(fl, v.back()));
        return v[static_cast<std::size_t>(alpha)];
    };
    for (long i = P.top(); i > P.floor(); --i) {
        const Series pi = P.coeff(i);
        if (pi.is_zero()) continue;
        for (long j = Q.top(); j > Q.floor(); --j) {
            if (Q.coeff(j).is_zero()) continue;
            for (long alpha = 0;; ++alpha) {
                const long n = i + j - alpha;
                if (n <= floor) break;
                const Rational coef = falling(i, static_cast<unsigned long>(alpha)) / factorial(static_cast<unsigned long>(alpha));
                if (coef.is_zero()) break;
                const Series& dqj = derived(j, alpha);
                if (dqj.is_zero() && dqj.is_exact()) break;
                auto& slot = acc[static_cast<std::size_t>(n - floor - 1)];
                slot += K(coef) * (pi * dqj);
            }
        }
    }
    for (long n = top; n > floor; --n) out.set(n, acc[static_cast<std::size_t>(n - floor - 1)]);
    // set() skips leading zeros; restore known zero coefficients below the top
    return out;
}

/// Image of a Weyl operator under the flavor's embedding.
///
/// FiniteC(c): t -> z + c, d_t -> eta.  InfInf: t^-1 -> z, d_t -> eta (the input must
/// lie in K[t^-1]<d_t>).  InfZero: t -> -t, d_t -> eta.
/// The result is known to `depth` symbol orders below its top with series precision `zprec`.
template <Scalar K>
MicroOp<K> embed_weyl(const WeylOp<K>& P, const Flavor<K>& fl, long depth, int zprec);

/// Result of dividing G by F: G = Q F + sum_i S_i z^i (scalar-left canonical form).
template <Scalar K>
struct DivisionResult {
    MicroOp<K> quotient;
    long m = 0;
    /// Raw remainders in z-left form sum_i z^i R_i, as produced by the recursion.
    std::vector<LaurentScalarTrunc<K>> raw;
    /// Canonical scalar-left remainders sum_i S_i z^i.
    std::vector<LaurentScalarTrunc<K>> remainders;
    /// phi_j of the recursion, indexed by symbol order j (used by norm certificates).
    std::map<long, PowerSeriesTrunc<K>> phi;
    /// Window floor of quotient index + order(F) = floor of the remainders.
    long floor = 0;
};

/// Division by F with sigma(F) = z^m b(z), b(0) != 0.
/// Throws SymbolNotAdmissible when m cannot be resolved, PrecisionExhausted when the
/// series precision runs out before the remainder is determined.
template <Scalar K>
DivisionResult<K> micro_divide(const MicroOp<K>& G, const MicroOp<K>& F);

/// P^-1 for sigma(P) a unit times a power of the symbol variable.
template <Scalar K>
MicroOp<K> micro_invert(const MicroOp<K>& P, long depth);

/// z-left to scalar-left remainders: sum_i z^i R_i = sum_i S_i z^i.
/// Valid for FiniteC and InfZero, where commuting lowers the z-degree.
/// `closed_form` selects the explicit s_{i,j} formula instead of repeated commutation.
template <Scalar K>
std::vector<LaurentScalarTrunc<K>> swap_remainder_side(const std::vector<LaurentScalarTrunc<K>>& R, const Flavor<K>& fl,
                                                       bool closed_form);

/// Builds sum_i S_i * z^i as an operator (series precision `prec`).
template <Scalar K>
MicroOp<K> recompose_scalar_left(const std::vector<LaurentScalarTrunc<K>>& S, const Flavor<K>& fl, int prec);

/// Builds sum_i z^i * R_i as an operator.
template <Scalar K>
MicroOp<K> recompose_z_left(const std::vector<LaurentScalarTrunc<K>>& R, const Flavor<K>& fl, int prec);

}  // namespace microloc

#include "microloc/microdiff_impl.hpp"
