#pragma once

// Template definitions for microdiff.hpp.

namespace microloc {

template <Scalar K>
std::string MicroOp<K>::to_string() const {
    std::string zn;
    switch (flavor_.kind) {
        case FlavorKind::FiniteC: zn = flavor_.c.is_zero() ? "t" : "z"; break;
        case FlavorKind::InfInf: zn = "z"; break;
        case FlavorKind::InfZero: zn = "eta"; break;
    }
    const std::string yn = var_name(flavor_.symbol_var());
    std::string out;
    for (long j = top(); j > floor_; --j) {
        const auto s = coeff(j);
        for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
            const K& c = s.coeffs()[i];
            if (c.is_zero()) continue;
            std::string cs = c.to_string();
            const bool neg = cs[0] == '-';
            if (neg) cs = cs.substr(1);
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            std::string mono;
            if (i > 0) mono = zn + (i == 1 ? "" : "^" + std::to_string(i));
            if (j != 0) mono += (mono.empty() ? "" : "*") + yn + (j == 1 ? "" : "^" + std::to_string(j));
            if (mono.empty()) out += cs;
            else if (cs == "1") out += mono;
            else out += cs + "*" + mono;
        }
    }
    return out.empty() ? "0" : out;
}

template <Scalar K>
MicroOp<K> embed_weyl(const WeylOp<K>& P, const Flavor<K>& fl, long depth, int zprec) {
    using Series = PowerSeriesTrunc<K>;
    const Var zv = fl.series_var();
    if (P.var() != Var::t) throw VariableMismatch("embed_weyl expects an operator in t");
    if (P.is_zero()) return MicroOp<K>(fl, -depth);
    if (zprec < kExactPrecision) {
        long need = fl.kind == FlavorKind::InfZero ? P.order() : 0;
        if (fl.kind != FlavorKind::InfZero)
            for (const auto& a : P.coeffs())
                if (!a.is_zero()) need = std::max(need, fl.kind == FlavorKind::InfInf ? -a.low() : a.high());
        if (need >= zprec)
            throw PrecisionExhausted("series precision " + std::to_string(zprec) + " cannot hold a coefficient of degree " + std::to_string(need));
    }
    auto fill_zeros = [&](MicroOp<K>& r) {
        for (long j = r.top(); j > r.floor(); --j)
            if (r.coeff(j).is_exact()) r.set(j, Series(zv, zprec));
    };
    switch (fl.kind) {
        case FlavorKind::FiniteC: {
            if (!P.is_polynomial()) throw NotLocalizable("negative powers of t cannot be embedded at a finite point");
            const long d = P.order();
            MicroOp<K> r(fl, d - depth);
            for (long i = d; i > d - depth && i >= 0; --i)
                r.set(i, Series(zv, P.coeff(i).translated(fl.c).poly_coeffs(), zprec));
            fill_zeros(r);
            return r;
        }
        case FlavorKind::InfInf: {
            for (const auto& a : P.coeffs())
                if (!a.is_zero() && a.high() > 0)
                    throw NotLocalizable("operator has positive powers of t; normalize by t^-dhat first");
            const long d = P.order();
            MicroOp<K> r(fl, d - depth);
            for (long i = d; i > d - depth && i >= 0; --i) {
                const auto& a = P.coeff(i);
                std::vector<K> c;
                if (!a.is_zero()) {
                    c.resize(static_cast<std::size_t>(-a.low() + 1));
                    for (long k = a.low(); k <= a.high(); ++k) c[static_cast<std::size_t>(-k)] = a.coeff(k);
                }
                r.set(i, Series(zv, std::move(c), zprec));
            }
            fill_zeros(r);
            return r;
        }
        case FlavorKind::InfZero: {
            if (!P.is_polynomial()) throw NotLocalizable("negative powers of t in the (inf,0) embedding");
            const long top = P.max_degree();
            MicroOp<K> r(fl, top - depth);
            for (long i = 0; i <= P.order(); ++i) {
                const auto& a = P.coeff(i);
                if (a.is_zero()) continue;
                const MicroOp<K> eta_i = MicroOp<K>::series(fl, Series::monomial(zv, static_cast<int>(i), K(Rational(1)), zprec), depth);
                for (long k = 0; k <= a.high(); ++k) {
                    if (a.coeff(k).is_zero()) continue;
                    const K sign = K(Rational(k % 2 == 0 ? 1 : -1));
                    const MicroOp<K> tk = MicroOp<K>::term(fl, k, Series::constant(zv, sign * a.coeff(k), zprec), k - depth);
                    r += micro_mul(tk, eta_i);
                }
            }
            fill_zeros(r);
            return r.with_floor(top - depth);
        }
    }
    return MicroOp<K>(fl, -depth);
}

template <Scalar K>
MicroOp<K> recompose_z_left(const std::vector<LaurentScalarTrunc<K>>& R, const Flavor<K>& fl, int prec) {
    using Series = PowerSeriesTrunc<K>;
    if (R.empty()) return MicroOp<K>(fl, 0);
    long floor = R[0].floor(), top = R[0].floor();
    for (const auto& r : R) {
        floor = std::max(floor, r.floor());
        top = std::max(top, r.top());
    }
    MicroOp<K> out(fl, floor);
    for (long j = top; j > floor; --j) {
        std::vector<K> c(R.size());
        for (std::size_t i = 0; i < R.size(); ++i) c[i] = j <= R[i].top() ? R[i].coeff(j) : K();
        out.set(j, Series(fl.series_var(), std::move(c), prec));
    }
    return out;
}

namespace detail {

template <Scalar K>
MicroOp<K> z_power_op(const Flavor<K>& fl, long i, long floor, int prec) {
    return MicroOp<K>::series(fl, PowerSeriesTrunc<K>::monomial(fl.series_var(), static_cast<int>(i), K(Rational(1)), prec), -floor);
}

template <Scalar K>
MicroOp<K> scalar_times_z_power(const LaurentScalarTrunc<K>& S, const Flavor<K>& fl, long i, int prec) {
    const MicroOp<K> s = MicroOp<K>::scalar(fl, S, prec);
    const long top = std::max(S.top(), S.floor() + 1);
    return micro_mul(s, z_power_op(fl, i, S.floor() - top - 1, prec));
}

/// Coefficient of z^a in every symbol order of X, as a Laurent scalar with X's window.
template <Scalar K>
LaurentScalarTrunc<K> z_slice(const MicroOp<K>& X, long a) {
    LaurentScalarTrunc<K> s(X.floor(), X.flavor().symbol_var());
    for (long j = X.top(); j > X.floor(); --j) {
        const auto c = X.coeff(j);
        if (a < static_cast<long>(c.coeffs().size()) && !c.coeffs()[static_cast<std::size_t>(a)].is_zero())
            s.set(j, c.coeffs()[static_cast<std::size_t>(a)]);
    }
    return s;
}

template <Scalar K>
bool vanishes(const MicroOp<K>& X) {
    for (long j = X.top(); j > X.floor(); --j)
        if (!X.coeff(j).is_zero()) return false;
    return true;
}

/// The division recursion producing z-left remainders (no side swap).
template <Scalar K>
DivisionResult<K> divide_raw(const MicroOp<K>& G, const MicroOp<K>& F) {
    using Series = PowerSeriesTrunc<K>;
    if (!(G.flavor() == F.flavor())) throw FlavorMismatch(G.flavor().name() + " vs " + F.flavor().name());
    const auto& fl = G.flavor();
    if (F.is_zero()) throw SymbolNotAdmissible("divisor vanishes in its window");
    const long r = F.top();
    const Series fr = F.coeff(r);
    const auto m_opt = fr.order();
    if (!m_opt) throw SymbolNotAdmissible("principal symbol vanishes to the available precision");
    const long m = *m_opt;
    const Series b = fr.shifted_down(static_cast<int>(m));
    if (b.precision() <= 0) throw PrecisionExhausted("no precision left for the unit part of the symbol");
    const Series binv = b.inverse();

    DivisionResult<K> res;
    res.m = m;
    const long topQ = G.top() - r;
    const long J = std::max(G.floor(), topQ + F.floor());
    res.floor = J;
    res.quotient = MicroOp<K>(fl, J - r);
    res.raw.assign(static_cast<std::size_t>(m), LaurentScalarTrunc<K>(J, fl.symbol_var()));

    // D^alpha f_u
    std::map<long, std::vector<Series>> df;
    auto derived = [&](long u, long alpha) -> const Series& {
        auto& v = df[u];
        if (v.empty()) v.push_back(F.coeff(u));
        while (static_cast<long>(v.size()) <= alpha) v.push_back(series_derivation(fl, v.back()));
        return v[static_cast<std::size_t>(alpha)];
    };
    std::map<long, Series> q;  // quotient coefficients found so far
    for (long j = G.top(); j > J; --j) {
        const long v = j - r;
        Series phi = G.coeff(j);
        for (const auto& [vp, qv] : q) {
            if (vp <= v) continue;
            for (long alpha = 0;; ++alpha) {
                const long u = j - vp + alpha;
                if (u > r) break;
                const Rational coef = falling(vp, static_cast<unsigned long>(alpha)) / factorial(static_cast<unsigned long>(alpha));
                if (coef.is_zero()) break;
                const Series& dfu = derived(u, alpha);
                if (dfu.is_zero() && dfu.is_exact()) continue;
                phi -= K(coef) * (qv * dfu);
            }
        }
        res.phi.emplace(j, phi);
        if (phi.precision() < m)
            throw PrecisionExhausted("series precision " + std::to_string(phi.precision()) + " at symbol order " + std::to_string(j) +
                                     " cannot resolve a remainder of degree " + std::to_string(m - 1));
        std::vector<K> low(static_cast<std::size_t>(m));
        for (long i = 0; i < m; ++i) {
            low[static_cast<std::size_t>(i)] = phi[static_cast<int>(i)];
            if (!low[static_cast<std::size_t>(i)].is_zero()) res.raw[static_cast<std::size_t>(i)].set(j, low[static_cast<std::size_t>(i)]);
        }
        const Series rest = (phi - Series(fl.series_var(), low, kExactPrecision)).shifted_down(static_cast<int>(m));
        Series qv = rest * binv;
        q.emplace(v, qv);
    }
    for (auto it = q.rbegin(); it != q.rend(); ++it) res.quotient.set(it->first, it->second);
    return res;
}

}  // namespace detail

template <Scalar K>
std::vector<LaurentScalarTrunc<K>> swap_remainder_side(const std::vector<LaurentScalarTrunc<K>>& R, const Flavor<K>& fl,
                                                       bool closed_form) {
    if (fl.kind == FlavorKind::InfInf)
        throw std::invalid_argument("swap_remainder_side: commuting in (inf,inf) raises the z-degree; use micro_divide");
    const long m = static_cast<long>(R.size());
    std::vector<LaurentScalarTrunc<K>> S;
    if (m == 0) return S;
    long floor = R[0].floor(), top = R[0].floor();
    for (const auto& r : R) {
        floor = std::max(floor, r.floor());
        top = std::max(top, r.top());
    }
    auto rcoef = [&](long i, long j) -> K { return j <= R[static_cast<std::size_t>(i)].top() ? R[static_cast<std::size_t>(i)].coeff(j) : K(); };
    S.assign(static_cast<std::size_t>(m), LaurentScalarTrunc<K>(floor, fl.symbol_var()));
    if (closed_form) {
        // s_{i,j} = sum_k (-1)^k r_{i+k,j+k} (j+k)...(j+1) (i+k)...(i+1) / k!
        for (long i = 0; i < m; ++i) {
            for (long j = top; j > floor; --j) {
                K acc;
                for (long k = 0; i + k < m && j + k <= top; ++k) {
                    const K r = rcoef(i + k, j + k);
                    if (r.is_zero()) continue;
                    Rational w = falling(j + k, static_cast<unsigned long>(k)) * falling(i + k, static_cast<unsigned long>(k)) /
                                 factorial(static_cast<unsigned long>(k));
                    if (k % 2 == 1) w = -w;
                    acc = acc + K(w) * r;
                }
                if (!acc.is_zero()) S[static_cast<std::size_t>(i)].set(j, acc);
            }
        }
        return S;
    }
    // repeated commutation: peel the highest z-degree
    MicroOp<K> X = recompose_z_left(R, fl, kExactPrecision);
    for (long a = m - 1; a >= 0; --a) {
        const auto slice = detail::z_slice(X, a);
        S[static_cast<std::size_t>(a)] = slice;
        X -= detail::scalar_times_z_power(slice, fl, a, kExactPrecision);
    }
    if (!detail::vanishes(X)) throw std::logic_error("swap_remainder_side: commutation left a residue");
    return S;
}

template <Scalar K>
MicroOp<K> recompose_scalar_left(const std::vector<LaurentScalarTrunc<K>>& S, const Flavor<K>& fl, int prec) {
    if (S.empty()) return MicroOp<K>(fl, 0);
    MicroOp<K> out(fl, S[0].floor());
    for (std::size_t i = 0; i < S.size(); ++i) out += detail::scalar_times_z_power(S[i], fl, static_cast<long>(i), prec);
    return out;
}

template <Scalar K>
DivisionResult<K> micro_divide(const MicroOp<K>& G, const MicroOp<K>& F) {
    DivisionResult<K> res = detail::divide_raw(G, F);
    const auto& fl = G.flavor();
    if (fl.kind != FlavorKind::InfInf) {
        res.remainders = swap_remainder_side(res.raw, fl, false);
        return res;
    }
    // (inf,inf): commuting a scalar past z^i produces z^(i+k) with k >= 1 at lower symbol
    // order, so peel the lowest z-degree and divide the overflow again until nothing is left.
    res.remainders.assign(static_cast<std::size_t>(res.m), LaurentScalarTrunc<K>(res.floor, fl.symbol_var()));
    MicroOp<K> X = recompose_z_left(res.raw, fl, kExactPrecision);
    while (!detail::vanishes(X)) {
        for (long a = 0; a < res.m; ++a) {
            const auto slice = detail::z_slice(X, a);
            if (slice.is_zero()) continue;
            res.remainders[static_cast<std::size_t>(a)] += slice;
            X -= detail::scalar_times_z_power(slice, fl, a, kExactPrecision);
        }
        if (detail::vanishes(X)) break;
        const auto again = detail::divide_raw(X, F);
        res.quotient += again.quotient;
        X = recompose_z_left(again.raw, fl, kExactPrecision);
    }
    return res;
}

template <Scalar K>
MicroOp<K> micro_invert(const MicroOp<K>& P, long depth) {
    const auto fr = P.symbol();
    const auto m = fr.order();
    if (!m) throw SymbolNotAdmissible("principal symbol vanishes to the available precision");
    if (*m != 0) throw SymbolNotAdmissible("principal symbol is not a unit (m = " + std::to_string(*m) + ")");
    const MicroOp<K> one = MicroOp<K>::series(P.flavor(), PowerSeriesTrunc<K>::constant(P.flavor().series_var(), K(Rational(1)), kExactPrecision), depth);
    return micro_divide(one, P).quotient;
}

}  // namespace microloc
