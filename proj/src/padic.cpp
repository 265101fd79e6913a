#include "microloc/padic.hpp"

#include <algorithm>
#include <stdexcept>

namespace microloc {

namespace {

Valuation val(const Eis& x, unsigned long p) { return x.valuation(p); }

void require_prime(unsigned long a, unsigned long b) {
    if (a != b) throw PrimeMismatch("operators over Q(pi) for p = " + std::to_string(a) + " and p = " + std::to_string(b));
}

/// (index of the last minimizer, minimum) over the known coefficients at a.
std::pair<long, Valuation> window_gauss(const SeriesEis& f, const Rational& a, unsigned long p) {
    Valuation best;
    long arg = -1;
    const auto& c = f.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        const Valuation v = val(c[i], p) + Valuation(Rational(static_cast<long>(i)) * a);
        if (v <= best) arg = static_cast<long>(i);
        best = min(best, v);
    }
    return {arg, best};
}

bool affine_less(const AffineValuation& x, const AffineValuation& y) {
    return x.c0 < y.c0 || (x.c0 == y.c0 && x.c1 < y.c1);
}

PadicMicroOp extended(const PadicMicroOp& F, long new_floor) {
    if (!F.finite || new_floor >= F.op.floor()) return F;
    PadicMicroOp r{F.p, MicroEis(F.op.flavor(), new_floor), true};
    for (long j = F.op.top(); j > F.op.floor(); --j) r.op.set(j, F.op.coeff(j));
    return r;
}

/// Lowest index with a nonzero coefficient (top for the zero operator).
long lowest_index(const MicroEis& F) {
    long low = F.top();
    for (long j = F.top(); j > F.floor(); --j)
        if (!F.coeff(j).is_zero()) low = j;
    return low;
}

long max_series_degree(const MicroEis& F) {
    long d = 0;
    for (long j = F.top(); j > F.floor(); --j) d = std::max(d, static_cast<long>(F.coeff(j).coeffs().size()) - 1);
    return d;
}

Valuation window_gv(const SeriesEis& f, const Rational& a, unsigned long p) { return window_gauss(f, a, p).second; }

}  // namespace

Rational PadicContext::omega_exponent() const {
    return variant == PadicVariant::standard ? Rational(1, static_cast<long>(p - 1)) : Rational(0);
}

bool admissible(const NormQuery& q, const PadicContext& ctx) {
    return q.a > Rational(0) && q.b > q.a + ctx.omega_exponent();
}

Valuation gauss_valuation(const SeriesEis& f, const Rational& a, unsigned long p) {
    if (!(a > Rational(0))) throw std::invalid_argument("gauss_valuation needs a > 0");
    const auto [arg, v] = window_gauss(f, a, p);
    if (f.is_exact()) return v;
    if (arg < 0) throw WindowInconclusive("no nonzero coefficient below precision " + std::to_string(f.precision()));
    if (arg >= f.precision() - 1)
        throw WindowInconclusive("minimum attained at the last known coefficient t^" + std::to_string(arg));
    return v;
}

std::optional<AffineValuation> gauss_valuation_near_zero(const SeriesEis& f, unsigned long p) {
    std::optional<AffineValuation> best;
    long arg = -1;
    const auto& c = f.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        const AffineValuation v{val(c[i], p).value(), Rational(static_cast<long>(i))};
        if (!best || v.c0 < best->c0) best = v;
        if (v.c0 == best->c0) arg = static_cast<long>(i);
    }
    if (f.is_exact()) return best;
    if (!best) throw WindowInconclusive("no nonzero coefficient below precision " + std::to_string(f.precision()));
    if (arg >= f.precision() - 1) throw WindowInconclusive("minimal valuation attained at the last known coefficient");
    return best;
}

Valuation phi_norm_window(const MicroEis& F, const NormQuery& q, unsigned long p) {
    Valuation best;
    for (long u = F.top(); u > F.floor(); --u) {
        const Valuation g = window_gv(F.coeff(u), q.a, p);
        best = min(best, g - Rational(u) * q.b);
    }
    return best;
}

Valuation phi_norm(const PadicMicroOp& F, const NormQuery& q, const PadicContext& ctx) {
    require_prime(F.p, ctx.p);
    if (!admissible(q, ctx)) throw std::invalid_argument("norm query a = " + q.a.to_string() + ", b = " + q.b.to_string() + " is not admissible");
    Valuation best;
    long arg = F.op.top();
    for (long u = F.op.top(); u > F.op.floor(); --u) {
        const SeriesEis f = F.op.coeff(u);
        if (f.is_zero() && (F.finite || f.is_exact())) continue;
        const Valuation term = gauss_valuation(f, q.a, F.p) - Rational(u) * q.b;
        if (term <= best) {
            best = term;
            arg = u;
        }
    }
    if (!F.finite && !best.is_infinite() && arg == F.op.floor() + 1)
        throw WindowInconclusive("norm attained at the lowest stored order " + std::to_string(arg));
    return best;
}

bool is_dominant(const PadicMicroOp& F, const PadicContext& ctx) {
    require_prime(F.p, ctx.p);
    if (F.op.is_zero()) return false;
    const long r = F.op.top();
    const auto top = gauss_valuation_near_zero(F.op.coeff(r), F.p);
    const Rational kappa = ctx.omega_exponent();
    // margin(u) = gv(f_u) - gv(f_r) + (r - u) b at b = a + kappa, as c0 + c1 a
    std::optional<AffineValuation> worst;
    long worst_u = r;
    for (long u = r - 1; u > F.op.floor(); --u) {
        const SeriesEis f = F.op.coeff(u);
        if (f.is_zero() && (F.finite || f.is_exact())) continue;
        const auto g = gauss_valuation_near_zero(f, F.p);
        if (!g) continue;
        const Rational k(r - u);
        const AffineValuation margin{g->c0 - top->c0 + k * kappa, g->c1 - top->c1 + k};
        if (!worst || !affine_less(*worst, margin)) {
            worst = margin;
            worst_u = u;
        }
    }
    if (!worst) return true;
    if (!F.finite && worst_u == F.op.floor() + 1)
        throw WindowInconclusive("dominance margin smallest at the lowest stored order " + std::to_string(worst_u));
    return !affine_less(*worst, AffineValuation{Rational(0), Rational(0)});
}

PadicMicroOp padic_embed(const WeylEis& P, unsigned long p, long depth) {
    if (P.var() != Var::t) throw VariableMismatch("padic_embed expects an operator in t");
    if (!P.is_polynomial()) throw NotLocalizable("negative powers of t");
    const Flavor<Eis> fl = Flavor<Eis>::finite(Eis());
    const long d = std::max(P.order(), 0L);
    PadicMicroOp r{p, MicroEis(fl, std::min(d - depth, -1L)), true};
    for (long i = P.order(); i >= 0; --i)
        if (!P.coeff(i).is_zero()) r.op.set(i, SeriesEis(Var::z, P.coeff(i).poly_coeffs(), kExactPrecision));
    return r;
}

WeylEis substitute_scaled(const WeylEis& P, unsigned long p) {
    if (!P.is_polynomial()) throw NotLocalizable("negative powers of t");
    const Eis pi = Eis::pi(p);
    std::vector<LaurentPoly<Eis>> a;
    for (long i = 0; i <= P.order(); ++i) {
        std::vector<Eis> c = P.coeff(i).is_zero() ? std::vector<Eis>{} : P.coeff(i).poly_coeffs();
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = c[k] * pi.pow(i - static_cast<long>(k));
        a.push_back(LaurentPoly<Eis>::from_coeffs(std::move(c)));
    }
    return WeylEis(Var::t, std::move(a));
}

PadicMicroOp scale_by_pi(const WeylEis& P, unsigned long p, long depth) { return padic_embed(substitute_scaled(P, p), p, depth); }

WeylEis padic_fourier(const WeylEis& P, unsigned long p) { return fourier_scaled(P, Eis::pi(p)); }

PadicMicroOp padic_mul(const PadicMicroOp& F, const PadicMicroOp& G) {
    require_prime(F.p, G.p);
    if (!F.finite || !G.finite) return {F.p, micro_mul(F.op, G.op), false};
    if (F.op.is_zero() || G.op.is_zero()) return {F.p, MicroEis(F.op.flavor(), F.op.floor() + G.op.floor()), true};
    // d_t^alpha kills g_v for alpha > deg g_v, so nothing lands below this order
    const long low = lowest_index(F.op) + lowest_index(G.op) - max_series_degree(G.op) - 1;
    const PadicMicroOp Fe = extended(F, low - G.op.top());
    const PadicMicroOp Ge = extended(G, low - F.op.top());
    return {F.p, micro_mul(Fe.op, Ge.op), true};
}

PadicMicroOp padic_from_rational(const MicroOp<Rational>& F, unsigned long p, bool finite) {
    const auto& fl = F.flavor();
    if (fl.kind != FlavorKind::FiniteC || !fl.c.is_zero()) throw FlavorMismatch("p-adic operators live at the point 0");
    PadicMicroOp r{p, MicroEis(Flavor<Eis>::finite(Eis()), F.floor()), finite};
    for (long j = F.top(); j > F.floor(); --j) {
        const auto s = F.coeff(j);
        std::vector<Eis> c(s.coeffs().begin(), s.coeffs().end());
        r.op.set(j, SeriesEis(Var::z, std::move(c), s.precision()));
    }
    return r;
}

MicroOp<Rational> rational_part(const MicroEis& F) {
    MicroOp<Rational> r(Flavor<Rational>::finite(Rational()), F.floor());
    for (long j = F.top(); j > F.floor(); --j) {
        const auto s = F.coeff(j);
        std::vector<Rational> c;
        for (const auto& x : s.coeffs()) c.push_back(x.as_rational());
        r.set(j, PowerSeriesTrunc<Rational>(Var::z, std::move(c), s.precision()));
    }
    return r;
}

LaurentScalarTrunc<Rational> rational_part(const LaurentScalarTrunc<Eis>& s) {
    LaurentScalarTrunc<Rational> r(s.floor(), s.var());
    for (long j = s.top(); j > s.floor(); --j)
        if (!s.coeff(j).is_zero()) r.set(j, s.coeff(j).as_rational());
    return r;
}

bool NormCertificate::passes() const {
    return std::all_of(entries.begin(), entries.end(), [](const NormCertificateEntry& e) { return e.pass; });
}

PadicDivision padic_divide(const PadicMicroOp& G, const PadicMicroOp& F, const PadicContext& ctx,
                           const std::vector<NormQuery>& queries, PadicPrecision prec) {
    require_prime(G.p, ctx.p);
    require_prime(F.p, ctx.p);
    for (const auto& q : queries)
        if (!admissible(q, ctx)) throw std::invalid_argument("norm query a = " + q.a.to_string() + ", b = " + q.b.to_string() + " is not admissible");
    if (!is_dominant(F, ctx)) throw NotDominant(F.to_string());
    const SeriesEis sigma = F.op.symbol();
    const auto m = sigma.order();
    if (!m) throw SymbolNotAdmissible("principal symbol vanishes");
    const Valuation b0 = val(sigma.coeffs()[static_cast<std::size_t>(*m)], ctx.p);
    for (std::size_t i = static_cast<std::size_t>(*m); i < sigma.coeffs().size(); ++i)
        if (val(sigma.coeffs()[i], ctx.p) < b0) throw SymbolNotAdmissible("unit part of the symbol is not invertible on the open unit disk");

    const PadicMicroOp Gw = extended(G, G.op.top() - prec.depth);
    const PadicMicroOp Fw = extended(F, F.op.top() - prec.depth);
    PadicDivision out;
    out.division = micro_divide(Gw.op.truncated(prec.zprec), Fw.op.truncated(prec.zprec));
    const auto& res = out.division;
    const long r = Fw.op.top();
    const SeriesEis fr = Fw.op.coeff(r);

    for (const auto& q : queries) {
        NormCertificateEntry e;
        e.query = q;
        const Valuation vG = phi_norm_window(Gw.op, q, ctx.p);
        const Valuation vF = phi_norm_window(Fw.op, q, ctx.p);
        e.bound = vG.is_infinite() ? Valuation() : Valuation(vG.value() - vF.value());
        e.v_quotient = phi_norm_window(res.quotient, q, ctx.p);
        e.top_attains = window_gv(fr, q.a, ctx.p) - Rational(r) * q.b == vF;
        e.steps_ok = true;
        for (long v = res.quotient.top(); v > res.quotient.floor(); --v) {
            ++e.steps_checked;
            if (window_gv(res.quotient.coeff(v), q.a, ctx.p) - Rational(v) * q.b < e.bound) e.steps_ok = false;
        }
        e.lemma_ok = true;
        const Valuation vf = window_gv(fr, q.a, ctx.p);
        for (const auto& [j, phi] : res.phi) {
            const Valuation vphi = window_gv(phi, q.a, ctx.p);
            std::vector<Eis> low(static_cast<std::size_t>(res.m));
            for (long i = 0; i < res.m && i < static_cast<long>(phi.coeffs().size()); ++i) low[static_cast<std::size_t>(i)] = phi.coeffs()[static_cast<std::size_t>(i)];
            const Valuation vr = window_gv(SeriesEis(Var::z, std::move(low), kExactPrecision), q.a, ctx.p);
            const long v = j - r;
            const Valuation vq = v > res.quotient.floor() ? window_gv(res.quotient.coeff(v), q.a, ctx.p) : Valuation();
            if (vr < vphi || vf + vq < vphi) e.lemma_ok = false;
        }
        e.pass = e.v_quotient >= e.bound && e.steps_ok && e.lemma_ok;
        out.certificate.entries.push_back(e);
    }
    return out;
}

long check_condition_i(const WeylEis& P) {
    if (P.var() != Var::t || P.is_zero()) throw ConditionIViolated("expected a nonzero operator in t");
    if (!P.is_polynomial()) throw ConditionIViolated("negative powers of t");
    const auto ad = P.leading();
    if (ad.low() != ad.high()) throw ConditionIViolated("leading coefficient " + ad.to_string() + " vanishes away from 0");
    const long delta = ad.high();
    for (long i = 0; i < P.order(); ++i)
        if (!P.coeff(i).is_zero() && P.coeff(i).high() > delta)
            throw ConditionIViolated("deg a_" + std::to_string(i) + " exceeds deg a_d = " + std::to_string(delta));
    return delta;
}

bool solvability_inequality_check(const WeylEis& P, const std::optional<Rational>& a, unsigned long p) {
    check_condition_i(P);
    const long d = P.order();
    auto series = [](const LaurentPoly<Eis>& c) { return SeriesEis(Var::z, c.poly_coeffs(), kExactPrecision); };
    const SeriesEis ad = series(P.leading());
    if (a) {
        const Valuation top = gauss_valuation(ad, *a, p);
        for (long i = 1; i <= d; ++i) {
            const auto c = P.coeff(d - i);
            if (c.is_zero()) continue;
            if (gauss_valuation(series(c), *a, p) < top - Rational(i) * *a) return false;
        }
        return true;
    }
    const auto top = *gauss_valuation_near_zero(ad, p);
    for (long i = 1; i <= d; ++i) {
        const auto c = P.coeff(d - i);
        if (c.is_zero()) continue;
        const auto g = *gauss_valuation_near_zero(series(c), p);
        if (affine_less(g, AffineValuation{top.c0, top.c1 - Rational(i)})) return false;
    }
    return true;
}

std::optional<NormQuery> query_near_one(const PadicMicroOp& F, const PadicContext& ctx) {
    if (F.op.is_zero()) return std::nullopt;
    const long r = F.op.top();
    Rational a(1, 8);
    for (int k = 0; k < 24; ++k, a = a / Rational(2)) {
        const NormQuery q{a, a + ctx.omega_exponent() + a};
        if (phi_norm_window(F.op, q, F.p) == window_gv(F.op.coeff(r), q.a, F.p) - Rational(r) * q.b) return q;
    }
    return std::nullopt;
}

PadicStationaryReport padic_stationary_check(const WeylEis& P, const PadicContext& ctx, PadicPrecision prec) {
    PadicStationaryReport rep;
    const unsigned long p = ctx.p;
    rep.delta = check_condition_i(P);
    rep.order = P.order();
    rep.solvable = solvability_inequality_check(P, std::nullopt, p);

    rep.scaled = scale_by_pi(P, p, prec.depth);
    rep.dominant = is_dominant(rep.scaled, ctx);
    if (!rep.dominant) throw NotDominant(rep.scaled.to_string());
    rep.m = *rep.scaled.op.symbol().order();
    for (long i = 0; i < rep.m; ++i) rep.basis.push_back(i == 0 ? "1" : i == 1 ? "t" : "t^" + std::to_string(i));
    if (const auto q = query_near_one(rep.scaled, ctx)) {
        const WeylEis t_delta = WeylEis::term(Var::t, rep.delta, 0, Eis(1));
        rep.division = padic_divide(padic_embed(t_delta, p, prec.depth), rep.scaled, ctx, {*q}, prec);
    }

    const Eis pi = Eis::pi(p);
    rep.fourier = padic_fourier(P, p);
    rep.q = rep.fourier.coeff(rep.delta);
    LaurentPoly<Eis> expect;
    for (long k = 0; k <= P.order(); ++k) {
        const Eis alpha = P.coeff(k).coeff(rep.delta);
        if (!alpha.is_zero()) expect += LaurentPoly<Eis>::monomial(k, Eis(rep.delta % 2 == 0 ? 1 : -1) * alpha * pi.pow(k - rep.delta));
    }
    rep.q_matches_formula = rep.q == expect && rep.fourier.order() == rep.delta;

    // Newton polygon of q: an edge of slope s and length l carries l roots of valuation -s
    std::vector<PolygonPoint> pts;
    for (long k = rep.q.low(); k <= rep.q.high(); ++k)
        if (!rep.q.coeff(k).is_zero()) pts.push_back({Rational(k), val(rep.q.coeff(k), p).value()});
    const auto hull = lower_hull(pts);
    rep.unit_ok = !rep.q.is_zero();
    const Rational kappa = ctx.omega_exponent();
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        const Rational s = (hull[i + 1].y - hull[i].y) / (hull[i + 1].x - hull[i].x);
        const Rational len = hull[i + 1].x - hull[i].x;
        rep.root_valuations.emplace_back(-s, len.num().get_si());
        if (!(-s > -kappa)) rep.unit_ok = false;
    }
    if (!rep.unit_ok) throw UnitCheckFailed("q(eta) = " + rep.q.to_string() + " has a root of absolute value >= 1/omega");

    rep.rank_micro = rep.m;
    rep.rank_fourier = rep.fourier.order();
    // Upsilon(1 (x) (-d_eta/pi)^i) = 1 (x) t^i
    rep.witnesses_ok = true;
    const WeylEis step = (-pi.inverse()) * WeylEis::d(Var::eta);
    WeylEis power = WeylEis::scalar(Var::eta, Eis(1));
    for (long i = 0; i < rep.delta; ++i) {
        if (!(padic_fourier(WeylEis::term(Var::t, i, 0, Eis(1)), p) == power)) rep.witnesses_ok = false;
        power = power * step;
    }
    rep.ok = rep.solvable && rep.dominant && rep.m == rep.delta && rep.unit_ok && rep.rank_micro == rep.rank_fourier &&
             rep.witnesses_ok && rep.q_matches_formula && rep.division && rep.division->certificate.passes();
    return rep;
}

}  // namespace microloc
