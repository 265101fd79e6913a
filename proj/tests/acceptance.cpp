#include <algorithm>
#include <cstdio>
#include <string>

#include "microloc/localfourier.hpp"
#include "microloc/padic.hpp"
#include "microloc/parse.hpp"
#include "microloc/polygon.hpp"
#include "support.hpp"

using namespace microloc;
using testsupport::rand_eisenstein;
using testsupport::rand_int;
using testsupport::rand_nonzero_rational;
using testsupport::rand_rational;

namespace {

using Op = MicroOp<Rational>;
using Series = PowerSeriesTrunc<Rational>;
using Fl = Flavor<Rational>;

constexpr long D = 6;
constexpr int N = 14;
constexpr MicroPrecision kPrec{8, 16};

int failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail = {}) {
    std::printf("%s %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.empty() ? "" : " | ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

WeylQ op(const char* s) { return parse_operator(s); }

Series ser(const Fl& fl, std::vector<Rational> c, int prec = N) { return Series(fl.series_var(), std::move(c), prec); }

Op rand_op(const Fl& fl, long top, long depth, int prec, long m = -1) {
    Op r(fl, top - depth);
    for (long j = top; j > top - depth; --j) {
        std::vector<Rational> c;
        const long deg = rand_int(0, 3);
        for (long k = 0; k <= deg; ++k) c.push_back(rand_int(0, 2) == 0 ? Rational() : rand_rational(4, 3));
        if (j == top) {
            const long mm = m >= 0 ? m : rand_int(0, 1);
            c.assign(static_cast<std::size_t>(mm), Rational());
            c.push_back(rand_nonzero_rational(4, 3));
            c.push_back(rand_rational(4, 3));
        }
        r.set(j, ser(fl, c, prec));
    }
    return r;
}

std::vector<std::pair<std::string, Fl>> flavors() {
    return {{"FiniteC", Fl::finite(Rational(1, 2))}, {"InfInf", Fl::inf_inf()}, {"InfZero", Fl::inf_zero()}};
}

/// Random operator whose leading coefficient splits over Q.
WeylQ rand_admissible() {
    static const Rational roots[] = {Rational(-2), Rational(-1), Rational(1, 2), Rational(1), Rational(2), Rational(0)};
    const long d = rand_int(1, 2);
    LaurentPoly<Rational> ad(rand_nonzero_rational(3, 2));
    const long nroots = rand_int(0, 2);
    for (long k = 0; k < nroots; ++k) ad = ad * (LaurentPoly<Rational>::x() - LaurentPoly<Rational>(roots[rand_int(0, 5)]));
    std::vector<LaurentPoly<Rational>> a;
    for (long i = 0; i < d; ++i) a.push_back(testsupport::rand_poly<Rational>(2, [] { return rand_rational(3, 2); }));
    a.push_back(ad);
    return WeylQ(Var::t, std::move(a));
}

std::vector<WeylQ> suite() {
    std::vector<WeylQ> s;
    for (const char* p : {"2*t*dt - 1", "(t-1)*dt - 1", "t^2*dt + 1", "dt^2 - t", "t*dt^2 - t^2", "t*dt^2 + dt"}) s.push_back(op(p));
    for (int n = 0; n < 5; ++n) s.push_back(rand_admissible());
    return s;
}

bool same(const LaurentMatrix& a, const std::string& rendered) { return matrix_to_string(a) == rendered; }

bool is_identity(const LaurentMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            const LaurentQ e = LaurentQ::monomial(0, Rational(i == j ? 1 : 0), m[i][j].floor());
            if (!m[i][j].agrees_with(e)) return false;
        }
    return true;
}

SlopeMultiset ms(std::initializer_list<std::pair<Rational, long>> e) {
    SlopeMultiset m;
    for (const auto& [s, k] : e) m.entries.push_back({s, k});
    return m;
}

SlopeMultiset scaled(const SlopeMultiset& m, long q) {
    SlopeMultiset out;
    for (const auto& e : m.entries) out.entries.push_back({e.slope * Rational(q), e.multiplicity});
    return out;
}

void ring_axioms() {
    bool ok = true;
    long n_checked = 0;
    for (const auto& [name, fl] : flavors()) {
        for (int n = 0; n < 200; ++n) {
            const Op A = rand_op(fl, rand_int(-1, 2), D, N);
            const Op B = rand_op(fl, rand_int(-1, 2), D, N);
            const Op C = rand_op(fl, rand_int(-1, 2), D, N);
            const Op AB = micro_mul(A, B);
            ok = ok && AB.top() == A.top() + B.top() && AB.symbol().agrees_with(A.symbol() * B.symbol()) &&
                 micro_mul(AB, C).agrees_with(micro_mul(A, micro_mul(B, C)));
            ++n_checked;
        }
    }
    report(1, "associativity and symbol multiplicativity", ok, std::to_string(n_checked) + " triples");
}

void division() {
    bool ok = true;
    long n_checked = 0;
    for (const auto& [name, fl] : flavors()) {
        for (int n = 0; n < 200; ++n) {
            const Op F = rand_op(fl, rand_int(-1, 1), D, N, rand_int(0, 2));
            const Op G = rand_op(fl, rand_int(-1, 2), D, N);
            const auto res = micro_divide(G, F);
            const Op back = micro_mul(res.quotient, F) + recompose_scalar_left(res.remainders, fl, N);
            bool good = back.agrees_with(G);
            const auto again = micro_divide(back, F);
            good = good && again.quotient.agrees_with(res.quotient) && again.remainders.size() == res.remainders.size();
            for (std::size_t i = 0; good && i < res.remainders.size(); ++i) good = again.remainders[i].agrees_with(res.remainders[i]);
            ok = ok && good;
            ++n_checked;
        }
    }
    const Fl at0 = Fl::finite(Rational());
    Op G(at0, -D), F(at0, -D);
    G.set(0, ser(at0, {Rational(), Rational(), Rational(1)}));
    F.set(0, ser(at0, {Rational(), Rational(1)}));
    F.set(-1, ser(at0, {Rational(-1)}));
    const auto res = micro_divide(G, F);
    const bool known = res.m == 1 && res.quotient.to_string() == "t + eta^-1" && res.remainders.size() == 1 &&
                       res.remainders[0].to_string() == "2*eta^-2";
    report(2, "division round trip and uniqueness", ok && known,
           std::to_string(n_checked) + " divisions; t^2 / (t - eta^-1) = " + res.quotient.to_string() + ", R0 = " +
               (res.remainders.empty() ? std::string("?") : res.remainders[0].to_string()));
}

void ledger_and_partition(const std::vector<WeylQ>& ops) {
    bool ledger = true, partition = true;
    std::string bad;
    for (const auto& P : ops) {
        const auto r = stationary_phase(P, kPrec);
        if (!r.ledger_ok) bad += " ledger(" + P.to_string() + ")";
        if (!r.partition_ok) bad += " partition(" + P.to_string() + ")";
        ledger = ledger && r.ledger_ok;
        partition = partition && r.partition_ok;
    }
    report(3, "dimension ledger dhat = sum m_c + nu_inf", ledger, std::to_string(ops.size()) + " operators" + bad);

    const std::pair<const char*, SlopeMultiset> pinned[] = {
        {"t^2*dt + 1", ms({{Rational(1, 2), 2}})},
        {"dt^2 - t", ms({{Rational(3), 1}})},
        {"t*dt^2 - t^2", ms({{Rational(0), 1}, {Rational(3), 1}})},
        {"(t-1)*dt - 1", ms({{Rational(1), 1}})},
    };
    bool pins = true;
    for (const auto& [s, expect] : pinned) {
        const auto got = slopes_at_infinity(fourier(op(s)));
        if (!(got == expect)) {
            pins = false;
            bad += std::string(" slopes(") + s + ") = " + got.to_string();
        }
    }
    report(4, "slope partition (below, equal, above one) = (m_0, sum m_c, nu_inf)", partition && pins, bad);
}

void twist(const std::vector<WeylQ>& ops) {
    bool ok = true;
    std::string bad;
    for (const auto& P : ops)
        for (const Rational c : {Rational(1), Rational(-2), Rational(1, 2)})
            if (!twist_check(P, c, kPrec)) {
                ok = false;
                bad += " " + P.to_string() + " @ " + c.to_string();
            }
    report(5, "twist identity", ok, std::to_string(ops.size() * 3) + " cases" + bad);
}

void certificates(const std::vector<WeylQ>& ops) {
    bool ok = true;
    long n_checked = 0;
    std::string bad;
    auto certify = [&](const WeylQ& P) -> std::optional<ConjugationCertificate> {
        const auto r = stationary_phase(P, kPrec, true);
        if (!r.certificate) return std::nullopt;
        const auto& c = *r.certificate;
        const bool good = c.residual_zero && c.preimages_consistent && is_identity(matrix_mul(c.B, c.U)) &&
                          is_identity(matrix_mul(c.U, c.B));
        if (!good) bad += " " + P.to_string();
        ok = ok && good;
        ++n_checked;
        return c;
    };
    for (const auto& P : ops)
        if (stationary_phase(P, kPrec).nu_inf == 0) certify(P);
    const auto airy = certify(op("dt^2 - t"));
    ok = ok && airy && same(airy->A_germ, "[eta^4]") && same(airy->A_local, "[eta^4]");
    const auto euler = certify(op("2*t*dt - 1"));
    ok = ok && euler && same(euler->A_germ, "[3/2*eta]") && same(euler->A_local, "[3/2*eta]");
    for (const char* s : {"t - 3", "t + 2", "t - 1/2"}) {
        const auto c = certify(op(s));
        const Rational cc = -parse_operator(s).coeff(0).coeff(0);
        const std::string expect = "[" + LaurentQ::monomial(2, cc, 0).to_string() + "]";
        ok = ok && c && same(c->A_local, expect);
        if (!c || !same(c->A_local, expect)) bad += std::string(" pinned(") + s + ")";
    }
    std::string pins = "; Airy A = " + (airy ? matrix_to_string(airy->A_germ) : std::string("?")) +
                       ", 2t*dt - 1 A = " + (euler ? matrix_to_string(euler->A_germ) : std::string("?"));
    report(6, "conjugation certificate to depth 8", ok, std::to_string(n_checked) + " certificates" + pins + bad);
}

void composites() {
    bool ok = prop21_check(op("t*dt"), kPrec) && prop21_check(op("dt^2 - t"), kPrec);
    for (int n = 0; n < 100; ++n) ok = ok && prop21_check(testsupport::rand_weyl_q(2, 2), kPrec);
    report(7, "formal Fourier composites agree", ok, "100 random operators");
}

void ramification(const std::vector<WeylQ>& ops) {
    bool ok = true;
    for (const auto& P : ops)
        for (long q : {2L, 3L}) ok = ok && slopes_at_zero(ramify(P, q)) == scaled(slopes_at_zero(P), q);
    const auto pinned = slopes_at_zero(ramify(op("t^2*dt + 1"), 2));
    ok = ok && pinned == ms({{Rational(2), 1}});
    report(8, "ramification scales slopes at zero", ok, "t^2*dt + 1, q = 2: " + pinned.to_string());
}

// p-adic helpers

const Flavor<Eis> kAt0 = Flavor<Eis>::finite(Eis());

SeriesEis pser(std::vector<Eis> c) { return SeriesEis(Var::z, std::move(c), kExactPrecision); }

SeriesEis rand_series(unsigned long p, long max_deg) {
    std::vector<Eis> c;
    const long deg = rand_int(0, max_deg);
    for (long k = 0; k <= deg; ++k) c.push_back(rand_int(0, 2) == 0 ? Eis() : rand_eisenstein(p, 9, 9));
    return pser(std::move(c));
}

PadicMicroOp rand_finite(unsigned long p, long depth = 8) {
    const long top = rand_int(-1, 1);
    PadicMicroOp r{p, MicroEis(kAt0, top - depth), true};
    const long terms = rand_int(1, 3);
    for (long j = top; j > top - terms; --j) r.op.set(j, rand_series(p, 2));
    if (r.op.is_zero()) r.op.set(top, pser({Eis(1)}));
    return r;
}

PadicMicroOp rand_divisor(unsigned long p, long depth) {
    const long top = rand_int(-1, 1);
    const long m = rand_int(0, 2);
    std::vector<Eis> c(static_cast<std::size_t>(m));
    const Eis lead = Eis(rand_int(1, 4)) * Eis(p).pow(rand_int(-1, 1));
    c.push_back(lead);
    c.push_back(lead * Eis(rand_int(-2, 2)));
    PadicMicroOp r{p, MicroEis(kAt0, top - depth), true};
    r.op.set(top, pser(std::move(c)));
    for (long j = top - 1; j > top - 3; --j) r.op.set(j, rand_series(p, 2));
    return r;
}

void padic() {
    std::string detail;
    // (a)
    bool sub = true;
    for (const unsigned long p : {2UL, 3UL, 5UL}) {
        const PadicContext ctx{p};
        for (int n = 0; n < 200; ++n) {
            const auto F = rand_finite(p), G = rand_finite(p);
            const auto FG = padic_mul(F, G);
            const Rational a(rand_int(1, 6), rand_int(4, 12));
            const NormQuery qr{a, a + ctx.omega_exponent() + Rational(rand_int(1, 8), rand_int(2, 6))};
            sub = sub && phi_norm(FG, qr, ctx) >= phi_norm(F, qr, ctx) + phi_norm(G, qr, ctx);
        }
    }
    detail += std::string("(a) ") + (sub ? "ok" : "fail");

    // (b)
    const PadicContext ctx3{3};
    PadicMicroOp bad{3, MicroEis(kAt0, -8), true};
    bad.op.set(0, pser({Eis(1)}));
    bad.op.set(-1, pser({Eis(Rational(-1, 3))}));
    bool rejected = !is_dominant(bad, ctx3);
    try {
        PadicMicroOp one{3, MicroEis(kAt0, -8), true};
        one.op.set(0, pser({Eis(1)}));
        padic_divide(one, bad, ctx3, {});
        rejected = false;
    } catch (const NotDominant&) {
    }
    detail += std::string(", (b) ") + (rejected ? "ok" : "fail");

    // (c)
    constexpr PadicPrecision prec{6, 24};
    bool bounds = true;
    long certified = 0;
    for (const unsigned long p : {2UL, 3UL, 5UL}) {
        const PadicContext ctx{p};
        for (int n = 0; n < 30; ++n) {
            const auto F = rand_divisor(p, prec.depth);
            if (!is_dominant(F, ctx)) continue;
            const auto qr = query_near_one(F, ctx);
            if (!qr) {
                bounds = false;
                continue;
            }
            const auto res = padic_divide(rand_finite(p, prec.depth), F, ctx, {*qr}, prec);
            ++certified;
            for (const auto& e : res.certificate.entries)
                bounds = bounds && e.v_quotient >= e.bound && e.lemma_ok && e.steps_ok;
            bounds = bounds && res.certificate.passes();
        }
    }
    bounds = bounds && certified >= 20;
    detail += std::string(", (c) ") + (bounds ? "ok" : "fail") + " on " + std::to_string(certified) + " divisions";

    // (d)
    bool stationary = true;
    for (const char* s : {"t*dt - 1", "t*dt - 3", "t*dt - 1/2", "t*dt + 9/5", "t*dt"}) {
        const auto rep = padic_stationary_check(parse_operator_padic(s, 3), ctx3);
        stationary = stationary && rep.delta == 1 && rep.q.to_string() == LaurentPoly<Eis>::monomial(1, Eis(-1)).to_string() &&
                     rep.unit_ok && rep.ok;
    }
    detail += std::string(", (d) ") + (stationary ? "ok" : "fail");
    report(9, "p-adic norms and division", sub && rejected && bounds && stationary, detail);
}

void formal_vs_padic() {
    constexpr PadicPrecision prec{6, 24};
    const PadicContext ctx{3};
    const Fl at0 = Fl::finite(Rational());
    auto rand_rational_op = [&](long top, long m, bool divisor) {
        Op r(at0, top - prec.depth);
        for (long j = top; j > top - 3; --j) {
            std::vector<Rational> c;
            if (divisor && j == top) {
                c.assign(static_cast<std::size_t>(m), Rational());
                const Rational lead(rand_int(1, 4));
                c.push_back(lead);
                c.push_back(lead * Rational(rand_int(-3, 3)));
            } else {
                for (long k = 0; k <= rand_int(0, 2); ++k) c.push_back(rand_rational(4, 3));
            }
            r.set(j, Series(Var::z, std::move(c), kExactPrecision));
        }
        // window measured from the actual top, as padic_divide does for finite operators
        Op w(at0, std::min(r.top(), top) - prec.depth);
        for (long j = r.top(); j > r.floor(); --j) w.set(j, r.coeff(j));
        return w;
    };
    bool ok = true;
    long compared = 0;
    for (int n = 0; n < 40; ++n) {
        const auto F = rand_rational_op(rand_int(-1, 1), rand_int(0, 2), true);
        const auto G = rand_rational_op(rand_int(-1, 2), 0, false);
        const auto Fp = padic_from_rational(F, 3, true);
        if (!is_dominant(Fp, ctx)) continue;
        ++compared;
        const auto formal = micro_divide(G.truncated(prec.zprec), F.truncated(prec.zprec));
        const auto pd = padic_divide(padic_from_rational(G, 3, true), Fp, ctx, {}, prec).division;
        ok = ok && rational_part(pd.quotient) == formal.quotient && pd.remainders.size() == formal.remainders.size() &&
             pd.m == formal.m;
        for (std::size_t i = 0; ok && i < formal.remainders.size(); ++i) ok = rational_part(pd.remainders[i]) == formal.remainders[i];
    }
    report(10, "formal and p-adic division data agree", ok && compared >= 10, std::to_string(compared) + " divisions");
}

}  // namespace

int main() {
    ring_axioms();
    division();
    const auto ops = suite();
    ledger_and_partition(ops);
    twist(ops);
    certificates(ops);
    composites();
    ramification(ops);
    padic();
    formal_vs_padic();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
