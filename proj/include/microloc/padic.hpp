#pragma once

#include <optional>
#include <string>
#include <vector>

#include "microloc/eisenstein.hpp"
#include "microloc/microdiff.hpp"
#include "microloc/polygon.hpp"
#include "microloc/valuation.hpp"
#include "microloc/weyl.hpp"

namespace microloc {

using Eis = EisensteinScalar;
using WeylEis = WeylOp<EisensteinScalar>;
using MicroEis = MicroOp<EisensteinScalar>;
using SeriesEis = PowerSeriesTrunc<EisensteinScalar>;

enum class PadicVariant { standard, omega_one };

struct PadicContext {
    unsigned long p = 3;
    PadicVariant variant = PadicVariant::standard;

    /// v(omega): 1/(p-1) in the standard ring, 0 when omega = 1.
    Rational omega_exponent() const;
};

/// lambda = p^-a, rho = p^-b.
struct NormQuery {
    Rational a;
    Rational b;
};

/// 0 < rho < omega lambda < omega, i.e. a > 0 and b > a + v(omega).
bool admissible(const NormQuery& q, const PadicContext& ctx);

/// Element of the ring of p-adic microdifferential operators of finite order,
/// stored as sum_{floor < j <= top} f_j(t) eta^j. `finite` marks operators that are
/// finite sums with exact polynomial coefficients, so nothing lies outside the window.
struct PadicMicroOp {
    unsigned long p = 3;
    MicroEis op;
    bool finite = false;

    std::string to_string() const { return op.to_string(); }
};

/// Coefficients f(t) (as series in t) and polynomials, read as elements of A_t(1).
/// The valuation of |f|_lambda: min_i v(a_i) + i a.
/// Exact for exact series; for truncated ones the minimum must sit strictly inside the
/// known coefficients, otherwise WindowInconclusive.
Valuation gauss_valuation(const SeriesEis& f, const Rational& a, unsigned long p);

/// Behavior of gauss_valuation(f, a) as a -> 0+: c0 + c1 a with c0 = min v(a_i) and
/// c1 the smallest index attaining it.
struct AffineValuation {
    Rational c0;
    Rational c1;
    friend bool operator==(const AffineValuation&, const AffineValuation&) = default;
};
std::optional<AffineValuation> gauss_valuation_near_zero(const SeriesEis& f, unsigned long p);

/// Valuation of ||F||_{lambda,rho}: min_u gauss_valuation(f_u, a) - u b.
/// Throws std::invalid_argument for inadmissible queries, WindowInconclusive when the
/// minimum sits on the window boundary of a non-finite operator.
Valuation phi_norm(const PadicMicroOp& F, const NormQuery& q, const PadicContext& ctx);

/// Same minimum taken over the known coefficients only (an upper bound for truncated data).
Valuation phi_norm_window(const MicroEis& F, const NormQuery& q, unsigned long p);

/// Whether the top coefficient attains the norm for all admissible (a, b) with a near 0.
bool is_dominant(const PadicMicroOp& F, const PadicContext& ctx);

/// t -> t, d_t -> eta, as a finite operator known to `depth` orders below its top.
PadicMicroOp padic_embed(const WeylEis& P, unsigned long p, long depth);
/// t -> t/pi, d_t -> pi eta.
WeylEis substitute_scaled(const WeylEis& P, unsigned long p);
PadicMicroOp scale_by_pi(const WeylEis& P, unsigned long p, long depth);
/// t -> -d_eta/pi, d_t -> pi eta.
WeylEis padic_fourier(const WeylEis& P, unsigned long p);

/// Exact product of two finite operators (window deepened so no term is lost).
PadicMicroOp padic_mul(const PadicMicroOp& F, const PadicMicroOp& G);

PadicMicroOp padic_from_rational(const MicroOp<Rational>& F, unsigned long p, bool finite);
/// The same operator over Q; throws std::domain_error if a coefficient involves pi.
MicroOp<Rational> rational_part(const MicroEis& F);
LaurentScalarTrunc<Rational> rational_part(const LaurentScalarTrunc<Eis>& s);

struct NormCertificateEntry {
    NormQuery query;
    Valuation v_quotient;  // v(||Q||) over the quotient window
    Valuation bound;       // v(||G||) - v(||F||)
    bool top_attains = false;
    long steps_checked = 0;
    bool steps_ok = false;  // each |q_v| rho^-v <= ||G|| / ||F||
    bool lemma_ok = false;  // |r| <= |phi| and |f||q| <= |phi| on every slice
    bool pass = false;
};

struct NormCertificate {
    std::vector<NormCertificateEntry> entries;
    bool passes() const;
};

struct PadicDivision {
    DivisionResult<Eis> division;
    NormCertificate certificate;
};

struct PadicPrecision {
    long depth = 12;
    int zprec = 32;
};

/// Division of G by a dominant F with sigma(F) = t^m b(t), b a unit of A_t(1).
PadicDivision padic_divide(const PadicMicroOp& G, const PadicMicroOp& F, const PadicContext& ctx,
                           const std::vector<NormQuery>& queries, PadicPrecision prec = {});

/// Throws ConditionIViolated unless a_d = alpha t^delta and deg a_i <= delta for all i.
long check_condition_i(const WeylEis& P);

/// gauss_valuation(a_{d-i}, a) >= gauss_valuation(a_d, a) - i a for i = 1..d.
/// Without `a` the comparison is made for all a in a neighborhood of 0+.
bool solvability_inequality_check(const WeylEis& P, const std::optional<Rational>& a, unsigned long p);

struct PadicStationaryReport {
    long delta = 0;
    long order = 0;
    bool solvable = false;
    PadicMicroOp scaled;
    bool dominant = false;
    long m = 0;
    std::vector<std::string> basis;
    std::optional<PadicDivision> division;  // t^delta divided by the scaled operator
    WeylEis fourier;
    LaurentPoly<Eis> q;
    bool q_matches_formula = false;
    std::vector<std::pair<Rational, long>> root_valuations;  // nonzero roots of q, with multiplicity
    bool unit_ok = false;
    long rank_micro = 0;
    long rank_fourier = 0;
    bool witnesses_ok = false;
    bool ok = false;
};

/// Throws ConditionIViolated, NotDominant or UnitCheckFailed.
PadicStationaryReport padic_stationary_check(const WeylEis& P, const PadicContext& ctx, PadicPrecision prec = {});

/// A query with small a at which the top coefficient of F attains its norm (halving from a = 1/8).
std::optional<NormQuery> query_near_one(const PadicMicroOp& F, const PadicContext& ctx);

}  // namespace microloc
