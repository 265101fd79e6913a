#pragma once

#include <optional>
#include <string>
#include <vector>

#include "microloc/laurent.hpp"
#include "microloc/microdiff.hpp"
#include "microloc/polygon.hpp"
#include "microloc/weyl.hpp"

namespace microloc {

using LaurentQ = LaurentScalarTrunc<Rational>;
using MicroQ = MicroOp<Rational>;
/// Row-major n x n matrix over K((eta^-1)).
using LaurentMatrix = std::vector<std::vector<LaurentQ>>;

struct MicroPrecision {
    long depth = 12;
    int zprec = 32;
};

enum class ModuleLocation { Finite, Infinity, InfZero, FourierGerm };

/// A finite-dimensional K((eta^-1))-space with connection; column convention
/// nabla(e_j) = sum_i A[i][j] e_i.
struct MicroModule {
    ModuleLocation location = ModuleLocation::Finite;
    Rational c;
    std::vector<std::string> basis;
    LaurentMatrix A;

    long dimension() const { return static_cast<long>(basis.size()); }
};

/// Microlocalization at a finite point c: basis t_c^i (i < m_c), connection from
/// reducing eta^2 (t_c + c) t_c^j modulo the embedded operator.
MicroModule microlocalize(const WeylQ& P, const Rational& c, MicroPrecision prec = {});

/// (inf,inf)-microlocalization: basis t^-i (i < nu_inf).
MicroModule microlocalize_at_infinity(const WeylQ& P, MicroPrecision prec = {});

/// Action of t^i on the class of 1 in the (inf,inf)-microlocalization of W/WQ,
/// Q in K[t^-1]<d_t>.
struct TAction {
    MicroQ element;                 // X with t^i 1 = X 1
    std::vector<LaurentQ> reduced;  // coordinates of X 1 in the basis t^-j
};
TAction t_action_at_infinity(const WeylQ& Q, long i, MicroPrecision prec = {});

/// Formal germ at infinity of W_eta/W_eta Phat: basis d_eta^j 1 (j < order of Phat).
MicroModule germ_at_infinity(const WeylQ& Phat, MicroPrecision prec = {});

/// Coordinates in the basis d_eta^j 1 of the germ of Phat for an element sum_k alpha_k d_eta^k.
std::vector<LaurentQ> reduce_in_germ(const WeylQ& Phat, std::vector<LaurentQ> word, MicroPrecision prec = {});

/// An operator A with t^i A 1 = 1 modulo W P, searched with coefficient degree and
/// order bounded by n = 1, 2, ..., degree_bound. Throws DegreeBoundExceeded.
WeylQ express_t_negative_powers(const WeylQ& P, long i, long degree_bound = 8);

/// Germ-side preimage of the basis element t_c^i (finite c) or t^-i (c empty = infinity),
/// as coordinates over d_eta^j 1.
std::vector<LaurentQ> upsilon_preimage(const WeylQ& P, const std::optional<Rational>& c, long i, MicroPrecision prec = {},
                                       long degree_bound = 8);

struct PointDimension {
    Rational c;
    long dimension = 0;
};

struct ConjugationCertificate {
    LaurentMatrix A_germ;
    LaurentMatrix A_local;  // block diagonal: finite points by increasing c, then infinity
    LaurentMatrix U;        // germ basis -> local basis (columns are images of d_eta^j 1)
    LaurentMatrix B;        // U^-1
    LaurentMatrix residual; // U A_germ - d_{eta^-1} U - A_local U
    long residual_floor = 0;
    bool residual_zero = false;
    bool preimages_consistent = false;
    long preimages_skipped = 0;  // t^-i preimages not found within the degree bound
};

struct StationaryPhaseReport {
    SingularityProfile profile;
    std::vector<PointDimension> dimensions;
    long nu_inf = 0;
    SlopeMultiset slopes;
    long below_one = 0, equal_one = 0, above_one = 0;
    long sum_m = 0;
    long m_zero = 0, m_nonzero = 0;
    bool ledger_ok = false;
    bool partition_ok = false;
    std::optional<ConjugationCertificate> certificate;
};

StationaryPhaseReport stationary_phase(const WeylQ& P, MicroPrecision prec = {}, bool with_certificate = false,
                                       long degree_bound = 8);

/// Twisting by E^c: connection at 0 of the translate equals the connection at c minus c eta^2.
bool twist_check(const WeylQ& P, const Rational& c, MicroPrecision prec = {});

/// Image of Phat = sum q_k(eta) d_eta^k under eta -> eta, d_eta -> t, in E^(inf,0).
MicroQ mu_image(const WeylQ& Phat, MicroPrecision prec = {});

/// Both ways of sending P into E^(inf,0) agree.
bool prop21_check(const WeylQ& P, MicroPrecision prec = {});

/// Matrix helpers over K((eta^-1)).
LaurentMatrix matrix_mul(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix matrix_sub(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix matrix_d_eta_inv(const LaurentMatrix& a);
/// Gauss-Jordan inverse; throws ZeroDivisor when singular within the window.
LaurentMatrix matrix_inverse(const LaurentMatrix& a);
std::string matrix_to_string(const LaurentMatrix& a);

}  // namespace microloc
