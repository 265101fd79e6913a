#include "microloc/localfourier.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace microloc {

namespace {

using PolyQ = LaurentPoly<Rational>;
using SeriesQ = PowerSeriesTrunc<Rational>;
using FlavorQ = Flavor<Rational>;

LaurentQ lau_from_poly(const PolyQ& p, long depth) {
    LaurentQ r((p.is_zero() ? 0 : p.high()) - depth);
    for (long k = p.high(); !p.is_zero() && k >= p.low(); --k)
        if (k > r.floor() && !p.coeff(k).is_zero()) r.set(k, p.coeff(k));
    return r;
}

LaurentQ eta_power(long k, const Rational& c, long depth) { return LaurentQ::monomial(k, c, k - depth); }

std::string power_label(const std::string& base, long i) {
    if (i == 0) return "1";
    return i == 1 ? base : base + "^" + std::to_string(i);
}

std::string finite_base(const Rational& c) {
    if (c.is_zero()) return "t";
    const Rational mc = -c;
    return mc < Rational(0) ? "(t - " + c.to_string() + ")" : "(t + " + mc.to_string() + ")";
}

/// Multiplicity of c as a root of the leading coefficient.
long local_multiplicity(const WeylQ& P, const Rational& c) {
    const PolyQ ad = P.leading().translated(c);
    return ad.is_zero() ? 0 : ad.low();
}

MicroQ eta_squared(const FlavorQ& fl, MicroPrecision prec) {
    return MicroQ::term(fl, 2, SeriesQ::constant(fl.series_var(), Rational(1), prec.zprec), 2 - prec.depth);
}

/// Symbol-variable derivative of a microdifferential operator (InfInf: d/d eta).
MicroQ d_symbol(const MicroQ& X) {
    MicroQ r(X.flavor(), X.floor() - 1);
    for (long j = X.top(); j > X.floor(); --j)
        if (j != 0) r.set(j - 1, Rational(j) * X.coeff(j));
    return r;
}

std::vector<LaurentQ> word_of(const WeylQ& W, long depth) {
    std::vector<LaurentQ> word;
    for (long k = 0; k <= W.order(); ++k) word.push_back(lau_from_poly(W.coeff(k), depth));
    return word;
}

LaurentQ zero_lau(long depth) { return LaurentQ(-depth); }

bool agrees_with_constant(const LaurentQ& x, const Rational& c) {
    return x.agrees_with(LaurentQ::monomial(0, c, x.floor()));
}

/// Least-squares-free exact solve of M x = b; free variables are set to zero.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> M, std::vector<Rational> b) {
    const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && M[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        std::swap(b[p], b[r]);
        const Rational inv = M[r][c].inverse();
        for (std::size_t k = c; k < cols; ++k) M[r][k] = M[r][k] * inv;
        b[r] = b[r] * inv;
        for (std::size_t q = 0; q < rows; ++q) {
            if (q == r || M[q][c].is_zero()) continue;
            const Rational f = M[q][c];
            for (std::size_t k = c; k < cols; ++k)
                if (!M[r][k].is_zero()) M[q][k] = M[q][k] - f * M[r][k];
            b[q] = b[q] - f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t q = r; q < rows; ++q)
        if (!b[q].is_zero()) return std::nullopt;
    std::vector<Rational> x(cols);
    for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = b[k];
    return x;
}

}  // namespace

MicroModule microlocalize(const WeylQ& P, const Rational& c, MicroPrecision prec) {
    if (P.is_zero()) throw std::invalid_argument("microlocalize: zero operator");
    if (!P.is_polynomial()) throw NotLocalizable("operator has negative powers of t");
    MicroModule M;
    M.location = ModuleLocation::Finite;
    M.c = c;
    const long m = local_multiplicity(P, c);
    if (m == 0) return M;
    const FlavorQ fl = FlavorQ::finite(c);
    const MicroQ F = embed_weyl(P, fl, prec.depth, prec.zprec);
    const MicroQ eta2 = eta_squared(fl, prec);
    M.A.assign(static_cast<std::size_t>(m), std::vector<LaurentQ>(static_cast<std::size_t>(m)));
    for (long j = 0; j < m; ++j) {
        M.basis.push_back(power_label(finite_base(c), j));
        std::vector<Rational> s(static_cast<std::size_t>(j + 2));
        s[static_cast<std::size_t>(j)] = c;
        s[static_cast<std::size_t>(j + 1)] = Rational(1);
        const MicroQ G = micro_mul(eta2, MicroQ::series(fl, SeriesQ(fl.series_var(), s, prec.zprec), prec.depth));
        const auto res = micro_divide(G, F);
        if (res.m != m) throw std::logic_error("microlocalize: symbol order mismatch");
        for (long i = 0; i < m; ++i) M.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = res.remainders[static_cast<std::size_t>(i)];
    }
    return M;
}

TAction t_action_at_infinity(const WeylQ& Q, long i, MicroPrecision prec) {
    const FlavorQ fl = FlavorQ::inf_inf();
    const Var zv = fl.series_var();
    for (const auto& a : Q.coeffs())
        if (!a.is_zero() && a.high() > 0) throw NotLocalizable("t_action_at_infinity expects an operator in K[t^-1]<d_t>");
    const MicroQ F = embed_weyl(Q, fl, prec.depth, prec.zprec);
    const MicroQ one = MicroQ::series(fl, SeriesQ::constant(zv, Rational(1), prec.zprec), prec.depth);
    TAction out;
    out.element = one;
    if (i > 0) {
        // p(x) = sum b_v(0) x^v, C = sum t (b_v - b_v(0)) d^v
        long deg_p = -1, top_c = -1;
        for (long v = 0; v <= Q.order(); ++v) {
            const auto& b = Q.coeff(v);
            if (!b.coeff(0).is_zero()) deg_p = v;
            if (!b.is_zero() && b.low() < 0) top_c = v;
        }
        if (deg_p < 0) throw NotLocalizable("p(x) vanishes: no coefficient with nonzero value at t = infinity");
        MicroQ p(fl, deg_p - prec.depth);
        for (long v = deg_p; v > deg_p - prec.depth && v >= 0; --v) p.set(v, SeriesQ::constant(zv, Q.coeff(v).coeff(0), prec.zprec));
        const MicroQ pinv = micro_invert(p, prec.depth);
        const long top_r = std::max(deg_p - 1, top_c);
        MicroQ rhs(fl, top_r - prec.depth);
        for (long v = top_r; v > top_r - prec.depth && v >= 0; --v) {
            const auto& b = Q.coeff(v);
            std::vector<Rational> s;
            if (!b.is_zero() && b.low() < 0) {
                s.resize(static_cast<std::size_t>(-b.low()));
                for (long k = b.low(); k < 0; ++k) s[static_cast<std::size_t>(-k - 1)] = -b.coeff(k);
            }
            if (s.empty()) s.emplace_back();
            s[0] = s[0] + Rational(v + 1) * Q.coeff(v + 1).coeff(0);
            rhs.set(v, SeriesQ(zv, s, prec.zprec));
        }
        const MicroQ X1 = micro_mul(pinv, rhs);
        MicroQ X = X1;
        for (long k = 2; k <= i; ++k) X = micro_mul(X, X1) - d_symbol(X);
        out.element = X;
    }
    out.reduced = micro_divide(out.element, F).remainders;
    return out;
}

MicroModule microlocalize_at_infinity(const WeylQ& P, MicroPrecision prec) {
    if (P.is_zero()) throw std::invalid_argument("microlocalize_at_infinity: zero operator");
    if (!P.is_polynomial()) throw NotLocalizable("operator has negative powers of t");
    MicroModule M;
    M.location = ModuleLocation::Infinity;
    const long dhat = P.max_degree();
    const long nu = dhat - P.leading().high();
    if (nu == 0) return M;
    const WeylQ Q = P.left_shift(-dhat);
    const FlavorQ fl = FlavorQ::inf_inf();
    const MicroQ F = embed_weyl(Q, fl, prec.depth, prec.zprec);
    const MicroQ eta2 = eta_squared(fl, prec);
    M.A.assign(static_cast<std::size_t>(nu), std::vector<LaurentQ>(static_cast<std::size_t>(nu)));
    for (long j = 0; j < nu; ++j) {
        M.basis.push_back(j == 0 ? "1" : "t^-" + std::to_string(j));
        const MicroQ tz = j == 0 ? t_action_at_infinity(Q, 1, prec).element
                                 : MicroQ::series(fl, SeriesQ::monomial(fl.series_var(), static_cast<int>(j - 1), Rational(1), prec.zprec), prec.depth);
        const auto res = micro_divide(micro_mul(eta2, tz), F);
        if (res.m != nu) throw std::logic_error("microlocalize_at_infinity: symbol order mismatch");
        for (long i = 0; i < nu; ++i) M.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = res.remainders[static_cast<std::size_t>(i)];
    }
    return M;
}

MicroModule germ_at_infinity(const WeylQ& Phat, MicroPrecision prec) {
    if (Phat.var() != Var::eta) throw VariableMismatch("germ_at_infinity expects an operator in eta");
    if (Phat.is_zero()) throw std::invalid_argument("germ_at_infinity: zero operator");
    MicroModule M;
    M.location = ModuleLocation::FourierGerm;
    const long n = Phat.order();
    if (n == 0) return M;
    const LaurentQ qinv = lau_from_poly(Phat.leading(), prec.depth).inverse();
    M.A.assign(static_cast<std::size_t>(n), std::vector<LaurentQ>(static_cast<std::size_t>(n), zero_lau(prec.depth)));
    for (long j = 0; j < n; ++j) M.basis.push_back(power_label("deta", j));
    for (long j = 0; j + 1 < n; ++j) M.A[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(j)] = eta_power(2, Rational(-1), prec.depth);
    for (long l = 0; l < n; ++l)
        M.A[static_cast<std::size_t>(l)][static_cast<std::size_t>(n - 1)] = (lau_from_poly(Phat.coeff(l), prec.depth) * qinv).shifted(2);
    return M;
}

std::vector<LaurentQ> reduce_in_germ(const WeylQ& Phat, std::vector<LaurentQ> word, MicroPrecision prec) {
    const long n = Phat.order();
    const LaurentQ qinv = lau_from_poly(Phat.leading(), prec.depth).inverse();
    std::vector<LaurentQ> neg_r;  // -q_l / q_n
    for (long l = 0; l < n; ++l) neg_r.push_back(-(lau_from_poly(Phat.coeff(l), prec.depth) * qinv));
    while (static_cast<long>(word.size()) > n) {
        const long k = static_cast<long>(word.size()) - 1;
        const LaurentQ alpha = word.back();
        word.pop_back();
        if (alpha.is_zero()) continue;
        // alpha d^s (d^n) with d^n = sum_l -r_l d^l, and d^s g = sum_lambda binom(s,lambda) g^(lambda) d^(s-lambda)
        const long s = k - n;
        for (long l = 0; l < n; ++l) {
            LaurentQ g = neg_r[static_cast<std::size_t>(l)];
            for (long lambda = 0; lambda <= s; ++lambda) {
                if (!g.is_zero()) {
                    const Rational b = falling(s, static_cast<unsigned long>(lambda)) / factorial(static_cast<unsigned long>(lambda));
                    auto& slot = word[static_cast<std::size_t>(s - lambda + l)];
                    slot += b * (alpha * g);
                }
                g = g.d_eta();
            }
        }
    }
    while (static_cast<long>(word.size()) < n) word.push_back(zero_lau(prec.depth));
    return word;
}

WeylQ express_t_negative_powers(const WeylQ& P, long i, long degree_bound) {
    if (i == 0) return WeylQ::scalar(Var::t, Rational(1));
    if (degree_bound < 1) throw std::invalid_argument("degree bound must be at least 1");
    for (long n = 1; n <= degree_bound; ++n) {
        std::vector<WeylQ> contrib;
        for (long k = 0; k <= n; ++k)
            for (long l = 0; l <= n; ++l) contrib.push_back(WeylQ::term(Var::t, i + k, l, Rational(1)));
        for (long k = 0; k <= n + i; ++k)
            for (long l = 0; l <= n; ++l) contrib.push_back(-(WeylQ::term(Var::t, k, l, Rational(1)) * P));
        std::map<std::pair<long, long>, std::size_t> row_of;
        row_of[{0, 0}] = 0;
        for (const auto& w : contrib)
            for (long l = 0; l <= w.order(); ++l)
                for (long k = w.coeff(l).low(); !w.coeff(l).is_zero() && k <= w.coeff(l).high(); ++k)
                    if (!w.coeff(l).coeff(k).is_zero()) row_of.emplace(std::make_pair(k, l), row_of.size());
        std::vector<std::vector<Rational>> M(row_of.size(), std::vector<Rational>(contrib.size()));
        for (std::size_t u = 0; u < contrib.size(); ++u) {
            const auto& w = contrib[u];
            for (long l = 0; l <= w.order(); ++l)
                for (long k = w.coeff(l).low(); !w.coeff(l).is_zero() && k <= w.coeff(l).high(); ++k)
                    if (!w.coeff(l).coeff(k).is_zero()) M[row_of.at({k, l})][u] = w.coeff(l).coeff(k);
        }
        std::vector<Rational> b(row_of.size());
        b[0] = Rational(1);
        const auto x = solve_linear(std::move(M), std::move(b));
        if (!x) continue;
        WeylQ A(Var::t);
        std::size_t u = 0;
        for (long k = 0; k <= n; ++k)
            for (long l = 0; l <= n; ++l, ++u)
                if (!(*x)[u].is_zero()) A += WeylQ::term(Var::t, k, l, (*x)[u]);
        WeylQ L(Var::t);
        for (long k = 0; k <= n + i; ++k)
            for (long l = 0; l <= n; ++l, ++u)
                if (!(*x)[u].is_zero()) L += WeylQ::term(Var::t, k, l, (*x)[u]);
        if (!(WeylQ::term(Var::t, i, 0, Rational(1)) * A - WeylQ::scalar(Var::t, Rational(1)) == L * P))
            throw std::logic_error("express_t_negative_powers: solution failed verification");
        return A;
    }
    throw DegreeBoundExceeded("no operator A with t^" + std::to_string(i) + " A = 1 mod W P of degree <= " + std::to_string(degree_bound));
}

std::vector<LaurentQ> upsilon_preimage(const WeylQ& P, const std::optional<Rational>& c, long i, MicroPrecision prec,
                                       long degree_bound) {
    const WeylQ Phat = fourier(P);
    WeylQ W(Var::eta);
    if (c) {
        // t_c -> -d_eta - c
        const WeylQ base = -WeylQ::d(Var::eta) - WeylQ::scalar(Var::eta, *c);
        W = base.pow(static_cast<unsigned long>(i));
    } else {
        W = fourier(express_t_negative_powers(P, i, degree_bound));
    }
    return reduce_in_germ(Phat, word_of(W, prec.depth), prec);
}

LaurentMatrix matrix_mul(const LaurentMatrix& a, const LaurentMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    LaurentMatrix out(n, std::vector<LaurentQ>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            LaurentQ acc = a[i][0] * b[0][j];
            for (std::size_t l = 1; l < k; ++l) acc += a[i][l] * b[l][j];
            out[i][j] = acc;
        }
    return out;
}

LaurentMatrix matrix_sub(const LaurentMatrix& a, const LaurentMatrix& b) {
    LaurentMatrix out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] -= b[i][j];
    return out;
}

LaurentMatrix matrix_d_eta_inv(const LaurentMatrix& a) {
    LaurentMatrix out = a;
    for (auto& row : out)
        for (auto& x : row) x = x.d_eta_inv();
    return out;
}

LaurentMatrix matrix_inverse(const LaurentMatrix& a) {
    const std::size_t n = a.size();
    long lo = 0, hi = 0;
    for (const auto& row : a)
        for (const auto& x : row) {
            lo = std::min(lo, x.floor());
            hi = std::max(hi, x.top());
        }
    const long idfloor = lo - (hi - lo) - 1;
    LaurentMatrix m = a, inv(n, std::vector<LaurentQ>(n, LaurentQ(idfloor)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = LaurentQ::monomial(0, Rational(1), idfloor);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        for (std::size_t r = c; r < n; ++r)
            if (!m[r][c].is_zero() && (p == n || m[r][c].top() > m[p][c].top())) p = r;
        if (p == n) throw ZeroDivisor("matrix is singular within the window");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        const LaurentQ pinv = m[c][c].inverse();
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] = pinv * m[c][k];
            inv[c][k] = pinv * inv[c][k];
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c].is_zero()) continue;
            const LaurentQ f = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

std::string matrix_to_string(const LaurentMatrix& a) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < a[i].size(); ++j) os << (j ? ", " : "") << a[i][j].to_string();
    }
    os << "]";
    return os.str();
}

StationaryPhaseReport stationary_phase(const WeylQ& P, MicroPrecision prec, bool with_certificate, long degree_bound) {
    if (P.is_zero()) throw std::invalid_argument("stationary_phase: zero operator");
    StationaryPhaseReport rep;
    rep.profile = singularity_profile(P);
    rep.nu_inf = rep.profile.nu_inf;
    std::vector<MicroModule> locals;
    for (const auto& pt : rep.profile.points) {
        locals.push_back(microlocalize(P, pt.c, prec));
        rep.dimensions.push_back({pt.c, locals.back().dimension()});
        rep.sum_m += locals.back().dimension();
        (pt.c.is_zero() ? rep.m_zero : rep.m_nonzero) += locals.back().dimension();
    }
    const WeylQ Phat = fourier(P);
    rep.slopes = slopes_at_infinity(Phat);
    rep.below_one = rep.slopes.count_below(Rational(1));
    rep.equal_one = rep.slopes.count_equal(Rational(1));
    rep.above_one = rep.slopes.count_above(Rational(1));
    rep.ledger_ok = rep.profile.dhat == rep.sum_m + rep.nu_inf;
    rep.partition_ok = rep.below_one == rep.m_zero && rep.equal_one == rep.m_nonzero && rep.above_one == rep.nu_inf;
    if (!with_certificate) return rep;

    if (!rep.ledger_ok) throw std::logic_error("stationary_phase: dimension ledger fails");

    ConjugationCertificate cert;
    const MicroModule germ = germ_at_infinity(Phat, prec);
    const long n = germ.dimension();
    cert.A_germ = germ.A;
    if (rep.nu_inf > 0) locals.push_back(microlocalize_at_infinity(P, prec));
    cert.A_local.assign(static_cast<std::size_t>(n), std::vector<LaurentQ>(static_cast<std::size_t>(n), zero_lau(prec.depth)));
    cert.U.assign(static_cast<std::size_t>(n), std::vector<LaurentQ>(static_cast<std::size_t>(n), zero_lau(prec.depth)));
    struct Block {
        std::optional<Rational> c;
        std::size_t offset;
        long dim;
    };
    std::vector<Block> blocks;
    std::size_t off = 0;
    for (const auto& M : locals) {
        const long d = M.dimension();
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                cert.A_local[off + static_cast<std::size_t>(i)][off + static_cast<std::size_t>(j)] = M.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        blocks.push_back({M.location == ModuleLocation::Finite ? std::optional<Rational>(M.c) : std::nullopt, off, d});
        off += static_cast<std::size_t>(d);
    }
    // U: column j is the image of d_eta^j 1, i.e. the class of (-t)^j 1 in every block
    for (const auto& blk : blocks) {
        if (blk.dim == 0) continue;
        if (blk.c) {
            const FlavorQ fl = FlavorQ::finite(*blk.c);
            const MicroQ F = embed_weyl(P, fl, prec.depth, prec.zprec);
            const PolyQ base = -(PolyQ::x() + PolyQ(*blk.c));  // -(z + c)
            PolyQ pw(Rational(1));
            for (long j = 0; j < n; ++j) {
                const MicroQ G = MicroQ::series(fl, SeriesQ(fl.series_var(), pw.poly_coeffs(), prec.zprec), prec.depth);
                const auto r = micro_divide(G, F).remainders;
                for (long i = 0; i < blk.dim; ++i) cert.U[blk.offset + static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(i)];
                pw = pw * base;
            }
        } else {
            const WeylQ Q = P.left_shift(-rep.profile.dhat);
            for (long j = 0; j < n; ++j) {
                auto r = t_action_at_infinity(Q, j, prec).reduced;
                for (long i = 0; i < blk.dim; ++i)
                    cert.U[blk.offset + static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        j % 2 == 0 ? r[static_cast<std::size_t>(i)] : -r[static_cast<std::size_t>(i)];
            }
        }
    }
    if (n > 0) {
        cert.residual = matrix_sub(matrix_sub(matrix_mul(cert.U, cert.A_germ), matrix_d_eta_inv(cert.U)), matrix_mul(cert.A_local, cert.U));
        cert.residual_zero = true;
        long lead = cert.A_local[0][0].floor();
        cert.residual_floor = cert.residual[0][0].floor();
        for (std::size_t i = 0; i < cert.residual.size(); ++i)
            for (std::size_t j = 0; j < cert.residual.size(); ++j) {
                cert.residual_zero = cert.residual_zero && cert.residual[i][j].is_zero();
                cert.residual_floor = std::max(cert.residual_floor, cert.residual[i][j].floor());
                lead = std::max(lead, cert.A_local[i][j].top());
            }
        // the check must see at least the leading order of the local connection
        cert.residual_zero = cert.residual_zero && cert.residual_floor < lead;
        cert.B = matrix_inverse(cert.U);
    } else {
        cert.residual_zero = true;
    }
    // closed-form preimages land on their basis vector inside their own block; at infinity
    // the preimage of t^-i exists only when t acts invertibly, otherwise it is skipped
    cert.preimages_consistent = true;
    for (const auto& blk : blocks) {
        for (long i = 0; i < blk.dim; ++i) {
            std::vector<LaurentQ> col;
            try {
                col = upsilon_preimage(P, blk.c, i, prec, degree_bound);
            } catch (const DegreeBoundExceeded&) {
                ++cert.preimages_skipped;
                continue;
            }
            LaurentMatrix colm;
            for (const auto& x : col) colm.push_back({x});
            const auto img = matrix_mul(cert.U, colm);
            for (long k = 0; k < blk.dim; ++k)
                if (!agrees_with_constant(img[blk.offset + static_cast<std::size_t>(k)][0], Rational(k == i ? 1 : 0)))
                    cert.preimages_consistent = false;
        }
    }
    rep.certificate = std::move(cert);
    return rep;
}

bool twist_check(const WeylQ& P, const Rational& c, MicroPrecision prec) {
    const MicroModule at0 = microlocalize(translate(P, c), Rational(0), prec);
    const MicroModule atc = microlocalize(P, c, prec);
    if (at0.dimension() != atc.dimension()) return false;
    for (long i = 0; i < at0.dimension(); ++i)
        for (long j = 0; j < at0.dimension(); ++j) {
            LaurentQ rhs = atc.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (i == j) rhs -= eta_power(2, c, prec.depth);
            if (!at0.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].agrees_with(rhs)) return false;
        }
    return true;
}

MicroQ mu_image(const WeylQ& Phat, MicroPrecision prec) {
    if (Phat.var() != Var::eta) throw VariableMismatch("mu_image expects an operator in eta");
    const FlavorQ fl = FlavorQ::inf_zero();
    const long top = Phat.order();
    MicroQ out(fl, top - prec.depth);
    for (long k = top; k > top - prec.depth && k >= 0; --k)
        out.set(k, SeriesQ(fl.series_var(), Phat.coeff(k).poly_coeffs(), prec.zprec));
    for (long k = out.top(); k > out.floor(); --k)
        if (out.coeff(k).is_exact()) out.set(k, SeriesQ(fl.series_var(), prec.zprec));
    return out;
}

bool prop21_check(const WeylQ& P, MicroPrecision prec) {
    const MicroQ lhs = embed_weyl(P, FlavorQ::inf_zero(), prec.depth, prec.zprec);
    const MicroQ rhs = mu_image(fourier(P), prec);
    return lhs.top() == rhs.top() && lhs.agrees_with(rhs);
}

}  // namespace microloc
