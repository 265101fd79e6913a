#include "microloc/weyl.hpp"

#include <algorithm>
#include <map>

namespace microloc {

namespace {

using PolyQ = LaurentPoly<Rational>;

std::vector<mpz_class> positive_divisors(mpz_class n) {
    n = abs(n);
    std::vector<std::pair<mpz_class, unsigned>> factors;
    for (mpz_class d = 2; d * d <= n; ++d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e > 0) factors.emplace_back(d, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    std::vector<mpz_class> divs{1};
    for (const auto& [prime, e] : factors) {
        const std::size_t base = divs.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= prime;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// Rational roots of a squarefree polynomial with nonzero constant term.
std::vector<Rational> simple_rational_roots(const PolyQ& f) {
    const auto c = f.poly_coeffs();
    mpz_class l = 1;
    for (const auto& x : c) l = lcm(l, x.den());
    const mpz_class a0 = (c.front() * Rational(l)).num();
    const mpz_class an = (c.back() * Rational(l)).num();
    std::vector<Rational> roots;
    for (const auto& num : positive_divisors(a0)) {
        for (const auto& den : positive_divisors(an)) {
            if (gcd(num, den) != 1) continue;
            for (int sign : {1, -1}) {
                const Rational r(mpz_class(sign * num), den);
                if (f.eval(r).is_zero()) roots.push_back(r);
            }
        }
    }
    return roots;
}

}  // namespace

std::pair<std::vector<SingularPoint>, PolyQ> rational_roots(const PolyQ& f_in) {
    if (f_in.is_zero()) throw ZeroDivisor("roots of the zero polynomial");
    if (!f_in.is_polynomial()) throw std::domain_error("rational_roots of a Laurent polynomial");
    std::map<Rational, long> found;
    PolyQ f = f_in.leading().inverse() * f_in;
    // Yun: f = prod g_i^i with g_i squarefree and pairwise coprime
    PolyQ a = poly_gcd(f, f.derivative());
    PolyQ b = poly_divmod(f, a).first;
    PolyQ c = poly_divmod(f.derivative(), a).first;
    PolyQ d = c - b.derivative();
    long i = 1;
    PolyQ cofactor(Rational(1));
    while (b.degree() > 0) {
        const PolyQ g = poly_gcd(b, d);
        PolyQ rest = g;
        if (g.degree() > 0) {
            if (rest.coeff(0).is_zero()) {
                found[Rational(0)] += i;
                rest = poly_divmod(rest, PolyQ::x()).first;
            }
            if (rest.degree() > 0) {
                for (const auto& r : simple_rational_roots(rest)) {
                    found[r] += i;
                    rest = poly_divmod(rest, PolyQ::from_coeffs({-r, Rational(1)})).first;
                }
            }
            for (long k = 0; k < i; ++k) cofactor = cofactor * rest;
        }
        b = poly_divmod(b, g).first;
        c = poly_divmod(d, g).first;
        d = c - b.derivative();
        ++i;
    }
    std::vector<SingularPoint> pts;
    for (const auto& [r, m] : found) pts.push_back({r, m});
    return {pts, cofactor};
}

SingularityProfile singularity_profile(const WeylQ& P) {
    if (P.is_zero()) throw std::invalid_argument("singularity_profile of the zero operator");
    if (!P.is_polynomial()) throw NotLocalizable("singularity_profile needs polynomial coefficients");
    SingularityProfile prof;
    const PolyQ ad = P.leading();
    prof.deg_ad = ad.degree();
    prof.dhat = P.max_degree();
    prof.nu_inf = prof.dhat - prof.deg_ad;
    if (prof.deg_ad > 0) {
        auto [pts, cofactor] = rational_roots(ad);
        if (cofactor.degree() > 0)
            throw FieldExtensionRequired("leading coefficient " + ad.to_string() + " has the irreducible factor " +
                                         cofactor.to_string() + " over Q");
        prof.points = std::move(pts);
    }
    return prof;
}

}  // namespace microloc
