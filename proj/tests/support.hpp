#pragma once

#include <functional>
#include <random>
#include <vector>

#include "microloc/eisenstein.hpp"
#include "microloc/rational.hpp"

namespace testsupport {

using microloc::EisensteinScalar;
using microloc::Rational;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline long rand_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Small rational, occasionally zero.
inline Rational rand_rational(long range = 6, long den_max = 4) {
    return Rational(rand_int(-range, range), rand_int(1, den_max));
}

inline Rational rand_nonzero_rational(long range = 6, long den_max = 4) {
    Rational r;
    while (r.is_zero()) r = rand_rational(range, den_max);
    return r;
}

inline EisensteinScalar rand_eisenstein(unsigned long p, long range = 9, long den_max = 9) {
    std::vector<Rational> c;
    for (unsigned long j = 0; j + 1 < p; ++j) c.push_back(rand_int(0, 3) == 0 ? Rational() : rand_rational(range, den_max));
    return EisensteinScalar(p, std::move(c));
}

}  // namespace testsupport

#include "microloc/weyl.hpp"

namespace testsupport {

using microloc::LaurentPoly;
using microloc::Var;
using microloc::WeylOp;

template <class K>
LaurentPoly<K> rand_poly(long max_deg, const std::function<K()>& gen) {
    std::vector<K> c;
    const long deg = rand_int(0, max_deg);
    for (long k = 0; k <= deg; ++k) c.push_back(rand_int(0, 2) == 0 ? K() : gen());
    return LaurentPoly<K>::from_coeffs(std::move(c));
}

/// Random nonzero operator with order <= max_order and coefficient degree <= max_deg.
template <class K = Rational>
WeylOp<K> rand_weyl(long max_order, long max_deg, const std::function<K()>& gen, Var var = Var::t) {
    for (;;) {
        std::vector<LaurentPoly<K>> a;
        const long d = rand_int(0, max_order);
        for (long i = 0; i <= d; ++i) a.push_back(rand_poly<K>(max_deg, gen));
        WeylOp<K> P(var, std::move(a));
        if (!P.is_zero()) return P;
    }
}

inline WeylOp<Rational> rand_weyl_q(long max_order = 2, long max_deg = 2, Var var = Var::t) {
    return rand_weyl<Rational>(max_order, max_deg, [] { return rand_rational(4, 3); }, var);
}

}  // namespace testsupport
