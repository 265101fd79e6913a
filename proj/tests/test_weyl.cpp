#include "doctest.h"

#include <map>

#include "microloc/parse.hpp"
#include "microloc/weyl.hpp"
#include "support.hpp"

using namespace microloc;
using testsupport::rand_eisenstein;
using testsupport::rand_int;
using testsupport::rand_rational;
using testsupport::rand_weyl;
using testsupport::rand_weyl_q;

using Op = WeylQ;
using OpP = WeylOp<EisensteinScalar>;

namespace {

Op op(const char* s) { return parse_operator(s); }

// Independent normal-ordering oracle: words over {x, d} rewritten with d x -> x d + 1.
using Words = std::map<std::string, Rational>;

Words to_words(const Op& P) {
    Words w;
    for (long i = 0; i <= P.order(); ++i) {
        const auto& a = P.coeff(i);
        for (long k = 0; k <= a.high() && !a.is_zero(); ++k)
            if (!a.coeff(k).is_zero()) w[std::string(static_cast<std::size_t>(k), 'x') + std::string(static_cast<std::size_t>(i), 'd')] += a.coeff(k);
    }
    return w;
}

Op from_normal_words(Words w, Var var) {
    bool changed = true;
    while (changed) {
        changed = false;
        Words next;
        for (const auto& [word, c] : w) {
            if (c.is_zero()) continue;
            const auto pos = word.find("dx");
            if (pos == std::string::npos) {
                next[word] += c;
                continue;
            }
            changed = true;
            next[word.substr(0, pos) + "xd" + word.substr(pos + 2)] += c;
            next[word.substr(0, pos) + word.substr(pos + 2)] += c;
        }
        w = std::move(next);
    }
    Op out(var);
    for (const auto& [word, c] : w) {
        const long k = static_cast<long>(std::count(word.begin(), word.end(), 'x'));
        out += Op::term(var, k, static_cast<long>(word.size()) - k, c);
    }
    return out;
}

Op oracle_mul(const Op& P, const Op& Q) {
    Words w;
    for (const auto& [a, ca] : to_words(P))
        for (const auto& [b, cb] : to_words(Q)) w[a + b] += ca * cb;
    return from_normal_words(w, P.var());
}

// Normalizes away a left power of the coordinate and a scalar factor.
Op normalize_up_to_power_and_scalar(const Op& P) {
    Op q = P.left_shift(-P.min_low());
    return q.leading().leading().inverse() * q;
}

}  // namespace

TEST_CASE("weyl product examples") {
    CHECK(weyl_mul(op("dt"), op("t")) == op("t*dt + 1"));
    CHECK(weyl_mul(op("dt^2"), op("t^2")) == op("t^2*dt^2 + 4*t*dt + 2"));
    CHECK(weyl_mul(op("t*dt"), op("t*dt")) == op("t^2*dt^2 + t*dt"));
    CHECK(op("dt*t").to_string() == "t*dt + 1");
    CHECK(op("dt*t").order() == 1);
    CHECK_THROWS_AS(weyl_mul(op("t"), op("eta")), VariableMismatch);
}

TEST_CASE("weyl product matches word rewriting") {
    for (int n = 0; n < 200; ++n) {
        const Op P = rand_weyl_q(), Q = rand_weyl_q();
        CHECK(P * Q == oracle_mul(P, Q));
    }
}

TEST_CASE("weyl associativity") {
    for (int n = 0; n < 500; ++n) {
        const Op A = rand_weyl_q(), B = rand_weyl_q(), C = rand_weyl_q();
        CHECK((A * B) * C == A * (B * C));
    }
}

TEST_CASE("fourier examples") {
    CHECK(fourier(op("dt - 1")) == op("eta - 1"));
    CHECK(fourier(op("t*dt")) == op("-eta*deta - 1"));
    CHECK(fourier(op("t^2*dt + 1")) == op("eta*deta^2 + 2*deta + 1"));
    CHECK(fourier(op("dt^2 - t")) == op("eta^2 + deta"));
    CHECK(inverse_fourier(op("eta^2 + deta")) == op("dt^2 - t"));
}

TEST_CASE("fourier is a ring homomorphism with inverse") {
    for (int n = 0; n < 200; ++n) {
        const Op P = rand_weyl_q(), Q = rand_weyl_q();
        CHECK(fourier(P * Q) == fourier(P) * fourier(Q));
        CHECK(inverse_fourier(fourier(P)) == P);
    }
}

TEST_CASE("padic fourier") {
    const unsigned long p = 3;
    const EisensteinScalar pi = EisensteinScalar::pi(p);
    const OpP P = parse_operator_padic("t*dt", p);
    // t d_t -> (-d_eta/pi)(pi eta) = -d_eta eta = -eta d_eta - 1
    CHECK(fourier_scaled(P, pi) == parse_operator_padic("-eta*deta - 1", p));
    const OpP Q = parse_operator_padic("dt - 1", p);
    CHECK(fourier_scaled(Q, pi) == parse_operator_padic("pi*eta - 1", p));
    for (int n = 0; n < 50; ++n) {
        auto gen = [p] { return rand_eisenstein(p, 3, 3); };
        const OpP A = rand_weyl<EisensteinScalar>(2, 2, gen), B = rand_weyl<EisensteinScalar>(2, 2, gen);
        CHECK(fourier_scaled(A * B, pi) == fourier_scaled(A, pi) * fourier_scaled(B, pi));
        CHECK(inverse_fourier_scaled(fourier_scaled(A, pi), pi) == A);
    }
}

TEST_CASE("translate") {
    CHECK(translate(op("(t-1)*dt - 1"), Rational(1)) == op("t*dt - 1"));
    CHECK(translate(op("t*dt"), Rational(0)) == op("t*dt"));
    CHECK(translate(op("t^2*dt"), Rational(1)) == op("(t^2 + 2*t + 1)*dt"));
    for (int n = 0; n < 100; ++n) {
        const Op P = rand_weyl_q();
        const Rational c = rand_rational();
        CHECK(translate(translate(P, c), -c) == P);
        CHECK(translate(P, c).order() == P.order());
    }
}

TEST_CASE("invert coordinate") {
    {
        const auto [k, Pt] = invert_coordinate(op("dt^2 - t"));
        CHECK(k == 1);
        CHECK(Pt.var() == Var::s);
        CHECK(Pt.to_string() == "s^5*ds^2 + 2*s^4*ds - 1");
    }
    {
        const auto [k, Pt] = invert_coordinate(op("t*dt"));
        CHECK(k == 0);
        CHECK(Pt.to_string() == "-s*ds");
    }
    {
        const auto [k, Pt] = invert_coordinate(op("dt"));
        CHECK(k == 0);
        CHECK(Pt.to_string() == "-s^2*ds");
    }
}

TEST_CASE("ramify") {
    CHECK(ramify(op("t^2*dt + 1"), 2).to_string() == "1/2*z^3*dz + 1");
    CHECK(ramify(op("t*dt - 1"), 3).to_string() == "1/3*z*dz - 1");
    for (int n = 0; n < 50; ++n) {
        const Op P = rand_weyl_q();
        CHECK(ramify(P, 1) == P);
        const long q1 = rand_int(2, 3), q2 = rand_int(2, 3);
        const Op twice = ramify(ramify(P, q1), q2);
        const Op once = ramify(P, q1 * q2);
        CHECK(normalize_up_to_power_and_scalar(twice) == normalize_up_to_power_and_scalar(once));
    }
}

TEST_CASE("singularity profile examples") {
    {
        const auto prof = singularity_profile(op("t^2*dt + 1"));
        REQUIRE(prof.points.size() == 1);
        CHECK(prof.points[0].c == Rational(0));
        CHECK(prof.points[0].multiplicity == 2);
        CHECK(prof.dhat == 2);
        CHECK(prof.nu_inf == 0);
    }
    {
        const auto prof = singularity_profile(op("dt^2 - t"));
        CHECK(prof.points.empty());
        CHECK(prof.dhat == 1);
        CHECK(prof.nu_inf == 1);
    }
    CHECK_THROWS_AS(singularity_profile(op("(t^2+1)*dt - 1")), FieldExtensionRequired);
    {
        const auto prof = singularity_profile(op("(t-1)^3*(2*t+1)*(t-1/3)^2*dt + t^9"));
        REQUIRE(prof.points.size() == 3);
        CHECK(prof.multiplicity_at(Rational(1)) == 3);
        CHECK(prof.multiplicity_at(Rational(-1, 2)) == 1);
        CHECK(prof.multiplicity_at(Rational(1, 3)) == 2);
        CHECK(prof.dhat == 9);
        CHECK(prof.nu_inf == 3);
    }
    {
        const auto prof = singularity_profile(op("t - 5"));
        REQUIRE(prof.points.size() == 1);
        CHECK(prof.points[0].c == Rational(5));
        CHECK(prof.dhat == 1);
    }
}

TEST_CASE("dimension ledger agrees with raw recomputation") {
    int checked = 0;
    for (int n = 0; n < 300; ++n) {
        // leading coefficient built from rational linear factors
        LaurentPoly<Rational> ad(rand_rational(3, 2) + Rational(7));
        const long nf = rand_int(0, 3);
        for (long k = 0; k < nf; ++k) ad = ad * LaurentPoly<Rational>::from_coeffs({-Rational(rand_int(-2, 2)), Rational(1)});
        Op P = rand_weyl_q(1, 4);
        P = P + Op::coefficient(Var::t, ad) * Op::d(Var::t).pow(static_cast<unsigned long>(P.order() + 1));
        const auto prof = singularity_profile(P);
        long raw_dhat = 0;
        for (long j = 0; j <= P.order(); ++j)
            if (!P.coeff(j).is_zero()) raw_dhat = std::max(raw_dhat, P.coeff(j).degree());
        long sum_m = 0;
        LaurentPoly<Rational> rebuilt(P.leading().leading());
        for (const auto& pt : prof.points) {
            sum_m += pt.multiplicity;
            for (long k = 0; k < pt.multiplicity; ++k)
                rebuilt = rebuilt * LaurentPoly<Rational>::from_coeffs({-pt.c, Rational(1)});
        }
        CHECK(rebuilt == P.leading());
        CHECK(raw_dhat == prof.dhat);
        CHECK(prof.dhat == sum_m + prof.nu_inf);
        CHECK(prof.nu_inf >= 0);
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("parser") {
    CHECK(op("t^2*dt + 1") == Op(Var::t, {LaurentPoly<Rational>(Rational(1)), LaurentPoly<Rational>::monomial(2, Rational(1))}));
    try {
        op("dt**t");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(op("t*eta"), ParseError);
    CHECK_THROWS_AS(op("pi*t"), ParseError);
    CHECK_THROWS_AS(op("2 t"), ParseError);
    CHECK_THROWS_AS(op("t^-1"), ParseError);
    CHECK_THROWS_AS(op("(t"), ParseError);
    CHECK_THROWS_AS(op("x"), ParseError);
    CHECK(op("-1/2*t + 3/6").to_string() == "-1/2*t + 1/2");
    CHECK(op("(dt - 1)^2") == op("dt^2 - 2*dt + 1"));
    CHECK(op("eta*deta").var() == Var::eta);
}

TEST_CASE("render round trip") {
    for (int n = 0; n < 500; ++n) {
        const Op P = rand_weyl_q(3, 3, n % 2 ? Var::t : Var::eta);
        CHECK(parse_operator(P.to_string(), P.var()) == P);
    }
    for (int n = 0; n < 100; ++n) {
        auto gen = [] { return rand_eisenstein(5, 4, 3); };
        const OpP P = rand_weyl<EisensteinScalar>(2, 2, gen);
        CHECK(parse_operator_padic(P.to_string(), 5) == P);
    }
}
