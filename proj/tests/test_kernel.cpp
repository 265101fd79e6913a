#include "doctest.h"

#include "microloc/eisenstein.hpp"
#include "microloc/laurent.hpp"
#include "microloc/rational.hpp"
#include "microloc/series.hpp"
#include "support.hpp"

using namespace microloc;
using testsupport::rand_eisenstein;
using testsupport::rand_int;
using testsupport::rand_nonzero_rational;
using testsupport::rand_rational;

using PS = PowerSeriesTrunc<Rational>;
using LS = LaurentScalarTrunc<Rational>;

TEST_CASE("rational normal form") {
    Rational a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK(Rational(1, 3).to_string() == "1/3");
    CHECK(padic_valuation(Rational(9, 4), 3) == 2);
    CHECK(padic_valuation(Rational(9, 4), 2) == -2);
    CHECK(falling(-1, 3) == Rational(-6));
    CHECK(binomial(5, 2) == Rational(10));
}

TEST_CASE("rational field axioms") {
    for (int n = 0; n < 300; ++n) {
        const Rational a = rand_rational(), b = rand_rational(), c = rand_rational();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
    }
}

TEST_CASE("eisenstein valuation examples") {
    const auto pi3 = EisensteinScalar::pi(3);
    CHECK(eisenstein_valuation(pi3) == Valuation(Rational(1, 2)));
    CHECK(eisenstein_valuation(pi3 + EisensteinScalar(3)) == Valuation(Rational(1, 2)));
    CHECK(eisenstein_valuation(EisensteinScalar(3, {}), 3).is_infinite());
    CHECK(pi3 * pi3 == EisensteinScalar(Rational(-3)));
    const auto pi5 = EisensteinScalar::pi(5);
    CHECK(pi5.pow(4) == EisensteinScalar(Rational(-5)));
    CHECK(eisenstein_valuation(pi5.pow(3)) == Valuation(Rational(3, 4)));
    CHECK(eisenstein_valuation(EisensteinScalar::pi(2)) == Valuation(Rational(1)));
}

TEST_CASE("eisenstein field axioms") {
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
        for (int n = 0; n < 100; ++n) {
            const auto a = rand_eisenstein(p), b = rand_eisenstein(p), c = rand_eisenstein(p);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == EisensteinScalar(Rational(1)));
            CHECK(eisenstein_valuation(a * b, p) == eisenstein_valuation(a, p) + eisenstein_valuation(b, p));
        }
    }
}

TEST_CASE("ultrametric inequality on random pairs") {
    int equal_cases = 0;
    for (int n = 0; n < 500; ++n) {
        const unsigned long p = std::array<unsigned long, 3>{2, 3, 5}[static_cast<std::size_t>(n % 3)];
        auto x = rand_eisenstein(p);
        auto y = rand_eisenstein(p);
        // scale by powers of p to spread the valuations
        x = x * EisensteinScalar(Rational(static_cast<long>(p))).pow(rand_int(-2, 2));
        const Valuation vx = eisenstein_valuation(x, p), vy = eisenstein_valuation(y, p);
        const Valuation vs = eisenstein_valuation(x + y, p);
        CHECK(vs >= min(vx, vy));
        if (!(vx == vy)) {
            CHECK(vs == min(vx, vy));
            ++equal_cases;
        }
    }
    CHECK(equal_cases > 100);
}

TEST_CASE("series arithmetic examples") {
    const PS a(Var::z, {Rational(1), Rational(1)}, 3);
    const PS b(Var::z, {Rational(1), Rational(-1)}, 3);
    const PS prod = series_arith(a, b, SeriesOp::mul);
    CHECK(prod.precision() == 3);
    CHECK(prod.agrees_with(PS(Var::z, {Rational(1), Rational(0), Rational(-1)}, 3)));

    const PS d = series_arith(PS(Var::z, {Rational(1), Rational(2), Rational(3)}, 3), PS(), SeriesOp::derive);
    CHECK(d.precision() == 2);
    CHECK(d.coeffs() == std::vector<Rational>{Rational(2), Rational(6)});

    const PS c(Var::z, {Rational(1), Rational(1)}, 2);
    const PS sq = c * c;
    CHECK(sq.precision() == 2);
    CHECK(sq.coeffs() == std::vector<Rational>{Rational(1), Rational(2)});
    CHECK_THROWS_AS(sq[2], PrecisionExhausted);

    CHECK_THROWS_AS(PS(Var::z, 3) + PS(Var::t, 3), VariableMismatch);
}

TEST_CASE("series inverse") {
    const PS inv = series_invert(PS(Var::z, {Rational(1), Rational(-1)}, 3));
    CHECK(inv.coeffs() == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
    CHECK(series_invert(PS::constant(Var::z, Rational(2), 4)).coeffs() == std::vector<Rational>{Rational(1, 2)});
    CHECK_THROWS_AS(series_invert(PS(Var::z, {Rational(0), Rational(1)}, 3)), NotAUnit);

    for (int n = 0; n < 500; ++n) {
        const int N = static_cast<int>(rand_int(1, 10));
        std::vector<Rational> c{rand_nonzero_rational()};
        for (int i = 1; i < N; ++i) c.push_back(rand_rational());
        const PS a(Var::z, c, N);
        const PS one = a * series_invert(a);
        CHECK(one.precision() == N);
        CHECK(one.agrees_with(PS::constant(Var::z, Rational(1), N)));
    }
}

TEST_CASE("series product precision uses orders") {
    // z^2 known mod z^6 times a unit known mod z^3: known mod z^5
    const PS a = PS::monomial(Var::z, 2, Rational(1), 6);
    const PS b(Var::z, {Rational(1), Rational(1)}, 3);
    CHECK((a * b).precision() == 5);
    CHECK((a * b)[3] == Rational(1));
}

TEST_CASE("laurent arithmetic examples") {
    // eta - 1 with three known coefficients: eta^1, eta^0, eta^-1
    const LS a(-2, {Rational(0), Rational(-1), Rational(1)});
    CHECK(a.top() == 1);
    const LS inv = laurent_arith(a, a, LaurentOp::invert);
    CHECK(inv.top() == -1);
    CHECK(inv.depth() == 3);
    CHECK(inv.coeff(-1) == Rational(1));
    CHECK(inv.coeff(-2) == Rational(1));
    CHECK(inv.coeff(-3) == Rational(1));
    CHECK(inv.to_string() == "eta^-1 + eta^-2 + eta^-3");

    const LS e = LS::monomial(-1, Rational(1), -10);
    const LS d = laurent_arith(e, e, LaurentOp::d_eta_inv);
    CHECK(d.top() == 0);
    CHECK(d.coeff(0) == Rational(1));
    CHECK(d.coeff(-5) == Rational(0));

    const LS p = LS::monomial(1, Rational(1), -10) + LS::constant(Rational(1), 10);
    const LS m = LS::monomial(1, Rational(1), -10) - LS::constant(Rational(1), 10);
    const LS prod = laurent_arith(p, m, LaurentOp::mul);
    CHECK(prod.to_string() == "eta^2 - 1");
    CHECK(prod.floor() == -9);

    CHECK_THROWS_AS(LS(-3).inverse(), ZeroDivisor);
}

TEST_CASE("laurent inverse round trip") {
    for (int n = 0; n < 300; ++n) {
        const long depth = rand_int(1, 8);
        const long top = rand_int(-3, 3);
        std::vector<Rational> c;
        for (long i = 0; i + 1 < depth; ++i) c.push_back(rand_rational());
        c.push_back(rand_nonzero_rational());
        const LS a(top - depth, c);
        const LS prod = a * a.inverse();
        CHECK(prod.top() == 0);
        CHECK(prod.depth() == depth);
        CHECK(prod.agrees_with(LS::constant(Rational(1), depth)));
    }
}

TEST_CASE("laurent derivation satisfies leibniz") {
    for (int n = 0; n < 100; ++n) {
        std::vector<Rational> ca, cb;
        for (int i = 0; i < 6; ++i) {
            ca.push_back(rand_rational());
            cb.push_back(rand_rational());
        }
        const LS a(-4, ca), b(-3, cb);
        const LS lhs = (a * b).d_eta_inv();
        const LS rhs = a.d_eta_inv() * b + a * b.d_eta_inv();
        CHECK(lhs.agrees_with(rhs));
    }
}
