#include "microloc/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace microloc {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty input");
    const auto slash = s.find('/');
    auto parse_int = [](const std::string& part) {
        mpz_class z;
        std::string body = part;
        if (!body.empty() && body[0] == '+') body = body.substr(1);
        if (body.empty() || z.set_str(body, 10) != 0)
            throw std::invalid_argument("Rational::parse: bad integer '" + part + "'");
        return z;
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    const mpz_class den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("Rational::parse: zero denominator");
    return Rational(parse_int(s.substr(0, slash)), den);
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    mpq_class r = 1 / q_;
    return Rational(r);
}

Rational Rational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::string Rational::to_string() const { return q_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

long padic_valuation(const mpz_class& n, unsigned long p) {
    if (n == 0) throw std::domain_error("padic_valuation of zero");
    mpz_class rest;
    mpz_class prime(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

long padic_valuation(const Rational& r, unsigned long p) {
    return padic_valuation(r.num(), p) - padic_valuation(r.den(), p);
}

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Rational factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational falling(long u, unsigned long k) {
    mpz_class acc = 1;
    for (unsigned long i = 0; i < k; ++i) acc *= (u - static_cast<long>(i));
    return Rational(acc);
}

Rational binomial(long n, unsigned long k) { return falling(n, k) / factorial(k); }

}  // namespace microloc
