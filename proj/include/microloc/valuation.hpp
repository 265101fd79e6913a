#pragma once

#include <optional>
#include <string>

#include "microloc/rational.hpp"

namespace microloc {

/// Exponent form of a p-adic absolute value, |x| = p^(-v). The zero element has v = +infinity.
class Valuation {
public:
    Valuation() = default;  // +infinity
    Valuation(Rational v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

    static Valuation infinity() { return {}; }

    bool is_infinite() const { return !v_.has_value(); }
    const Rational& value() const { return v_.value(); }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.is_infinite() || b.is_infinite()) return {};
        return a.value() + b.value();
    }
    friend Valuation operator-(const Valuation& a, const Rational& b) {
        if (a.is_infinite()) return {};
        return a.value() - b;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
        return a.value() == b.value();
    }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return a.value() < b.value();
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }

    std::string to_string() const { return is_infinite() ? "inf" : value().to_string(); }

private:
    std::optional<Rational> v_;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

}  // namespace microloc
