#pragma once

#include <concepts>
#include <string>

#include "microloc/eisenstein.hpp"
#include "microloc/rational.hpp"

namespace microloc {

/// Exact field element usable as a coefficient: Rational or EisensteinScalar.
template <class K>
concept Scalar = std::regular<K> && std::constructible_from<K, Rational> && requires(const K a, const K b) {
    { a + b } -> std::same_as<K>;
    { a - b } -> std::same_as<K>;
    { a * b } -> std::same_as<K>;
    { a / b } -> std::same_as<K>;
    { -a } -> std::same_as<K>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.inverse() } -> std::same_as<K>;
    { a.to_string() } -> std::convertible_to<std::string>;
};

static_assert(Scalar<Rational>);
static_assert(Scalar<EisensteinScalar>);

/// Formal variables appearing in series, polynomials and operators.
enum class Var { t, eta, z, s };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::t: return "t";
        case Var::eta: return "eta";
        case Var::z: return "z";
        case Var::s: return "s";
    }
    return "?";
}

}  // namespace microloc
