// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace brank {

/// Arbitrary-precision rational, always canonical (gcd = 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

enum class Field { rational, float64 };

/// Malformed input data (files, word strings, JSON). Maps to CLI exit code 65.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
constexpr Field field_of() {
    return is_exact_v<T> ? Field::rational : Field::float64;
}

std::string_view field_name(Field f);
Field parse_field(std::string_view name);

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "a", "-a/b", and decimal literals such as "0.25".
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <class T>
T from_int(long v) {
    if constexpr (is_exact_v<T>) {
        return Rational(v);
    } else {
        return static_cast<double>(v);
    }
}

}  // namespace brank
