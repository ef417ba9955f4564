#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stablepgf/errors.hpp"

namespace stablepgf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parse "num/den", integer, or decimal/scientific literals ("0.25", "-3e-2")
/// into an exact rational. Throws InputError on malformed input.
Rational parse_rational(const std::string& text);

/// Canonical form: "num" when the denominator is 1, else "num/den".
std::string rational_str(const Rational& q);

double to_double(const Rational& q);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

/// Deterministic 64-bit mix used to derive independent sub-streams from
/// (seed, stream index) pairs.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix_seed(seed, stream));
}

}  // namespace stablepgf
