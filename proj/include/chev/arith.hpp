#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chev/errors.hpp"

namespace chev {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);
Integer parse_integer(const std::string& s);
Rational parse_rational(const std::string& s);

// Convert to a machine integer; throws InputError when out of range.
long to_long(const Integer& n);

struct PrimalityResult {
  bool prime = false;
  // false only when |n| >= 2^64 and the answer comes from a BPSW-style test
  bool proven = true;
};

PrimalityResult primality(const Integer& n);
inline bool is_prime(const Integer& n) { return primality(n).prime; }

struct PrimePower {
  Integer prime;
  unsigned long exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  Integer value = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing
  bool probabilistic = false;

  Integer product() const;
};

// effort_bound caps the number of Pollard rho iterations spent on each
// composite cofactor left after trial division to 10^5.
Factorization factorize(const Integer& n, unsigned long effort_bound = 2000000);

bool is_squarefree(const Integer& n, unsigned long effort_bound = 2000000);

int kronecker(const Integer& a, const Integer& n);

// Smallest x in [0, p) with x^2 = a (mod p), or nullopt.
std::optional<Integer> sqrt_mod(const Integer& a, const Integer& p);

Integer isqrt(const Integer& n);
bool is_square(const Integer& n);
Integer pow(const Integer& base, unsigned long exponent);

// Continued fraction of (1+sqrt(D))/2 when D = 1 (mod 4), otherwise of sqrt(D).
struct ContinuedFraction {
  Integer radicand;
  Integer p0;  // expansion of (p0 + sqrt(radicand)) / q0
  Integer q0;
  Integer a0;
  std::vector<Integer> period;      // partial quotients a_1 .. a_l
  std::vector<Integer> pqa_p;       // P_0 .. P_l
  std::vector<Integer> pqa_q;       // Q_0 .. Q_l
  std::vector<std::pair<Integer, Integer>> convergents;  // (p_k, q_k), k = 0 .. l-1
  std::size_t period_length() const { return period.size(); }
};

ContinuedFraction cont_frac_quadratic(const Integer& D);

}  // namespace chev
