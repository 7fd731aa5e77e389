#include <random>

#include "chev/arith.hpp"
#include "doctest.h"

using namespace chev;

namespace {

bool trial_division_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int residue_symbol_bruteforce(long a, long p) {
  long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (long x = 1; x < p; ++x)
    if (x * x % p == r) return 1;
  return -1;
}

}  // namespace

TEST_CASE("is_prime examples") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK(is_prime(-7));
  CHECK(trial_division_prime(2147483647ULL));
  CHECK(is_prime(Integer("2147483647")));
}

TEST_CASE("is_prime agrees with trial division") {
  for (unsigned long long n = 0; n < 20000; ++n) CHECK(is_prime(Integer(static_cast<unsigned long>(n))) == trial_division_prime(n));
  // strong pseudoprimes to several small bases
  CHECK_FALSE(is_prime(Integer("3215031751")));
  CHECK_FALSE(is_prime(Integer("3825123056546413051")));
  CHECK(is_prime(Integer("18446744073709551557")));  // largest prime below 2^64
  auto r = primality(Integer("170141183460469231731687303715884105727"));
  CHECK(r.prime);
  CHECK_FALSE(r.proven);
}

TEST_CASE("factorize examples") {
  CHECK(factorize(1).factors.empty());
  auto f = factorize(360);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0] == PrimePower{2, 3});
  CHECK(f.factors[1] == PrimePower{3, 2});
  CHECK(f.factors[2] == PrimePower{5, 1});
  auto g = factorize(10403);
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0] == PrimePower{101, 1});
  CHECK(g.factors[1] == PrimePower{103, 1});
  CHECK_THROWS_AS(factorize(0), InputError);
}

TEST_CASE("factorize reassembles random inputs up to 10^12") {
  std::mt19937_64 rng(20261014);
  std::uniform_int_distribution<unsigned long> dist(1, 1000000000000UL);
  for (int trial = 0; trial < 300; ++trial) {
    Integer n(dist(rng));
    auto f = factorize(n);
    CHECK(f.product() == n);
    for (std::size_t k = 0; k < f.factors.size(); ++k) {
      CHECK(is_prime(f.factors[k].prime));
      if (k > 0) CHECK(f.factors[k - 1].prime < f.factors[k].prime);
    }
  }
  // two large primes force the rho stage
  Integer semi = Integer("1000003") * Integer("1000033");
  auto f = factorize(semi);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 1000003);
}

TEST_CASE("factorize reports exhausted effort") {
  Integer semi = Integer("1000000007") * Integer("1000000009");
  CHECK_THROWS_AS(factorize(semi, 5), EffortError);
}

TEST_CASE("kronecker examples and exhaustive agreement") {
  CHECK(kronecker(-4, 5) == 1);
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(12, 3) == 0);
  for (long p = 3; p <= 97; p += 2) {
    if (!trial_division_prime(static_cast<unsigned long long>(p))) continue;
    for (long a = -50; a <= 50; ++a) CHECK(kronecker(a, p) == residue_symbol_bruteforce(a, p));
  }
  // conventions at 2: (a|2) = 0 for even a, else +1 iff a = +-1 mod 8
  CHECK(kronecker(17, 2) == 1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(6, 2) == 0);
  CHECK(kronecker(-3, -1) == -1);
  CHECK(kronecker(1, 0) == 1);
}

TEST_CASE("sqrt_mod") {
  CHECK(*sqrt_mod(1, 7) == 1);
  CHECK(*sqrt_mod(2, 7) == 3);
  CHECK_FALSE(sqrt_mod(3, 7).has_value());
  CHECK_THROWS_AS(sqrt_mod(2, 9), InputError);
  for (long p : {3L, 5L, 13L, 17L, 41L, 97L, 257L, 65537L}) {
    for (long a = -30; a <= 30; ++a) {
      auto r = sqrt_mod(a, p);
      int sym = kronecker(a, p);
      if (sym == -1) {
        CHECK_FALSE(r.has_value());
      } else {
        REQUIRE(r.has_value());
        Integer lhs = (*r * *r - a) % p;
        CHECK(lhs == 0);
        CHECK(*r <= p - *r);
      }
    }
  }
}

TEST_CASE("continued fractions of quadratic irrationals") {
  auto cf8 = cont_frac_quadratic(8);
  CHECK(cf8.a0 == 2);
  REQUIRE(cf8.period_length() == 2);
  CHECK(cf8.period[0] == 1);
  CHECK(cf8.period[1] == 4);

  auto cf2 = cont_frac_quadratic(2);
  CHECK(cf2.a0 == 1);
  REQUIRE(cf2.period_length() == 1);
  CHECK(cf2.period[0] == 2);

  auto cf5 = cont_frac_quadratic(5);
  CHECK(cf5.a0 == 1);
  REQUIRE(cf5.period_length() == 1);
  CHECK(cf5.period[0] == 1);

  CHECK_THROWS_AS(cont_frac_quadratic(9), InputError);
  CHECK_THROWS_AS(cont_frac_quadratic(0), InputError);
}

TEST_CASE("convergents satisfy the Pell-type bound at the period end") {
  for (long D = 2; D < 400; ++D) {
    if (is_square(D)) continue;
    auto cf = cont_frac_quadratic(D);
    REQUIRE(cf.convergents.size() == cf.period_length());
    Integer bound = 2 * isqrt(D) + 2;
    for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
      const auto& [p, q] = cf.convergents[k];
      // recurrence p_k = a_k p_{k-1} + p_{k-2}
      if (k >= 2) CHECK(p == cf.period[k - 1] * cf.convergents[k - 1].first + cf.convergents[k - 2].first);
      Integer val = (D % 4 == 1) ? Integer(p * p - p * q + q * q * (1 - D) / 4) : Integer(p * p - D * q * q);
      CHECK(abs(val) <= bound);
    }
    const auto& [p, q] = cf.convergents.back();
    Integer last = (D % 4 == 1) ? Integer(p * p - p * q + q * q * (1 - D) / 4) : Integer(p * p - D * q * q);
    CHECK(abs(last) == 1);
  }
}
