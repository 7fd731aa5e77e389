#pragma once

// Quadratic fields Q(sqrt d), their elements, places and splitting data.

#include <string>
#include <vector>

#include "chev/arith.hpp"

namespace chev {

struct QuadField {
  Integer d;  // squarefree, not 0 or 1
  Integer D;  // fundamental discriminant
  bool real() const { return D > 0; }
  bool imaginary() const { return D < 0; }
  // 0 or 1 with D = delta (mod 4); the ring of integers is Z[(delta + sqrt D)/2].
  int delta() const { return D % 4 == 0 ? 0 : 1; }
  std::string name() const;
  bool operator==(const QuadField& o) const { return d == o.d; }
};

QuadField make_field(const Integer& d, unsigned long effort_bound = 2000000);

// Squarefree d with 1 < |D| <= limit, ordered by |D| then sign (negative first).
std::vector<Integer> fundamental_radicands(unsigned long limit, bool negative = true, bool positive = true);

// a + b sqrt(D) with rational a, b.
class KElem {
 public:
  KElem() = default;
  KElem(Rational a, Rational b, Integer D) : a_(std::move(a)), b_(std::move(b)), D_(std::move(D)) {
    a_.canonicalize();
    b_.canonicalize();
  }
  static KElem rational(const QuadField& K, const Rational& x) { return KElem(x, 0, K.D); }
  // (u + v sqrt D) / 2
  static KElem from_uv(const QuadField& K, const Integer& u, const Integer& v);
  static KElem omega(const QuadField& K);  // (delta + sqrt D) / 2
  static KElem one(const QuadField& K) { return rational(K, 1); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& disc() const { return D_; }

  KElem operator+(const KElem& o) const;
  KElem operator-(const KElem& o) const;
  KElem operator-() const { return KElem(-a_, -b_, D_); }
  KElem operator*(const KElem& o) const;
  KElem operator/(const KElem& o) const;
  KElem pow(long n) const;
  bool operator==(const KElem& o) const { return a_ == o.a_ && b_ == o.b_ && D_ == o.D_; }

  KElem conj() const { return KElem(a_, -b_, D_); }
  Rational norm() const { return a_ * a_ - b_ * b_ * D_; }
  Rational trace() const { return 2 * a_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  bool is_integral() const;
  // Coordinates (x, y) with value x + y omega; integral iff both integers.
  std::pair<Rational, Rational> omega_coordinates() const;
  // u, v with value (u + v sqrt D)/2; requires 2a, 2b integral.
  std::pair<Integer, Integer> uv() const;
  // Sign of the embedding with sqrt D > 0; real fields only.
  int real_sign() const;
  // |this| compared with |o| under that embedding: -1, 0, +1.
  int compare_abs(const KElem& o) const;
  std::string to_string() const;

 private:
  Rational a_, b_;
  Integer D_;
};

enum class SplitKind { Split, Inert, Ramified };
const char* split_kind_name(SplitKind k);

// A rational place: a prime p, or infinity (p == 0).
struct Place {
  Integer p;  // 0 for infinity
  bool infinite() const { return p == 0; }
  static Place infinity() { return Place{Integer(0)}; }
  std::string to_string() const;
  bool operator==(const Place&) const = default;
};

struct SplitData {
  Place place;
  SplitKind kind = SplitKind::Split;
  int e = 1, f = 1, g = 2;
  int local_degree() const { return e * f; }
};

SplitData splitting(const QuadField& K, const Integer& p);
SplitData splitting(const QuadField& K, const Place& v);

// Prime divisors of D in increasing order.
std::vector<Integer> ramified_primes(const QuadField& K);

// Infinity together with a set of primes, kept sorted and duplicate-free.
struct SSet {
  std::vector<Integer> primes;
  SSet() = default;
  explicit SSet(std::vector<Integer> ps);
  bool contains(const Integer& p) const;
  std::size_t size() const { return primes.size() + 1; }
  std::vector<Place> places() const;  // infinity first
  std::string to_string() const;      // "inf,2,5"
  bool operator==(const SSet&) const = default;
  bool operator<(const SSet& o) const;
};

// Accepts "inf", "infty", "oo" for infinity (always added) and primes,
// separated by commas or spaces.
SSet parse_sset(const std::string& s);

struct MuNu {
  std::size_t mu = 0;
  std::size_t nu = 0;
};
MuNu mu_nu(const QuadField& K, const SSet& S);

// Smallest prime p that splits in K and is not already in S.
Integer smallest_split_prime(const QuadField& K, const SSet& S = {});

}  // namespace chev
