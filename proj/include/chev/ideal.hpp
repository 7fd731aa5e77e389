#pragma once

// Integral ideals of quadratic orders of fundamental discriminant, written
// k * [a, (b + sqrt D)/2], with reduction that keeps track of the element
// relating an ideal to its reduced representative.

#include <optional>
#include <string>
#include <vector>

#include "chev/quadfield.hpp"

namespace chev {

struct Ideal {
  Integer k = 1;  // content
  Integer a = 1;  // norm of the primitive part
  Integer b = 0;  // b = D (mod 2), b^2 = D (mod 4a), normalized to (-a, a]

  Integer norm() const { return k * k * a; }
  bool is_primitive() const { return k == 1; }
  std::string to_string() const;
  bool operator==(const Ideal&) const = default;
};

// Ideal generated (over O_K) by the given algebraic integers; not all zero.
Ideal ideal_from_generators(const QuadField& K, const std::vector<KElem>& gens);
Ideal unit_ideal(const QuadField& K);
Ideal principal_ideal(const QuadField& K, const KElem& alpha);  // alpha integral, nonzero
Ideal multiply(const QuadField& K, const Ideal& x, const Ideal& y);
Ideal conjugate(const QuadField& K, const Ideal& x);
Ideal ideal_pow(const QuadField& K, const Ideal& x, unsigned long n);
bool contains(const QuadField& K, const Ideal& x, const KElem& alpha);
// Z-basis of the ideal.
std::pair<KElem, KElem> ideal_basis(const QuadField& K, const Ideal& x);

// Prime ideal [p, (b + sqrt D)/2] with the smallest b in [0, 2p); nullopt when p is inert.
std::optional<Ideal> prime_ideal(const QuadField& K, const Integer& p);

// v_P(alpha) for a prime ideal P and nonzero alpha in K.
long valuation(const QuadField& K, const Ideal& prime, const KElem& alpha);

struct Reduction {
  Ideal reduced;  // primitive, reduced
  KElem gamma;    // input = gamma * reduced
};

// A reduced ideal equivalent to the primitive part of x (content folded into gamma).
Reduction reduce(const QuadField& K, const Ideal& x, std::size_t max_steps = 1000000);
// One rho step on a primitive ideal.
Reduction rho(const QuadField& K, const Ideal& x);
bool is_reduced(const QuadField& K, const Ideal& x);

// All reduced primitive ideals (one per class for D < 0; ρ-cycles for D > 0).
std::vector<Ideal> reduced_ideals(const QuadField& K);

// Canonical representative of the class of x: the reduced ideal for D < 0,
// the smallest (a, b) on the ρ-cycle for D > 0.
Reduction canonical(const QuadField& K, const Ideal& x, std::size_t max_steps = 1000000);

// Generator of x when principal, normalized as for principal_generator.
std::optional<KElem> generator(const QuadField& K, const Ideal& x, std::size_t max_steps = 1000000);

// Exact element arithmetic helpers shared with the unit code.
KElem fundamental_unit(const QuadField& K);  // > 1; D > 0 only
int torsion_order(const QuadField& K);       // number of roots of unity
KElem torsion_generator(const QuadField& K);
// Normalization of a generator: for D < 0 the associate with u > 0, v >= 0 and
// v minimal (just u > 0 when the units are +-1 and no such associate exists); for D > 0 the positive associate with sqrt|N| <= alpha < sqrt|N| * eps.
KElem normalize_generator(const QuadField& K, const KElem& alpha);

}  // namespace chev
