#pragma once

// Units and S-units of quadratic fields as modules over Gal(K/Q).

#include <optional>
#include <string>
#include <vector>

#include "chev/classgroup.hpp"
#include "chev/cohomology.hpp"

namespace chev {

struct UnitGroup {
  int torsion = 2;
  KElem zeta;                // generator of the roots of unity
  std::optional<KElem> eps;  // real fields
  int norm_eps = 1;
};

UnitGroup unit_group(const QuadField& K);

// Generator of P^m for the chosen prime P above p (see prime_ideal), or of
// (p)^m when p is inert. InputError(BadSpec) when P^m is not principal,
// EffortError(SearchBoundExceeded) when the reduction bound runs out.
KElem principal_generator(const QuadField& K, const Integer& p, unsigned long m, std::size_t max_steps = 1000000);

// Exponents of x in {+-1} x prod_{p in S} p^Z: entry 0 is the sign bit
// (0 or 1), then one exponent per finite prime of S. nullopt when x is not
// an S-unit of Q.
std::optional<IntVector> rational_s_unit_coordinates(const Rational& x, const SSet& S);

struct SPlace {
  Integer p;
  SplitKind kind;
  Ideal ideal;
  int conjugate_index;  // index of the conjugate place (itself unless split)
};

struct SUnitModule {
  QuadField K;
  SSet S;
  std::vector<SPlace> places;         // finite places of S_K, conjugates adjacent
  std::vector<KElem> generators;      // zeta, [eps], then generators of the principal lattice
  std::vector<std::string> labels;
  Lattice principal;                  // exponent vectors on places that are principal ideals
  IntMatrix valuations;               // generators x places
  std::vector<Rational> norms;        // N(generator)
  IntMatrix sigma;                    // action on generator exponents
  GModule module;                     // over Z/2, relation torsion * e_0

  std::size_t free_rank() const { return generators.size() - 1; }
  // The element with the given exponent vector.
  KElem evaluate(const IntVector& exponents) const;
};

// Effort bounds: max_steps for each ideal reduction.
SUnitModule sunit_module(const QuadField& K, const SSet& S, std::size_t max_steps = 1000000);

// Exponent vector of an S-unit in the module's generators; MathError(DiscreteLogFailure)
// if x is not an S-unit or the result does not verify.
IntVector sunit_log(const SUnitModule& M, const KElem& x);

// O_{Q,S}^* / N(O_{K,S}^*), computed on norm exponent vectors.
FinAbGroup tate_h0_units(const SUnitModule& M);
// ker N / (sigma - 1) on the module.
FinAbGroup h1_units(const SUnitModule& M);

struct HerbrandReport {
  Integer h0_order, h1_order;
  Rational quotient;
  Rational expected;  // (1/2) prod_{v in S} [K_w : Q_v]
  bool ok = false;
};

// Throws MathError(CheckFailed) on mismatch.
HerbrandReport herbrand_check(const SUnitModule& M);

}  // namespace chev
