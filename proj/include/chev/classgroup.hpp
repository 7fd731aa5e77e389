#pragma once

// Binary quadratic forms, ordinary and narrow class groups, S-class groups
// and their Galois-fixed part.

#include <map>
#include <string>
#include <vector>

#include "chev/abelian.hpp"
#include "chev/ideal.hpp"

namespace chev {

struct QuadForm {
  Integer a, b, c;
  Integer disc() const { return b * b - 4 * a * c; }
  std::string to_string() const;
  bool operator==(const QuadForm&) const = default;
  bool operator<(const QuadForm& o) const;
};

QuadForm principal_form(const Integer& D);
QuadForm form_of(const QuadField& K, const Ideal& primitive);  // (a, b, (b^2 - D)/4a)
QuadForm inverse_form(const QuadForm& f);                       // (a, -b, c)
bool is_reduced(const QuadForm& f);
// The unique reduced form for D < 0; some reduced form on the cycle for D > 0.
QuadForm reduce(const QuadForm& f, std::size_t max_steps = 1000000);
// rho step for indefinite forms.
QuadForm rho(const QuadForm& f);
// D < 0: the reduced form; D > 0: the least form (in (a, b, c) order) on its proper cycle.
QuadForm canonical(const QuadForm& f, std::size_t max_steps = 1000000);
// Composition followed by canonicalization; DiscriminantMismatch on unequal discriminants.
QuadForm compose(const QuadForm& f, const QuadForm& g);
// All reduced forms; for D < 0 exactly one per class.
std::vector<QuadForm> reduced_forms(const Integer& D);

class ClassGroup {
 public:
  ClassGroup() = default;
  const QuadField& field() const { return K_; }
  bool narrow() const { return narrow_; }
  const FinAbGroup& structure() const { return structure_; }
  Integer order() const { return structure_.order(); }
  // Canonical representative of each class; the first is the identity.
  const std::vector<QuadForm>& classes() const { return classes_; }
  // Forms whose classes generate the cyclic factors of structure().
  const std::vector<QuadForm>& generator_forms() const { return generator_forms_; }

  // Exponent vector in the cyclic decomposition of structure().
  IntVector dlog(const QuadForm& f) const;
  IntVector dlog(const Ideal& I) const;  // ordinary group only
  QuadForm multiply(const QuadForm& f, const QuadForm& g) const;
  QuadForm class_of(const QuadForm& f) const;

  friend ClassGroup class_group(const QuadField& K, std::size_t max_steps);
  friend ClassGroup narrow_class_group(const QuadField& K, std::size_t max_steps);

 private:
  QuadField K_;
  bool narrow_ = false;
  std::size_t max_steps_ = 1000000;
  FinAbGroup structure_;
  std::vector<QuadForm> classes_;
  std::vector<QuadForm> generator_forms_;
  std::map<QuadForm, IntVector> greedy_;  // canonical form -> greedy coordinates
  Subquotient greedy_quotient_;           // Z^r / greedy relations
};

// Ordinary class group: ideal classes, with forms (a, b, c) standing for
// [a, (b + sqrt D)/2] (a > 0) and equivalence by ideal reduction.
ClassGroup class_group(const QuadField& K, std::size_t max_steps = 1000000);
// Classes of primitive forms under proper equivalence.
ClassGroup narrow_class_group(const QuadField& K, std::size_t max_steps = 1000000);

// Class of a prime above p in the ordinary group (zero vector when p is inert).
IntVector prime_class(const ClassGroup& C, const Integer& p);

struct SClassGroup {
  ClassGroup base;
  SSet S;
  FinAbGroup structure;
  std::vector<IntVector> prime_classes;  // one per finite prime of S
  Subquotient quotient;                  // base coordinates modulo the prime classes
  Integer order() const { return structure.order(); }
};

SClassGroup s_class_group(const QuadField& K, const SSet& S, std::size_t max_steps = 1000000);

// Fixed points of the Galois action (inversion): the 2-torsion.
FinAbGroup ambiguous_subgroup(const SClassGroup& C);

}  // namespace chev
