#pragma once

// Exact integer linear algebra and finitely generated abelian groups.
//
// Vectors are column vectors; a matrix A acts by x -> A x. Relation
// matrices of presentations hold one relation per row.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chev/arith.hpp"

namespace chev {

using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVector>& rows);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols);
  static IntMatrix diagonal(const std::vector<Integer>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntMatrix transpose() const;
  bool is_zero() const;
  Integer determinant() const;  // Bareiss; square matrices only

  IntMatrix operator*(const IntMatrix& other) const;
  IntVector operator*(const IntVector& x) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;

  // [this | other] and [this ; other]
  IntMatrix hconcat(const IntMatrix& other) const;
  IntMatrix vconcat(const IntMatrix& other) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const Integer& k, const IntMatrix& m);

struct SmithForm {
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix D;  // diagonal with d_1 | d_2 | ... and d_i >= 0
  IntMatrix V;  // unimodular, cols x cols
};

// U * M * V == D. Pivot: smallest nonzero |entry|, ties to the lowest row
// and then the lowest column.
SmithForm smith_normal_form(const IntMatrix& m);

// Nonzero diagonal of the Smith form (the elementary divisors).
std::vector<Integer> elementary_divisors(const IntMatrix& m);

// Basis of {x : M x = 0}.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

// Some x with M x = b, or nullopt.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

// Sublattice of Z^n spanned by a finite set of vectors.
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::size_t ambient, const std::vector<IntVector>& generators);
  static Lattice full(std::size_t n);
  static Lattice zero(std::size_t n) { return Lattice(n, {}); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVector>& basis() const { return basis_; }
  IntMatrix basis_matrix() const;  // ambient x rank, columns = basis

  std::optional<IntVector> coordinates(const IntVector& x) const;
  bool contains(const IntVector& x) const { return coordinates(x).has_value(); }
  bool contains(const Lattice& other) const;
  bool operator==(const Lattice& other) const { return contains(other) && other.contains(*this); }

 private:
  std::size_t ambient_ = 0;
  std::vector<Integer> divisors_;
  IntMatrix v_;
  std::vector<IntVector> basis_;
};

Lattice lattice_sum(const Lattice& a, const Lattice& b);

// {x in Z^cols : A x in sub}
Lattice preimage(const IntMatrix& a, const Lattice& sub);

// f(L) for a lattice L in the source of f.
Lattice image_lattice(const IntMatrix& f, const Lattice& source);

// Finitely generated abelian group in invariant-factor form.
struct FinAbGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;  // each >= 2, d_1 | d_2 | ...

  static FinAbGroup trivial() { return {}; }
  static FinAbGroup cyclic(const Integer& n);
  static FinAbGroup from_orders(const std::vector<Integer>& cyclic_orders, std::size_t free_rank = 0);

  bool is_finite() const { return free_rank == 0; }
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  // Throws MathError(InfiniteCohomology) when infinite.
  Integer order() const;
  std::string to_string() const;
  bool operator==(const FinAbGroup&) const = default;
};

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

struct FinAbPresentation {
  std::size_t generators = 0;
  IntMatrix relations;  // any number of rows, `generators` columns

  FinAbPresentation() = default;
  FinAbPresentation(std::size_t gens, IntMatrix rels);
  static FinAbPresentation free(std::size_t n) { return FinAbPresentation(n, IntMatrix(0, n)); }
  static FinAbPresentation from_group(const FinAbGroup& g);

  Lattice relation_lattice() const;
};

FinAbGroup structure(const FinAbPresentation& p);

// A subquotient top/bottom of Z^n with bottom contained in top; the
// universal carrier for subgroups, quotients and cohomology groups.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(Lattice top, const std::vector<IntVector>& bottom_generators);
  Subquotient(Lattice top, const Lattice& bottom) : Subquotient(std::move(top), bottom.basis()) {}
  static Subquotient of_presentation(const FinAbPresentation& p);

  std::size_t ambient_dim() const { return top_.ambient_dim(); }
  const Lattice& top() const { return top_; }
  const Lattice& bottom() const { return bottom_; }
  const FinAbGroup& group() const { return group_; }
  FinAbPresentation presentation() const;

  bool contains(const IntVector& x) const { return top_.contains(x); }
  bool is_zero(const IntVector& x) const { return bottom_.contains(x); }

  // Coordinates of x in the cyclic decomposition matching group():
  // torsion coordinates reduced to [0, d_i), then free coordinates.
  IntVector normal_coordinates(const IntVector& x) const;
  // Ambient representative of each cyclic factor of group(), in order.
  std::vector<IntVector> factor_generators() const;
  IntVector element_from_coordinates(const IntVector& coords) const;

 private:
  Lattice top_;
  Lattice bottom_;
  FinAbGroup group_;
  std::vector<std::size_t> kept_;  // SNF positions with d != 1
  IntMatrix to_normal_;             // top coords -> SNF coords (right multiply)
  IntMatrix from_normal_;           // inverse
  std::vector<Integer> snf_diag_;   // padded with zeros to top rank
};

// Homomorphism between subquotients, given by the images (ambient vectors
// in the target) of the top basis vectors of the source.
struct SubquotientMap {
  std::shared_ptr<const Subquotient> source;
  std::shared_ptr<const Subquotient> target;
  IntMatrix on_basis;  // target ambient x source top rank

  static SubquotientMap from_ambient(std::shared_ptr<const Subquotient> src, std::shared_ptr<const Subquotient> dst,
                                     const IntMatrix& ambient);

  IntVector apply(const IntVector& x) const;  // x ambient in source top
  bool is_well_defined() const;
  // Kernel as a sublattice of the source ambient space (contains bottom).
  Lattice kernel_lattice() const;
  Subquotient kernel() const;
  Subquotient image() const;
  Subquotient cokernel() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_zero() const;
};

// f then g exact at the middle term.
bool is_exact_at(const SubquotientMap& f, const SubquotientMap& g);

struct AbHom {
  FinAbPresentation source;
  FinAbPresentation target;
  IntMatrix matrix;  // target.generators x source.generators

  // Checks that relations of the source land in relations of the target.
  AbHom(FinAbPresentation src, FinAbPresentation dst, IntMatrix m);
  AbHom compose_after(const AbHom& inner) const;  // this o inner
};

struct HomDecomposition {
  Subquotient kernel;    // in the source ambient space
  Subquotient image;     // in the target ambient space
  Subquotient cokernel;  // in the target ambient space
};

HomDecomposition hom_kernel_image_cokernel(const AbHom& f);

// [coker f] / [ker f]; MathError(InfiniteQ) when either side is infinite.
Rational q_of_hom(const AbHom& f);

FinAbGroup m_torsion(const FinAbGroup& g, const Integer& m);
FinAbGroup mod_m(const FinAbGroup& g, const Integer& m);

struct FixedSubgroup {
  FinAbGroup group;
  Subquotient witness;  // kernel of (phi - id)
};

FixedSubgroup fixed_subgroup(const FinAbPresentation& g, const AbHom& phi);

struct SixTermSequence {
  // A_m, B_m, C_m, A/m, B/m, C/m
  std::vector<std::shared_ptr<const Subquotient>> groups;
  // A_m->B_m, B_m->C_m, c: C_m->A/m, A/m->B/m, B/m->C/m
  std::vector<SubquotientMap> maps;
  bool exact = false;
  bool connecting_is_zero() const { return maps.at(2).is_zero(); }
  std::vector<FinAbGroup> structures() const;
};

// Input 0 -> A -(i)-> B -(p)-> C -> 0 is verified to be short exact;
// InputError(NotExactInput) otherwise.
SixTermSequence six_term_torsion_sequence(const AbHom& i, const AbHom& p, const Integer& m);

}  // namespace chev
