#pragma once

// Integral G-modules and their low-degree cohomology, computed as
// subquotients of integer lattices. Also the norm-torus character lattice
// Z[G]/Z.N and the local checks attached to a decomposition tower.

#include <memory>
#include <vector>

#include "chev/abelian.hpp"
#include "chev/group.hpp"

namespace chev {

class GModule {
 public:
  GModule() = default;
  // One matrix per group element (acting on the generators of `underlying`).
  // Checks that each matrix preserves the relations and that the
  // assignment is a homomorphism modulo relations.
  GModule(std::shared_ptr<const FiniteGroup> g, FinAbPresentation underlying, std::vector<IntMatrix> action);
  // Extends generator images multiplicatively, then validates.
  static GModule from_generators(std::shared_ptr<const FiniteGroup> g, FinAbPresentation underlying,
                                 const std::vector<int>& gens, const std::vector<IntMatrix>& images);
  static GModule trivial(std::shared_ptr<const FiniteGroup> g, FinAbPresentation underlying);
  static GModule regular(std::shared_ptr<const FiniteGroup> g);  // Z[G], basis e_g
  // Permutation module Z[G/H] on left cosets.
  static GModule permutation(std::shared_ptr<const FiniteGroup> g, const Subset& h);

  const FiniteGroup& group() const { return *g_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return g_; }
  const FinAbPresentation& underlying() const { return m_; }
  const Lattice& relations() const { return rel_; }
  std::size_t rank() const { return m_.generators; }
  const IntMatrix& action(int g) const { return act_[static_cast<std::size_t>(g)]; }
  FinAbGroup structure() const { return chev::structure(m_); }

  // Restriction along the embedding of a subgroup (see FiniteGroup::subgroup).
  GModule restrict_to(std::shared_ptr<const FiniteGroup> h, const std::vector<int>& embedding) const;
  // Module of a quotient group through which the action factors; throws
  // InputError(BadSpec) if the kernel of the projection acts nontrivially.
  GModule descend(std::shared_ptr<const FiniteGroup> q, const std::vector<int>& projection) const;
  // M / sub for a G-stable lattice sub.
  GModule quotient_by(const Lattice& sub) const;
  // G-stable sublattice of a module without relations, in the lattice basis.
  GModule sublattice(const Lattice& sub) const;

 private:
  std::shared_ptr<const FiniteGroup> g_;
  FinAbPresentation m_;
  Lattice rel_;
  std::vector<IntMatrix> act_;
};

GModule direct_sum(const GModule& a, const GModule& b);
// Z[G] (x) Y with g acting diagonally.
GModule tensor_with_regular(const GModule& y);
// Ind_H^G M for an H-module M, H given by its embedding into G.
GModule induced(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& embedding, const GModule& m);

IntMatrix norm_matrix(const GModule& m);

struct InvariantsAndNorm {
  Subquotient fixed;  // M^G inside the ambient of M
  FinAbGroup fixed_group;
  AbHom norm;
};

InvariantsAndNorm invariants_and_norm(const GModule& m);
Subquotient invariants(const GModule& m);
Subquotient coinvariants(const GModule& m);
Subquotient tate_h0(const GModule& m);       // M^G / N M
Subquotient tate_h_minus1(const GModule& m); // ker N / I_G M
// Crossed homomorphisms modulo principal ones; ambient Z^{rank * |G|} with
// block k holding f(element k).
Subquotient h1(const GModule& m);
// ker N / (sigma - 1) M for a generator sigma; InputError(NotCyclic) otherwise.
Subquotient h1_cyclic(const GModule& m);
// [Ĥ⁰] / [H¹]; NotCyclic for noncyclic G, MathError(InfiniteCohomology) if
// either group is infinite.
Rational herbrand_quotient(const GModule& m);

// {x in top : (op - 1) x in bottom for every op} modulo bottom.
Subquotient fixed_part(const Subquotient& s, const std::vector<IntMatrix>& ops);

struct OuterActionH1 {
  Subquotient h1;                  // H¹(I_w, M)
  std::vector<IntMatrix> action;   // cochain maps for generators of G_w
  Subquotient fixed;               // H¹(I_w, M)^{G(w)}
};

// M is a module over tower.decomposition(); the conjugation action is
// (c_g f)(x) = g f(g^-1 x g).
OuterActionH1 h1_with_outer_action(const GTower& tower, const GModule& m);

// X = Z[G] / Z.N with basis the images of e_g for g != 1.
GModule norm_torus_character_module(std::shared_ptr<const FiniteGroup> g);

struct NormTorusLattice {
  GModule x;               // over G
  GModule x_local;         // restricted to G_w
  IntMatrix nv;            // multiplication by the inertia norm
  Lattice ker_nv;
  Lattice x_inertia;       // X^{I_w}
  GModule ker_nv_module;   // over G_w
  GModule x_inertia_module;// over G_w
  std::size_t d_v = 0;     // rank of X^{G_w}
  bool nv_surjective = false;
};

NormTorusLattice norm_torus_lattice(const GTower& tower);

struct InertiaH1Report {
  FinAbGroup lhs;  // H¹(I_w, X)^{G(w)}
  FinAbGroup rhs;  // I_w / G_w'
  bool isomorphic = false;
};

struct ResidueModReport {
  Integer fixed_order;     // [(X^{I_w}/e)^{G(w)}]
  Integer expected_order;  // e^{d_v} gcd(f, e)
  FinAbGroup h1;           // H¹(G(w), X^{I_w}/e)
  FinAbGroup expected_h1;  // G(w) / e G(w)
  bool order_ok = false;
  bool iso_ok = false;
};

struct QDeltaReport {
  Rational q;            // 1 / [(G_w^ab)_e]
  Rational cross_check;  // e^{d_v} / [H¹(I_w, Ker N_v)^{G(w)}]
  FinAbGroup h1_fixed;
  std::size_t d_v = 0;
  int e = 1;
};

InertiaH1Report inertia_h1_check(const GTower& tower);
ResidueModReport residue_mod_e_check(const GTower& tower);
// Throws MathError(CrossCheckFailed) when the two routes disagree.
QDeltaReport local_factor_q_delta(const GTower& tower);

}  // namespace chev
