#pragma once

// Finite groups stored as multiplication tables, and decomposition/inertia
// towers G >= G_w >= I_w.

#include <memory>
#include <string>
#include <vector>

#include "chev/abelian.hpp"

namespace chev {

// Sorted list of element indices.
using Subset = std::vector<int>;

class FiniteGroup {
 public:
  FiniteGroup() = default;
  // Element 0 must be the identity. Associativity and inverses are checked.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels = {});

  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);  // order 2n
  static FiniteGroup quaternion();    // order 8
  static FiniteGroup dicyclic(int n);  // order 4n
  // Elements a^k b^j (0 <= k < m, j in {0,1}) with b a b^-1 = a^r and b^2 = a^s.
  static FiniteGroup metacyclic(int m, int r, int s);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  // Closure of permutations of {0..degree-1}.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators);
  // "z6", "c6", "d4" (order 8), "s3", "q8", "a4", "dic3", products "z2xz2".
  static FiniteGroup parse(const std::string& spec);

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  const std::string& label(int a) const { return labels_[a]; }
  int element_order(int a) const;
  bool is_abelian() const;
  bool is_cyclic() const;

  Subset all() const;
  Subset generated_by(const std::vector<int>& gens) const;
  // A short generating set, chosen greedily by index.
  std::vector<int> generators() const;
  Subset commutator_subgroup() const;
  bool is_subgroup(const Subset& h) const;
  bool is_normal(const Subset& h) const;
  Subset conjugate(const Subset& h, int g) const;
  std::vector<Subset> subgroups() const;  // all, ordered by size then lexicographically

  // The subgroup h as a group of its own; embedding[k] is the element of
  // this group corresponding to element k of the result.
  FiniteGroup subgroup(const Subset& h, std::vector<int>* embedding) const;
  // this / n; projection[g] is the coset of g.
  FiniteGroup quotient(const Subset& n, std::vector<int>* projection) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
};

FinAbGroup abelianization(const FiniteGroup& g);
Integer ab_m_torsion_order(const FiniteGroup& g, const Integer& m);

struct NamedGroup {
  std::string name;
  std::shared_ptr<const FiniteGroup> group;
};

// One representative of every isomorphism type of order <= 12.
std::vector<NamedGroup> small_group_library();

class GTower {
 public:
  // Throws InputError(BadSpec) when the subsets are not nested subgroups with
  // I_w normal in G_w, and InputError(NotCyclic) when G_w / I_w is not cyclic.
  GTower(std::shared_ptr<const FiniteGroup> g, Subset gw, Subset iw);

  const FiniteGroup& group() const { return *g_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return g_; }
  const Subset& gw() const { return gw_; }
  const Subset& iw() const { return iw_; }

  std::shared_ptr<const FiniteGroup> decomposition() const { return dec_; }
  const std::vector<int>& decomposition_embedding() const { return dec_embed_; }  // G_w index -> G index
  std::shared_ptr<const FiniteGroup> inertia() const { return in_; }
  const std::vector<int>& inertia_embedding() const { return in_embed_; }  // I_w index -> G_w index
  const Subset& inertia_in_decomposition() const { return iw_local_; }
  std::shared_ptr<const FiniteGroup> residue() const { return res_; }
  const std::vector<int>& residue_projection() const { return res_proj_; }  // G_w index -> G(w) index

  int e() const { return static_cast<int>(iw_.size()); }
  int f() const { return static_cast<int>(gw_.size() / iw_.size()); }
  int index() const { return g_->order() / static_cast<int>(gw_.size()); }
  std::string describe() const;

 private:
  std::shared_ptr<const FiniteGroup> g_;
  Subset gw_, iw_;
  std::shared_ptr<const FiniteGroup> dec_, in_, res_;
  std::vector<int> dec_embed_, in_embed_, res_proj_;
  Subset iw_local_;
};

// Subgroup syntax: "all", "1", "zN" (first cyclic subgroup of order N),
// "order:N" (first subgroup of order N), "gens:a.b.c" (element indices),
// "derived" (commutator subgroup). Candidates are restricted to subgroups of
// `within` when it is given.
Subset parse_subgroup(const FiniteGroup& g, const std::string& spec, const Subset& within = {});
// Tower syntax: comma separated "w=<subgroup>" and "i=<subgroup>". A missing
// w means the whole group; the inertia spec is resolved inside G_w.
GTower parse_tower(std::shared_ptr<const FiniteGroup> g, const std::string& spec);

// Every (G, G_w, I_w) with G_w / I_w cyclic, up to conjugation in G.
std::vector<GTower> all_towers(std::shared_ptr<const FiniteGroup> g);

}  // namespace chev
