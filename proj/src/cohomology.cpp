#include "chev/cohomology.hpp"

#include <algorithm>
#include <map>

namespace chev {

namespace {

bool columns_in(const IntMatrix& m, const Lattice& l) {
  if (l.rank() == 0) return m.is_zero();
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!l.contains(m.column(j))) return false;
  return true;
}

// l placed in each of k consecutive blocks of Z^{n k}.
Lattice block_sum(const Lattice& l, std::size_t k) {
  const std::size_t n = l.ambient_dim();
  std::vector<IntVector> gens;
  for (std::size_t b = 0; b < k; ++b)
    for (const auto& v : l.basis()) {
      IntVector w(n * k, Integer(0));
      std::copy(v.begin(), v.end(), w.begin() + static_cast<long>(b * n));
      gens.push_back(std::move(w));
    }
  return Lattice(n * k, gens);
}

IntMatrix vstack(const std::vector<IntMatrix>& blocks, std::size_t cols) {
  IntMatrix out(0, cols);
  for (const auto& b : blocks) out = out.vconcat(b);
  return out;
}

void add_block(IntMatrix& target, std::size_t row0, std::size_t col0, const IntMatrix& block) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) target(row0 + i, col0 + j) += block(i, j);
}

std::vector<IntVector> columns_of(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

std::vector<IntVector> concat(std::vector<IntVector> a, const std::vector<IntVector>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

// ------------------------------------------------------------------- GModule

GModule::GModule(std::shared_ptr<const FiniteGroup> g, FinAbPresentation underlying, std::vector<IntMatrix> action)
    : g_(std::move(g)), m_(std::move(underlying)), act_(std::move(action)) {
  rel_ = m_.relation_lattice();
  const std::size_t n = m_.generators;
  const int order = g_->order();
  if (act_.size() != static_cast<std::size_t>(order)) throw InputError(ErrorCode::BadSpec, "need one matrix per group element");
  for (const auto& a : act_)
    if (a.rows() != n || a.cols() != n) throw InputError(ErrorCode::BadSpec, "action matrix has the wrong shape");
  const IntMatrix id = IntMatrix::identity(n);
  if (!columns_in(act_[0] - id, rel_)) throw InputError(ErrorCode::BadSpec, "identity does not act trivially");
  if (rel_.rank() > 0) {
    IntMatrix rb = rel_.basis_matrix();
    for (const auto& a : act_)
      if (!columns_in(a * rb, rel_)) throw InputError(ErrorCode::BadSpec, "action does not preserve the relations");
  }
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      if (!columns_in(act_[x] * act_[y] - act_[g_->mul(x, y)], rel_))
        throw InputError(ErrorCode::BadSpec, "action is not a homomorphism");
}

GModule GModule::from_generators(std::shared_ptr<const FiniteGroup> g, FinAbPresentation underlying,
                                 const std::vector<int>& gens, const std::vector<IntMatrix>& images) {
  if (gens.size() != images.size()) throw InputError(ErrorCode::BadSpec, "generator and image counts differ");
  if (g->generated_by(gens).size() != static_cast<std::size_t>(g->order()))
    throw InputError(ErrorCode::BadSpec, "listed elements do not generate the group");
  const std::size_t n = underlying.generators;
  std::vector<IntMatrix> act(static_cast<std::size_t>(g->order()));
  std::vector<char> done(act.size(), 0);
  act[0] = IntMatrix::identity(n);
  done[0] = 1;
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      int y = g->mul(queue[k], gens[s]);
      if (done[y]) continue;
      act[y] = act[queue[k]] * images[s];
      done[y] = 1;
      queue.push_back(y);
    }
  return GModule(std::move(g), std::move(underlying), std::move(act));
}

GModule GModule::trivial(std::shared_ptr<const FiniteGroup> g, FinAbPresentation underlying) {
  std::vector<IntMatrix> act(static_cast<std::size_t>(g->order()), IntMatrix::identity(underlying.generators));
  return GModule(std::move(g), std::move(underlying), std::move(act));
}

GModule GModule::regular(std::shared_ptr<const FiniteGroup> g) { return permutation(g, Subset{0}); }

GModule GModule::permutation(std::shared_ptr<const FiniteGroup> g, const Subset& h) {
  if (!g->is_subgroup(h)) throw InputError(ErrorCode::BadSpec, "permutation module needs a subgroup");
  const int order = g->order();
  std::vector<int> coset(order, -1);
  std::vector<int> reps;
  for (int x = 0; x < order; ++x) {
    if (coset[x] >= 0) continue;
    for (int y : h) coset[g->mul(x, y)] = static_cast<int>(reps.size());
    reps.push_back(x);
  }
  const std::size_t k = reps.size();
  std::vector<IntMatrix> act;
  for (int x = 0; x < order; ++x) {
    IntMatrix a(k, k);
    for (std::size_t c = 0; c < k; ++c) a(static_cast<std::size_t>(coset[g->mul(x, reps[c])]), c) = 1;
    act.push_back(std::move(a));
  }
  return GModule(std::move(g), FinAbPresentation::free(k), std::move(act));
}

GModule GModule::restrict_to(std::shared_ptr<const FiniteGroup> h, const std::vector<int>& embedding) const {
  std::vector<IntMatrix> act;
  for (int x : embedding) act.push_back(act_.at(static_cast<std::size_t>(x)));
  return GModule(std::move(h), m_, std::move(act));
}

GModule GModule::descend(std::shared_ptr<const FiniteGroup> q, const std::vector<int>& projection) const {
  std::vector<int> rep(static_cast<std::size_t>(q->order()), -1);
  for (int x = 0; x < g_->order(); ++x)
    if (rep[projection[x]] < 0) rep[projection[x]] = x;
  for (int x = 0; x < g_->order(); ++x)
    if (!columns_in(act_[x] - act_[rep[projection[x]]], rel_))
      throw InputError(ErrorCode::BadSpec, "kernel of the projection acts nontrivially");
  std::vector<IntMatrix> act;
  for (int r : rep) act.push_back(act_[r]);
  return GModule(std::move(q), m_, std::move(act));
}

GModule GModule::quotient_by(const Lattice& sub) const {
  Lattice all = lattice_sum(rel_, sub);
  IntMatrix rows(0, rank());
  if (all.rank() > 0) rows = all.basis_matrix().transpose();
  return GModule(g_, FinAbPresentation(rank(), rows), act_);
}

GModule GModule::sublattice(const Lattice& sub) const {
  if (rel_.rank() != 0) throw InputError(ErrorCode::BadSpec, "sublattice modules need a relation-free module");
  const std::size_t r = sub.rank();
  std::vector<IntMatrix> act;
  for (const auto& a : act_) {
    IntMatrix m(r, r);
    for (std::size_t j = 0; j < r; ++j) {
      auto c = sub.coordinates(a * sub.basis()[j]);
      if (!c) throw InputError(ErrorCode::BadSpec, "sublattice is not stable under the group");
      for (std::size_t i = 0; i < r; ++i) m(i, j) = (*c)[i];
    }
    act.push_back(std::move(m));
  }
  return GModule(g_, FinAbPresentation::free(r), std::move(act));
}

GModule direct_sum(const GModule& a, const GModule& b) {
  if (a.group_ptr() != b.group_ptr() && a.group().order() != b.group().order())
    throw InputError(ErrorCode::BadSpec, "direct sum of modules over different groups");
  const std::size_t na = a.rank(), nb = b.rank();
  const auto& ra = a.underlying().relations;
  const auto& rb = b.underlying().relations;
  IntMatrix rel(ra.rows() + rb.rows(), na + nb);
  add_block(rel, 0, 0, ra);
  add_block(rel, ra.rows(), na, rb);
  std::vector<IntMatrix> act;
  for (int x = 0; x < a.group().order(); ++x) {
    IntMatrix m(na + nb, na + nb);
    add_block(m, 0, 0, a.action(x));
    add_block(m, na, na, b.action(x));
    act.push_back(std::move(m));
  }
  return GModule(a.group_ptr(), FinAbPresentation(na + nb, rel), std::move(act));
}

GModule tensor_with_regular(const GModule& y) {
  const auto& g = y.group();
  const std::size_t n = y.rank(), k = static_cast<std::size_t>(g.order());
  const auto& ry = y.underlying().relations;
  IntMatrix rel(ry.rows() * k, n * k);
  for (std::size_t h = 0; h < k; ++h) add_block(rel, h * ry.rows(), h * n, ry);
  std::vector<IntMatrix> act;
  for (int x = 0; x < g.order(); ++x) {
    IntMatrix m(n * k, n * k);
    for (int h = 0; h < g.order(); ++h) add_block(m, static_cast<std::size_t>(g.mul(x, h)) * n, static_cast<std::size_t>(h) * n, y.action(x));
    act.push_back(std::move(m));
  }
  return GModule(y.group_ptr(), FinAbPresentation(n * k, rel), std::move(act));
}

GModule induced(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& embedding, const GModule& m) {
  Subset h(embedding.begin(), embedding.end());
  std::sort(h.begin(), h.end());
  if (!g->is_subgroup(h) || static_cast<int>(embedding.size()) != m.group().order())
    throw InputError(ErrorCode::BadSpec, "embedding does not describe a subgroup matching the module");
  std::map<int, int> local;
  for (std::size_t k = 0; k < embedding.size(); ++k) local[embedding[k]] = static_cast<int>(k);
  const int order = g->order();
  std::vector<int> coset(order, -1), reps;
  for (int x = 0; x < order; ++x) {
    if (coset[x] >= 0) continue;
    for (int y : h) coset[g->mul(x, y)] = static_cast<int>(reps.size());
    reps.push_back(x);
  }
  const std::size_t n = m.rank(), k = reps.size();
  const auto& rm = m.underlying().relations;
  IntMatrix rel(rm.rows() * k, n * k);
  for (std::size_t b = 0; b < k; ++b) add_block(rel, b * rm.rows(), b * n, rm);
  std::vector<IntMatrix> act;
  for (int x = 0; x < order; ++x) {
    IntMatrix a(n * k, n * k);
    for (std::size_t i = 0; i < k; ++i) {
      int gx = g->mul(x, reps[i]);
      std::size_t j = static_cast<std::size_t>(coset[gx]);
      int hh = g->mul(g->inv(reps[j]), gx);
      add_block(a, j * n, i * n, m.action(local.at(hh)));
    }
    act.push_back(std::move(a));
  }
  return GModule(std::move(g), FinAbPresentation(n * k, rel), std::move(act));
}

// ---------------------------------------------------------------- cohomology

IntMatrix norm_matrix(const GModule& m) {
  IntMatrix n(m.rank(), m.rank());
  for (int x = 0; x < m.group().order(); ++x) n = n + m.action(x);
  return n;
}

namespace {

std::vector<IntMatrix> augmentations(const GModule& m) {
  std::vector<IntMatrix> out;
  const IntMatrix id = IntMatrix::identity(m.rank());
  for (int s : m.group().generators()) out.push_back(m.action(s) - id);
  return out;
}

Lattice invariant_lattice(const GModule& m) {
  auto aug = augmentations(m);
  if (aug.empty()) return Lattice::full(m.rank());
  return preimage(vstack(aug, m.rank()), block_sum(m.relations(), aug.size()));
}

std::vector<IntVector> augmentation_image(const GModule& m) {
  std::vector<IntVector> gens = m.relations().basis();
  for (const auto& a : augmentations(m)) gens = concat(std::move(gens), columns_of(a));
  return gens;
}

}  // namespace

Subquotient invariants(const GModule& m) { return Subquotient(invariant_lattice(m), m.relations()); }

InvariantsAndNorm invariants_and_norm(const GModule& m) {
  Subquotient fixed = invariants(m);
  FinAbGroup g = fixed.group();
  return {std::move(fixed), std::move(g), AbHom(m.underlying(), m.underlying(), norm_matrix(m))};
}

Subquotient coinvariants(const GModule& m) { return Subquotient(Lattice::full(m.rank()), augmentation_image(m)); }

Subquotient tate_h0(const GModule& m) {
  return Subquotient(invariant_lattice(m), concat(m.relations().basis(), columns_of(norm_matrix(m))));
}

Subquotient tate_h_minus1(const GModule& m) {
  return Subquotient(preimage(norm_matrix(m), m.relations()), augmentation_image(m));
}

Subquotient h1(const GModule& m) {
  const auto& g = m.group();
  const std::size_t n = m.rank(), k = static_cast<std::size_t>(g.order());
  const auto gens = g.generators();
  const IntMatrix id = IntMatrix::identity(n);
  // f(1) = 0 and f(x s) = f(x) + x f(s) for each generator s; the latter
  // determine f on every product by induction on word length.
  const std::size_t equations = 1 + k * gens.size();
  IntMatrix e(equations * n, k * n);
  add_block(e, 0, 0, id);
  std::size_t row = n;
  for (int x = 0; x < g.order(); ++x)
    for (int s : gens) {
      add_block(e, row, static_cast<std::size_t>(g.mul(x, s)) * n, id);
      add_block(e, row, static_cast<std::size_t>(x) * n, Integer(-1) * id);
      add_block(e, row, static_cast<std::size_t>(s) * n, Integer(-1) * m.action(x));
      row += n;
    }
  Lattice cocycles = preimage(e, block_sum(m.relations(), equations));
  std::vector<IntVector> boundaries = block_sum(m.relations(), k).basis();
  for (std::size_t j = 0; j < n; ++j) {
    IntVector v(k * n, Integer(0));
    for (int x = 0; x < g.order(); ++x) {
      IntVector col = (m.action(x) - id).column(j);
      std::copy(col.begin(), col.end(), v.begin() + static_cast<long>(static_cast<std::size_t>(x) * n));
    }
    boundaries.push_back(std::move(v));
  }
  return Subquotient(std::move(cocycles), boundaries);
}

namespace {

int cyclic_generator(const FiniteGroup& g) {
  for (int x = 0; x < g.order(); ++x)
    if (g.element_order(x) == g.order()) return x;
  throw InputError(ErrorCode::NotCyclic, "group of order " + std::to_string(g.order()) + " is not cyclic");
}

}  // namespace

Subquotient h1_cyclic(const GModule& m) {
  int sigma = cyclic_generator(m.group());
  IntMatrix shift = m.action(sigma) - IntMatrix::identity(m.rank());
  return Subquotient(preimage(norm_matrix(m), m.relations()), concat(m.relations().basis(), columns_of(shift)));
}

Rational herbrand_quotient(const GModule& m) {
  (void)cyclic_generator(m.group());
  FinAbGroup h0 = tate_h0(m).group();
  FinAbGroup one = h1_cyclic(m).group();
  if (!h0.is_finite() || !one.is_finite())
    throw MathError(ErrorCode::InfiniteCohomology, "Herbrand quotient of a module with infinite cohomology");
  Rational q(h0.order(), one.order());
  q.canonicalize();
  return q;
}

Subquotient fixed_part(const Subquotient& s, const std::vector<IntMatrix>& ops) {
  const std::size_t r = s.top().rank();
  if (ops.empty() || r == 0) return s;
  IntMatrix t = s.top().basis_matrix();
  std::vector<IntMatrix> blocks;
  const IntMatrix id = IntMatrix::identity(s.ambient_dim());
  for (const auto& op : ops) blocks.push_back((op - id) * t);
  Lattice coords = preimage(vstack(blocks, r), block_sum(s.bottom(), ops.size()));
  return Subquotient(image_lattice(t, coords), s.bottom());
}

OuterActionH1 h1_with_outer_action(const GTower& tower, const GModule& m) {
  const auto& dec = *tower.decomposition();
  if (m.group().order() != dec.order()) throw InputError(ErrorCode::BadSpec, "module must live over the decomposition group");
  const auto& emb = tower.inertia_embedding();
  GModule local = m.restrict_to(tower.inertia(), emb);
  OuterActionH1 out;
  out.h1 = h1(local);
  std::map<int, int> index;
  for (std::size_t k = 0; k < emb.size(); ++k) index[emb[k]] = static_cast<int>(k);
  const std::size_t n = m.rank(), k = emb.size();
  for (int g : dec.generators()) {
    IntMatrix c(n * k, n * k);
    for (std::size_t x = 0; x < k; ++x) {
      int y = dec.conj(dec.inv(g), emb[x]);
      add_block(c, x * n, static_cast<std::size_t>(index.at(y)) * n, m.action(g));
    }
    out.action.push_back(std::move(c));
  }
  out.fixed = fixed_part(out.h1, out.action);
  return out;
}

// ---------------------------------------------------------------- norm torus

GModule norm_torus_character_module(std::shared_ptr<const FiniteGroup> g) {
  const int order = g->order();
  const std::size_t n = static_cast<std::size_t>(order - 1);
  std::vector<IntMatrix> act;
  for (int x = 0; x < order; ++x) {
    IntMatrix a(n, n);
    for (int h = 1; h < order; ++h) {
      int y = g->mul(x, h);
      std::size_t col = static_cast<std::size_t>(h - 1);
      if (y == 0) {
        for (std::size_t i = 0; i < n; ++i) a(i, col) = -1;
      } else {
        a(static_cast<std::size_t>(y - 1), col) = 1;
      }
    }
    act.push_back(std::move(a));
  }
  return GModule(std::move(g), FinAbPresentation::free(n), std::move(act));
}

NormTorusLattice norm_torus_lattice(const GTower& tower) {
  NormTorusLattice out;
  out.x = norm_torus_character_module(tower.group_ptr());
  out.x_local = out.x.restrict_to(tower.decomposition(), tower.decomposition_embedding());
  const std::size_t n = out.x.rank();
  out.nv = IntMatrix(n, n);
  for (int i : tower.iw()) out.nv = out.nv + out.x.action(i);
  out.ker_nv = preimage(out.nv, Lattice::zero(n));
  GModule inertia_module = out.x_local.restrict_to(tower.inertia(), tower.inertia_embedding());
  out.x_inertia = invariants(inertia_module).top();
  out.nv_surjective = image_lattice(out.nv, Lattice::full(n)) == out.x_inertia;
  out.d_v = invariants(out.x_local).top().rank();
  if (out.d_v + 1 != static_cast<std::size_t>(tower.index()))
    throw MathError(ErrorCode::CrossCheckFailed, "rank of X^{G_w} differs from [G:G_w] - 1 for " + tower.describe());
  out.ker_nv_module = out.x_local.sublattice(out.ker_nv);
  out.x_inertia_module = out.x_local.sublattice(out.x_inertia);
  return out;
}

InertiaH1Report inertia_h1_check(const GTower& tower) {
  NormTorusLattice ntl = norm_torus_lattice(tower);
  InertiaH1Report r;
  r.lhs = h1_with_outer_action(tower, ntl.x_local).fixed.group();
  // I_w / G_w' as a subgroup of the abelianization of G_w.
  const auto& dec = *tower.decomposition();
  const std::size_t k = static_cast<std::size_t>(dec.order());
  IntMatrix rel(k * k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      rel(a * k + b, a) += 1;
      rel(a * k + b, b) += 1;
      rel(a * k + b, static_cast<std::size_t>(dec.mul(static_cast<int>(a), static_cast<int>(b)))) -= 1;
    }
  Lattice relations = FinAbPresentation(k, rel).relation_lattice();
  std::vector<IntVector> gens = relations.basis();
  for (int i : tower.inertia_in_decomposition()) {
    IntVector v(k, Integer(0));
    v[static_cast<std::size_t>(i)] = 1;
    gens.push_back(std::move(v));
  }
  r.rhs = Subquotient(Lattice(k, gens), relations).group();
  r.isomorphic = r.lhs == r.rhs;
  return r;
}

ResidueModReport residue_mod_e_check(const GTower& tower) {
  NormTorusLattice ntl = norm_torus_lattice(tower);
  const Integer e = tower.e(), f = tower.f();
  const std::size_t r = ntl.x_inertia_module.rank();
  std::vector<IntVector> multiples;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector v(r, Integer(0));
    v[i] = e;
    multiples.push_back(std::move(v));
  }
  GModule mod_e = ntl.x_inertia_module.quotient_by(Lattice(r, multiples));
  ResidueModReport out;
  out.fixed_order = invariants(mod_e).group().order();
  out.expected_order = pow(e, ntl.d_v) * gcd(f, e);
  GModule residue_module = mod_e.descend(tower.residue(), tower.residue_projection());
  out.h1 = h1(residue_module).group();
  out.expected_h1 = m_torsion(FinAbGroup::cyclic(f), e);
  out.order_ok = out.fixed_order == out.expected_order;
  out.iso_ok = out.h1 == out.expected_h1;
  return out;
}

QDeltaReport local_factor_q_delta(const GTower& tower) {
  NormTorusLattice ntl = norm_torus_lattice(tower);
  QDeltaReport out;
  out.e = tower.e();
  out.d_v = ntl.d_v;
  out.q = Rational(Integer(1), ab_m_torsion_order(*tower.decomposition(), out.e));
  out.h1_fixed = h1_with_outer_action(tower, ntl.ker_nv_module).fixed.group();
  if (!out.h1_fixed.is_finite())
    throw MathError(ErrorCode::CrossCheckFailed, "H¹(I_w, Ker N_v)^{G(w)} is infinite for " + tower.describe());
  out.cross_check = Rational(pow(Integer(out.e), out.d_v), out.h1_fixed.order());
  out.cross_check.canonicalize();
  out.q.canonicalize();
  if (out.q != out.cross_check)
    throw MathError(ErrorCode::CrossCheckFailed, "q(delta) routes disagree for " + tower.describe() + ": " +
                                                     to_string(out.q) + " vs " + to_string(out.cross_check));
  return out;
}

}  // namespace chev
