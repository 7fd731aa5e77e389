#include "chev/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace chev {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
  const int n = order();
  if (n == 0) throw InputError(ErrorCode::BadSpec, "empty group table");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw InputError(ErrorCode::BadSpec, "group table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw InputError(ErrorCode::BadSpec, "group table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    if (table_[0][a] != a || table_[a][0] != a) throw InputError(ErrorCode::BadSpec, "element 0 is not the identity");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == 0) {
        inverse_[a] = b;
        break;
      }
    if (inverse_[a] < 0 || table_[inverse_[a]][a] != 0) throw InputError(ErrorCode::BadSpec, "element without inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw InputError(ErrorCode::BadSpec, "group table is not associative");
  if (labels_.empty()) {
    for (int a = 0; a < n; ++a) labels_.push_back(std::to_string(a));
  } else if (static_cast<int>(labels_.size()) != n) {
    throw InputError(ErrorCode::BadSpec, "label count does not match group order");
  }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw InputError(ErrorCode::BadSpec, "cyclic group needs n >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    labels.push_back(a == 0 ? "1" : (a == 1 ? "a" : "a^" + std::to_string(a)));
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::metacyclic(int m, int r, int s) {
  if (m < 1) throw InputError(ErrorCode::BadSpec, "metacyclic group needs m >= 1");
  auto md = [m](long x) { return static_cast<int>(((x % m) + m) % m); };
  const int n = 2 * m;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    int k = x % m, j = x / m;
    std::string a = k == 0 ? "" : (k == 1 ? "a" : "a^" + std::to_string(k));
    labels[x] = j == 0 ? (k == 0 ? "1" : a) : a + "b";
    for (int y = 0; y < n; ++y) {
      int l = y % m, u = y / m;
      long exp = k + (j == 1 ? static_cast<long>(r) * l : l);
      int jj = j + u;
      if (jj == 2) {
        exp += s;
        jj = 0;
      }
      t[x][y] = md(exp) + m * jj;
    }
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw InputError(ErrorCode::BadSpec, "dihedral group needs n >= 1");
  return metacyclic(n, n - 1, 0);
}

FiniteGroup FiniteGroup::dicyclic(int n) {
  if (n < 1) throw InputError(ErrorCode::BadSpec, "dicyclic group needs n >= 1");
  return metacyclic(2 * n, 2 * n - 1, n);
}

FiniteGroup FiniteGroup::quaternion() { return dicyclic(2); }

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    labels[x] = "(" + a.label(x / nb) + "," + b.label(x % nb) + ")";
    for (int y = 0; y < n; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators) {
  if (generators.empty()) return cyclic(1);
  const std::size_t deg = generators[0].size();
  for (const auto& g : generators) {
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < deg; ++i)
      if (g.size() != deg || sorted[i] != static_cast<int>(i)) throw InputError(ErrorCode::BadSpec, "not a permutation");
  }
  std::vector<int> id(deg);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  auto compose = [deg](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(deg);
    for (std::size_t i = 0; i < deg; ++i) r[i] = p[q[i]];
    return r;
  };
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& g : generators) {
      auto p = compose(elems[k], g);
      if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(p);
    }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    std::string l;
    for (int v : elems[x]) l += std::to_string(v);
    labels[x] = "[" + l + "]";
    for (int y = 0; y < n; ++y) t[x][y] = index.at(compose(elems[x], elems[y]));
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::parse(const std::string& spec_in) {
  std::string spec;
  for (char ch : spec_in) spec += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  auto x = spec.find('x');
  if (x != std::string::npos) return direct_product(parse(spec.substr(0, x)), parse(spec.substr(x + 1)));
  auto number = [&](std::size_t from) {
    std::string digits = spec.substr(from);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 4)
      throw InputError(ErrorCode::BadSpec, "bad group spec '" + spec_in + "'");
    return std::stoi(digits);
  };
  if (spec == "q8") return quaternion();
  if (spec == "a4") return from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}});
  if (spec == "1") return cyclic(1);
  if (spec.rfind("dic", 0) == 0) return dicyclic(number(3));
  if (!spec.empty() && (spec[0] == 'z' || spec[0] == 'c')) return cyclic(number(1));
  if (!spec.empty() && spec[0] == 'd') return dihedral(number(1));
  if (!spec.empty() && spec[0] == 's') {
    int n = number(1);
    if (n < 1 || n > 6) throw InputError(ErrorCode::BadSpec, "symmetric groups are limited to S1..S6");
    if (n == 1) return cyclic(1);
    std::vector<int> swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    return from_permutations({swap, cycle});
  }
  throw InputError(ErrorCode::BadSpec, "unknown group spec '" + spec_in + "'");
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_cyclic() const {
  for (int a = 0; a < order(); ++a)
    if (element_order(a) == order()) return true;
  return false;
}

Subset FiniteGroup::all() const {
  Subset s(order());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

Subset FiniteGroup::generated_by(const std::vector<int>& gens) const {
  std::vector<char> in(order(), 0);
  std::vector<int> queue{0};
  in[0] = 1;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (int g : gens) {
      int y = mul(queue[k], g);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  Subset out;
  for (int a = 0; a < order(); ++a)
    if (in[a]) out.push_back(a);
  return out;
}

std::vector<int> FiniteGroup::generators() const {
  std::vector<int> gens;
  Subset h{0};
  for (int a = 0; a < order(); ++a) {
    if (std::binary_search(h.begin(), h.end(), a)) continue;
    gens.push_back(a);
    h = generated_by(gens);
  }
  return gens;
}

Subset FiniteGroup::commutator_subgroup() const {
  std::vector<int> comms;
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b) comms.push_back(mul(mul(a, b), mul(inv(a), inv(b))));
  return generated_by(comms);
}

bool FiniteGroup::is_subgroup(const Subset& h) const {
  if (h.empty() || h[0] != 0) return false;
  for (int a : h)
    for (int b : h)
      if (!std::binary_search(h.begin(), h.end(), mul(a, inv(b)))) return false;
  return true;
}

Subset FiniteGroup::conjugate(const Subset& h, int g) const {
  Subset out;
  for (int x : h) out.push_back(conj(g, x));
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteGroup::is_normal(const Subset& h) const {
  for (int g = 0; g < order(); ++g)
    if (conjugate(h, g) != h) return false;
  return true;
}

std::vector<Subset> FiniteGroup::subgroups() const {
  std::set<Subset> found{Subset{0}};
  std::vector<Subset> queue{Subset{0}};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (int g = 0; g < order(); ++g) {
      if (std::binary_search(queue[k].begin(), queue[k].end(), g)) continue;
      std::vector<int> gens = queue[k];
      gens.push_back(g);
      Subset h = generated_by(gens);
      if (found.insert(h).second) queue.push_back(h);
    }
  }
  std::vector<Subset> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) { return a.size() < b.size(); });
  return out;
}

FiniteGroup FiniteGroup::subgroup(const Subset& h, std::vector<int>* embedding) const {
  if (!is_subgroup(h)) throw InputError(ErrorCode::BadSpec, "subset is not a subgroup");
  std::map<int, int> local;
  for (std::size_t k = 0; k < h.size(); ++k) local[h[k]] = static_cast<int>(k);
  std::vector<std::vector<int>> t(h.size(), std::vector<int>(h.size()));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < h.size(); ++a) {
    labels.push_back(label(h[a]));
    for (std::size_t b = 0; b < h.size(); ++b) t[a][b] = local.at(mul(h[a], h[b]));
  }
  if (embedding) *embedding = h;
  return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::quotient(const Subset& n, std::vector<int>* projection) const {
  if (!is_subgroup(n) || !is_normal(n)) throw InputError(ErrorCode::BadSpec, "quotient by a non-normal subset");
  std::vector<int> coset(order(), -1);
  std::vector<int> reps;
  for (int g = 0; g < order(); ++g) {
    if (coset[g] >= 0) continue;
    int idx = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int x : n) coset[mul(g, x)] = idx;
  }
  const std::size_t q = reps.size();
  std::vector<std::vector<int>> t(q, std::vector<int>(q));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < q; ++a) {
    labels.push_back(label(reps[a]) + "N");
    for (std::size_t b = 0; b < q; ++b) t[a][b] = coset[mul(reps[a], reps[b])];
  }
  labels[0] = "1";
  if (projection) *projection = coset;
  return FiniteGroup(std::move(t), std::move(labels));
}

FinAbGroup abelianization(const FiniteGroup& g) {
  const std::size_t n = static_cast<std::size_t>(g.order());
  IntMatrix rel(n * n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t r = a * n + b;
      rel(r, a) += 1;
      rel(r, b) += 1;
      rel(r, static_cast<std::size_t>(g.mul(static_cast<int>(a), static_cast<int>(b)))) -= 1;
    }
  return structure(FinAbPresentation(n, rel));
}

Integer ab_m_torsion_order(const FiniteGroup& g, const Integer& m) {
  if (m < 1) throw InputError(ErrorCode::DegenerateInput, "m must be >= 1");
  return m_torsion(abelianization(g), m).order();
}

std::vector<NamedGroup> small_group_library() {
  std::vector<NamedGroup> out;
  auto add = [&](std::string name, FiniteGroup g) {
    out.push_back({std::move(name), std::make_shared<const FiniteGroup>(std::move(g))});
  };
  auto z = [](int n) { return FiniteGroup::cyclic(n); };
  for (int n = 1; n <= 12; ++n) add("z" + std::to_string(n), z(n));
  add("z2xz2", FiniteGroup::direct_product(z(2), z(2)));
  add("z4xz2", FiniteGroup::direct_product(z(4), z(2)));
  add("z2xz2xz2", FiniteGroup::direct_product(FiniteGroup::direct_product(z(2), z(2)), z(2)));
  add("z3xz3", FiniteGroup::direct_product(z(3), z(3)));
  add("z6xz2", FiniteGroup::direct_product(z(6), z(2)));
  add("s3", FiniteGroup::dihedral(3));
  add("d4", FiniteGroup::dihedral(4));
  add("q8", FiniteGroup::quaternion());
  add("d5", FiniteGroup::dihedral(5));
  add("d6", FiniteGroup::dihedral(6));
  add("a4", FiniteGroup::parse("a4"));
  add("dic3", FiniteGroup::dicyclic(3));
  return out;
}

namespace {

bool contains_all(const Subset& big, const Subset& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool quotient_is_cyclic(const FiniteGroup& g, const Subset& gw, const Subset& iw) {
  const std::size_t f = gw.size() / iw.size();
  for (int x : gw) {
    std::size_t k = 1;
    for (int y = x; !std::binary_search(iw.begin(), iw.end(), y); y = g.mul(y, x)) ++k;
    if (k == f) return true;
  }
  return false;
}

std::string subset_string(const Subset& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "}";
}

}  // namespace

GTower::GTower(std::shared_ptr<const FiniteGroup> g, Subset gw, Subset iw) : g_(std::move(g)), gw_(std::move(gw)), iw_(std::move(iw)) {
  std::sort(gw_.begin(), gw_.end());
  std::sort(iw_.begin(), iw_.end());
  if (!g_->is_subgroup(gw_)) throw InputError(ErrorCode::BadSpec, "G_w is not a subgroup");
  if (!g_->is_subgroup(iw_) || !contains_all(gw_, iw_)) throw InputError(ErrorCode::BadSpec, "I_w is not a subgroup of G_w");
  for (int x : gw_)
    if (g_->conjugate(iw_, x) != iw_) throw InputError(ErrorCode::BadSpec, "I_w is not normal in G_w");
  if (!quotient_is_cyclic(*g_, gw_, iw_)) throw InputError(ErrorCode::NotCyclic, "G_w / I_w is not cyclic");
  dec_ = std::make_shared<const FiniteGroup>(g_->subgroup(gw_, &dec_embed_));
  for (int x : iw_) iw_local_.push_back(static_cast<int>(std::lower_bound(gw_.begin(), gw_.end(), x) - gw_.begin()));
  in_ = std::make_shared<const FiniteGroup>(dec_->subgroup(iw_local_, &in_embed_));
  res_ = std::make_shared<const FiniteGroup>(dec_->quotient(iw_local_, &res_proj_));
}

std::string GTower::describe() const {
  return "|G|=" + std::to_string(g_->order()) + " G_w=" + subset_string(gw_) + " I_w=" + subset_string(iw_);
}

Subset parse_subgroup(const FiniteGroup& g, const std::string& spec, const Subset& within_in) {
  const Subset within = within_in.empty() ? g.all() : within_in;
  auto number = [&](const std::string& s) {
    if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), ::isdigit))
      throw InputError(ErrorCode::BadSpec, "bad subgroup spec '" + spec + "'");
    return std::stoi(s);
  };
  if (spec == "all") return within;
  if (spec == "1") return Subset{0};
  if (spec == "derived") {
    std::vector<int> comms;
    for (int a : within)
      for (int b : within) comms.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    return g.generated_by(comms);
  }
  if (spec.rfind("gens:", 0) == 0) {
    std::vector<int> gens;
    std::stringstream ss(spec.substr(5));
    std::string item;
    while (std::getline(ss, item, '.')) {
      int x = number(item);
      if (x >= g.order()) throw InputError(ErrorCode::BadSpec, "element index out of range in '" + spec + "'");
      gens.push_back(x);
    }
    Subset h = g.generated_by(gens);
    if (!contains_all(within, h)) throw InputError(ErrorCode::BadSpec, "'" + spec + "' leaves the enclosing subgroup");
    return h;
  }
  if (spec.rfind("order:", 0) == 0) {
    std::size_t n = static_cast<std::size_t>(number(spec.substr(6)));
    for (const auto& h : g.subgroups())
      if (h.size() == n && contains_all(within, h)) return h;
    throw InputError(ErrorCode::BadSpec, "no subgroup of order " + std::to_string(n));
  }
  if (!spec.empty() && (spec[0] == 'z' || spec[0] == 'c')) {
    int n = number(spec.substr(1));
    for (int x : within)
      if (g.element_order(x) == n) return g.generated_by({x});
    throw InputError(ErrorCode::BadSpec, "no cyclic subgroup of order " + std::to_string(n));
  }
  throw InputError(ErrorCode::BadSpec, "unknown subgroup spec '" + spec + "'");
}

GTower parse_tower(std::shared_ptr<const FiniteGroup> g, const std::string& spec) {
  std::string w = "all", i;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError(ErrorCode::BadSpec, "tower item '" + item + "' lacks '='");
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "w") {
      w = value;
    } else if (key == "i") {
      i = value;
    } else {
      throw InputError(ErrorCode::BadSpec, "unknown tower key '" + key + "'");
    }
  }
  if (i.empty()) throw InputError(ErrorCode::BadSpec, "tower spec needs i=<subgroup>");
  Subset gw = parse_subgroup(*g, w);
  Subset iw = parse_subgroup(*g, i, gw);
  return GTower(std::move(g), std::move(gw), std::move(iw));
}

std::vector<GTower> all_towers(std::shared_ptr<const FiniteGroup> g) {
  std::vector<GTower> out;
  std::set<std::pair<Subset, Subset>> seen;
  auto subs = g->subgroups();
  for (const auto& gw : subs) {
    for (const auto& iw : subs) {
      if (!contains_all(gw, iw)) continue;
      bool normal = true;
      for (int x : gw) normal = normal && g->conjugate(iw, x) == iw;
      if (!normal || !quotient_is_cyclic(*g, gw, iw)) continue;
      std::pair<Subset, Subset> key{gw, iw};
      for (int x = 0; x < g->order(); ++x) key = std::min(key, std::make_pair(g->conjugate(gw, x), g->conjugate(iw, x)));
      if (!seen.insert(key).second) continue;
      out.emplace_back(g, gw, iw);
    }
  }
  return out;
}

}  // namespace chev
