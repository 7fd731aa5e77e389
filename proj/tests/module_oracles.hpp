#pragma once

// Random G-modules and a brute-force count of crossed homomorphisms on
// finite modules.

#include <functional>
#include <random>

#include "chev/cohomology.hpp"

namespace oracle {

using chev::GModule;
using chev::Integer;
using chev::IntMatrix;
using chev::IntVector;

inline IntVector operator+(const IntVector& a, const IntVector& b) {
  IntVector out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

inline chev::Lattice g_span(const GModule& m, const std::vector<IntVector>& vs) {
  std::vector<IntVector> gens;
  for (const auto& v : vs)
    for (int x = 0; x < m.group().order(); ++x) gens.push_back(m.action(x) * v);
  return chev::Lattice(m.rank(), gens);
}

// Sum of one or two permutation modules, optionally cut down to a finite
// module by a G-stable lattice containing k Z^n.
inline GModule random_module(std::mt19937_64& rng, std::shared_ptr<const chev::FiniteGroup> g, bool finite,
                             std::size_t max_rank = 6) {
  auto subs = g->subgroups();
  auto pick = [&]() {
    for (;;) {
      const auto& h = subs[rng() % subs.size()];
      if (static_cast<std::size_t>(g->order()) / h.size() <= max_rank / 2 + 1) return GModule::permutation(g, h);
    }
  };
  GModule m = pick();
  if (rng() % 2 == 0 && m.rank() * 2 <= max_rank + 1) m = chev::direct_sum(m, pick());
  if (!finite) return m;
  const std::size_t n = m.rank();
  long k = 2 + static_cast<long>(rng() % 3);
  std::vector<IntVector> vs;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector v(n, Integer(0));
    v[i] = k;
    vs.push_back(v);
  }
  std::uniform_int_distribution<long> dist(-3, 3);
  std::size_t extra = rng() % 3;
  for (std::size_t t = 0; t < extra; ++t) {
    IntVector v(n);
    for (auto& x : v) x = dist(rng);
    vs.push_back(v);
  }
  return m.quotient_by(g_span(m, vs));
}

// |H¹(G, M)| for finite M by enumerating cocycles on a generating set.
inline Integer brute_force_h1_order(const GModule& m) {
  chev::Subquotient whole(chev::Lattice::full(m.rank()), m.relations());
  const auto& orders = whole.group().invariant_factors;
  const std::size_t k = orders.size();
  const auto& g = m.group();
  // elements as normal coordinates
  auto reduce = [&](const IntVector& x) { return whole.normal_coordinates(x); };
  std::vector<IntVector> gens_amb = whole.factor_generators();
  auto to_ambient = [&](const IntVector& c) {
    IntVector v(m.rank(), Integer(0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < m.rank(); ++j) v[j] += c[i] * gens_amb[i][j];
    return v;
  };
  std::vector<IntVector> elements;
  IntVector c(k, Integer(0));
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      elements.push_back(c);
      return;
    }
    for (Integer t = 0; t < orders[i]; ++t) {
      c[i] = t;
      rec(i + 1);
    }
  };
  rec(0);
  const std::vector<int> sgens = g.generators();
  std::size_t fixed = 0;
  for (const auto& e : elements) {
    bool ok = true;
    for (int s : sgens) ok = ok && reduce(m.action(s) * to_ambient(e)) == e;
    if (ok) ++fixed;
  }
  std::size_t cocycles = 0;
  std::vector<std::size_t> choice(sgens.size(), 0);
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i < sgens.size()) {
      for (std::size_t t = 0; t < elements.size(); ++t) {
        choice[i] = t;
        assign(i + 1);
      }
      return;
    }
    std::vector<std::optional<IntVector>> f(static_cast<std::size_t>(g.order()));
    f[0] = IntVector(k, Integer(0));
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q) {
      int x = queue[q];
      for (std::size_t s = 0; s < sgens.size() && ok; ++s) {
        IntVector val = reduce(to_ambient(*f[x]) + m.action(x) * to_ambient(elements[choice[s]]));
        int y = g.mul(x, sgens[s]);
        if (f[y]) {
          ok = *f[y] == val;
        } else {
          f[y] = val;
          queue.push_back(y);
        }
      }
    }
    if (ok) ++cocycles;
  };
  assign(0);
  // |B¹| = |M| / |M^G|
  return Integer(static_cast<unsigned long>(cocycles)) * static_cast<unsigned long>(fixed) /
         static_cast<unsigned long>(elements.size());
}

}  // namespace oracle
