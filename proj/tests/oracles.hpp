#pragma once

// Independent reference computations used by the test suites. Nothing here
// calls into the Smith form engine.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "chev/abelian.hpp"

namespace oracle {

using chev::AbHom;
using chev::FinAbPresentation;
using chev::Integer;
using chev::IntMatrix;

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  std::uniform_int_distribution<long> dist(-bound, bound);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// Cofactor expansion along the first row.
inline Integer laplace_det(const IntMatrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) minor(i - 1, kk++) = m(i, k);
    Integer term = m(0, j) * laplace_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Nonzero invariant factors as quotients of gcds of k x k minors.
inline std::vector<Integer> determinantal_invariants(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    combinations(m.rows(), k, rs);
    combinations(m.cols(), k, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
        g = gcd(g, laplace_det(sub));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

inline bool smith_contract_holds(const IntMatrix& m, const chev::SmithForm& s) {
  if (s.U.rows() != m.rows() || s.U.cols() != m.rows()) return false;
  if (s.V.rows() != m.cols() || s.V.cols() != m.cols()) return false;
  if (abs(s.U.determinant()) != 1 || abs(s.V.determinant()) != 1) return false;
  if (!(s.U * m * s.V == s.D)) return false;
  std::size_t k = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (s.D(i, i) < 0) return false;
    if (i + 1 < k) {
      const Integer& a = s.D(i, i);
      const Integer& b = s.D(i + 1, i + 1);
      if (a == 0 ? b != 0 : b % a != 0) return false;
    }
  }
  return true;
}

// Orders of a diagonal presentation; 0 marks a free generator.
inline std::vector<Integer> random_orders(std::mt19937_64& rng, std::size_t max_gens) {
  std::size_t n = 1 + rng() % max_gens;
  std::vector<Integer> d(n);
  for (auto& x : d) {
    unsigned r = rng() % 6;
    x = (r == 0) ? 0 : static_cast<long>(1 + rng() % 12);
  }
  return d;
}

inline FinAbPresentation diagonal_presentation(const std::vector<Integer>& d) {
  IntMatrix rel(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) rel(i, i) = d[i];
  return FinAbPresentation(d.size(), rel);
}

// Random map between diagonal presentations that sends relations to
// relations: entry (i, j) is a multiple of d_i / gcd(d_i, d_j).
inline IntMatrix random_compatible(std::mt19937_64& rng, const std::vector<Integer>& target,
                                   const std::vector<Integer>& source, long bound) {
  IntMatrix m(target.size(), source.size());
  std::uniform_int_distribution<long> dist(-bound, bound);
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < source.size(); ++j) {
      const Integer& di = target[i];
      const Integer& dj = source[j];
      if (dj == 0) {
        m(i, j) = dist(rng);
      } else if (di == 0) {
        m(i, j) = 0;
      } else {
        m(i, j) = Integer(di / gcd(di, dj)) * dist(rng);
      }
    }
  return m;
}

// Random unimodular matrix and its inverse, built from elementary operations.
inline std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix t = IntMatrix::identity(n), inv = IntMatrix::identity(n);
  if (n < 2) return {t, inv};
  for (int step = 0; step < 6; ++step) {
    std::size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    long q = static_cast<long>(rng() % 5) - 2;
    // t <- E t with E = I + q e_ab;  inv <- inv E^{-1}
    for (std::size_t j = 0; j < n; ++j) t(a, j) += q * t(b, j);
    for (std::size_t i = 0; i < n; ++i) inv(i, b) -= q * inv(i, a);
  }
  return {t, inv};
}

struct ShortExact {
  AbHom inclusion;
  AbHom projection;
};

struct Extension {
  std::vector<Integer> a, c;
  FinAbPresentation b;
  IntMatrix incl, proj;  // in the changed generators of B
  IntMatrix t, tinv;
};

// 0 -> A -> B -> C -> 0 with A, C diagonal and B a (possibly nonsplit)
// extension whose generators are scrambled by a unimodular change.
inline Extension random_extension(std::mt19937_64& rng, bool split) {
  Extension e;
  e.a = random_orders(rng, 3);
  e.c = random_orders(rng, 3);
  std::size_t na = e.a.size(), nc = e.c.size(), n = na + nc;
  IntMatrix rel(n, n);
  for (std::size_t i = 0; i < na; ++i) rel(i, i) = e.a[i];
  std::uniform_int_distribution<long> dist(-4, 4);
  for (std::size_t j = 0; j < nc; ++j) {
    rel(na + j, na + j) = e.c[j];
    if (!split && e.c[j] != 0)
      for (std::size_t i = 0; i < na; ++i) rel(na + j, i) = dist(rng);
  }
  auto [t, tinv] = random_unimodular(rng, n);
  e.t = t;
  e.tinv = tinv;
  e.b = FinAbPresentation(n, rel * t.transpose());
  IntMatrix incl(n, na), proj(nc, n);
  for (std::size_t i = 0; i < na; ++i) incl(i, i) = 1;
  for (std::size_t j = 0; j < nc; ++j) proj(j, na + j) = 1;
  e.incl = t * incl;
  e.proj = proj * tinv;
  return e;
}

inline ShortExact random_short_exact(std::mt19937_64& rng) {
  Extension e = random_extension(rng, rng() % 2 == 0);
  return {AbHom(diagonal_presentation(e.a), e.b, e.incl), AbHom(e.b, diagonal_presentation(e.c), e.proj)};
}

struct Ladder {
  AbHom left, middle, right;
};

// Endomorphisms of a split extension commuting with inclusion and projection.
// Returns nullopt when some q would be infinite.
inline std::optional<Ladder> random_ladder(std::mt19937_64& rng) {
  Extension e = random_extension(rng, true);
  IntMatrix fa = random_compatible(rng, e.a, e.a, 5);
  IntMatrix fc = random_compatible(rng, e.c, e.c, 5);
  IntMatrix y = random_compatible(rng, e.a, e.c, 5);
  std::size_t na = e.a.size(), nc = e.c.size(), n = na + nc;
  IntMatrix fb(n, n);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) fb(i, j) = fa(i, j);
    for (std::size_t j = 0; j < nc; ++j) fb(i, na + j) = y(i, j);
  }
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < nc; ++j) fb(na + i, na + j) = fc(i, j);
  auto pa = diagonal_presentation(e.a);
  auto pc = diagonal_presentation(e.c);
  Ladder l{AbHom(pa, pa, fa), AbHom(e.b, e.b, e.t * fb * e.tinv), AbHom(pc, pc, fc)};
  try {
    (void)chev::q_of_hom(l.left);
    (void)chev::q_of_hom(l.right);
  } catch (const chev::MathError&) {
    return std::nullopt;
  }
  return l;
}

}  // namespace oracle
