#include "chev/localnorms.hpp"

#include <algorithm>

namespace chev {

namespace {

Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

// n = p^v u with p not dividing u.
unsigned long split_off(Integer& n, const Integer& p) {
  unsigned long v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

int parity_sign(unsigned long bit) { return (bit & 1) ? -1 : 1; }

// Integer in the square class of a nonzero rational.
Integer square_class_rep(const Rational& q) {
  Rational x = q;
  x.canonicalize();
  return x.get_num() * x.get_den();
}

}  // namespace

int hilbert_symbol(const Rational& a0, const Rational& b0, const Place& v) {
  if (a0 == 0 || b0 == 0) throw InputError(ErrorCode::DegenerateInput, "Hilbert symbol of zero");
  Integer a = square_class_rep(a0), b = square_class_rep(b0);
  if (v.infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.p;
  unsigned long alpha = split_off(a, p), beta = split_off(b, p);
  if (p == 2) {
    // u = a 2-adic unit; eps(u) = (u-1)/2, omega(u) = (u^2-1)/8 mod 2, both from u mod 8
    auto eps = [](const Integer& u) { return static_cast<unsigned long>(mod_floor(u, 4) == 3 ? 1 : 0); };
    auto omega = [](const Integer& u) {
      Integer r = mod_floor(u, 8);
      return static_cast<unsigned long>((r == 3 || r == 5) ? 1 : 0);
    };
    unsigned long e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
    return parity_sign(e);
  }
  Integer half = (p - 1) / 2;
  unsigned long e = (alpha * beta) % 2 * static_cast<unsigned long>(mod_floor(half, 2) == 1 ? 1 : 0);
  int s = parity_sign(e);
  if (beta % 2) s *= kronecker(a, p);
  if (alpha % 2) s *= kronecker(b, p);
  return s;
}

NormTest is_global_norm(const Rational& x0, const QuadField& K, long search_bound) {
  if (x0 == 0) throw InputError(ErrorCode::DegenerateInput, "zero is never tested as a norm");
  Rational x = x0;
  x.canonicalize();
  NormTest out;
  std::vector<Integer> primes{2};
  for (const Integer& n : {Integer(abs(K.D)), Integer(abs(x.get_num())), Integer(x.get_den())})
    for (const auto& pp : factorize(n).factors) primes.push_back(pp.prime);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  out.places_checked.push_back(Place::infinity());
  for (const auto& p : primes) out.places_checked.push_back(Place{p});
  out.is_norm = true;
  for (const auto& v : out.places_checked)
    if (hilbert_symbol(x, Rational(K.D), v) != 1) out.is_norm = false;
  if (!out.is_norm) return out;
  for (long y = 0; y <= search_bound && !out.witness; ++y)
    for (long z = -search_bound; z <= search_bound; ++z) {
      if (y == 0 && z == 0) continue;
      KElem beta = KElem::from_uv(K, y, z);
      Rational q = beta.norm() / x;
      q.canonicalize();
      if (q <= 0 || !is_square(q.get_num()) || !is_square(q.get_den())) continue;
      Rational t(isqrt(q.get_num()), isqrt(q.get_den()));
      KElem w = beta / KElem::rational(K, t);
      if (w.norm() == x) {
        out.witness = w;
        break;
      }
    }
  return out;
}

WGroup w_group(const QuadField& K, const SSet& S) {
  WGroup W;
  W.K = K;
  W.S = S;
  std::vector<Integer> primes{2};
  for (const auto& p : ramified_primes(K)) primes.push_back(p);
  for (const auto& p : S.primes) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  W.symbol_places.push_back(Place::infinity());
  for (const auto& p : primes) W.symbol_places.push_back(Place{p});

  const std::size_t n = S.primes.size() + 1;
  std::vector<Rational> gens{Rational(-1)};
  for (const auto& p : S.primes) gens.push_back(Rational(p));
  W.symbols = IntMatrix(W.symbol_places.size(), n);
  for (std::size_t i = 0; i < W.symbol_places.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      W.symbols(i, j) = hilbert_symbol(gens[j], Rational(K.D), W.symbol_places[i]) == 1 ? 0 : 1;
  std::vector<IntVector> evens;
  for (std::size_t i = 0; i < W.symbol_places.size(); ++i) {
    IntVector e(W.symbol_places.size(), Integer(0));
    e[i] = 2;
    evens.push_back(e);
  }
  W.w = preimage(W.symbols, Lattice(W.symbol_places.size(), evens));
  W.index = Subquotient(Lattice::full(n), W.w).group().order();
  return W;
}

FinAbGroup h1_k_mod_units(const WGroup& W, const SUnitModule& M) {
  const std::size_t n = W.S.primes.size() + 1;
  std::vector<IntVector> bottom;
  IntVector two(n, Integer(0));
  two[0] = 2;
  bottom.push_back(two);
  for (const auto& nrm : M.norms) {
    IntVector v = *rational_s_unit_coordinates(nrm, W.S);
    if (!W.w.contains(v)) throw MathError(ErrorCode::CrossCheckFailed, "norm of an S-unit fails the local norm test");
    bottom.push_back(v);
  }
  return Subquotient(W.w, bottom).group();
}

}  // namespace chev
