#include "chev/sunits.hpp"

namespace chev {

namespace {

KElem power_product(const std::vector<KElem>& gens, const IntVector& e, const QuadField& K) {
  KElem r = KElem::one(K);
  for (std::size_t i = 0; i < gens.size() && i < e.size(); ++i)
    if (e[i] != 0) r = r * gens[i].pow(to_long(e[i]));
  return r;
}

// u = zeta^a eps^b; returns (a, b) or throws DiscreteLogFailure.
std::pair<Integer, Integer> unit_log(const QuadField& K, const UnitGroup& U, const KElem& u) {
  if (abs(u.norm()) != 1 || !u.is_integral())
    throw MathError(ErrorCode::DiscreteLogFailure, u.to_string() + " is not a unit");
  if (!U.eps) {
    KElem z = KElem::one(K);
    for (int a = 0; a < U.torsion; ++a, z = z * U.zeta)
      if (z == u) return {Integer(a), Integer(0)};
    throw MathError(ErrorCode::DiscreteLogFailure, "no root of unity matches " + u.to_string());
  }
  const KElem one = KElem::one(K);
  const KElem& eps = *U.eps;
  KElem x = u.real_sign() < 0 ? -u : u;
  long k = 0;
  while (x.compare_abs(one) > 0) {
    x = x / eps;
    ++k;
  }
  while (x.compare_abs(one) < 0) {
    x = x * eps;
    --k;
  }
  if (!(x == one)) throw MathError(ErrorCode::DiscreteLogFailure, u.to_string() + " is not a power of eps");
  Integer a = u.real_sign() < 0 ? 1 : 0;
  KElem check = (a == 1 ? -one : one) * eps.pow(k);
  if (!(check == u)) throw MathError(ErrorCode::DiscreteLogFailure, "unit logarithm does not verify");
  return {a, Integer(k)};
}

KElem ideal_generator_for(const QuadField& K, const std::vector<SPlace>& places, const IntVector& lambda,
                          std::size_t max_steps) {
  Ideal num = unit_ideal(K), den = unit_ideal(K);
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (lambda[i] > 0) num = multiply(K, num, ideal_pow(K, places[i].ideal, to_long(lambda[i])));
    if (lambda[i] < 0) den = multiply(K, den, ideal_pow(K, places[i].ideal, to_long(-lambda[i])));
  }
  Integer n = den.norm();
  Ideal whole = multiply(K, num, conjugate(K, den));
  std::optional<KElem> g;
  try {
    g = generator(K, whole, max_steps);
  } catch (const EffortError& e) {
    throw EffortError(ErrorCode::SearchBoundExceeded, e.what());
  }
  if (!g) throw MathError(ErrorCode::CrossCheckFailed, "ideal of the principal lattice is not principal");
  return normalize_generator(K, *g / KElem::rational(K, n));
}

}  // namespace

UnitGroup unit_group(const QuadField& K) {
  UnitGroup U;
  U.torsion = torsion_order(K);
  U.zeta = torsion_generator(K);
  if (K.real()) {
    U.eps = fundamental_unit(K);
    U.norm_eps = U.eps->norm() == 1 ? 1 : -1;
  }
  return U;
}

KElem principal_generator(const QuadField& K, const Integer& p, unsigned long m, std::size_t max_steps) {
  auto P = prime_ideal(K, p);
  Ideal I = P ? ideal_pow(K, *P, m) : principal_ideal(K, KElem::rational(K, pow(Integer(p), m)));
  std::optional<KElem> g;
  try {
    g = generator(K, I, max_steps);
  } catch (const EffortError& e) {
    throw EffortError(ErrorCode::SearchBoundExceeded, e.what());
  }
  if (!g) throw InputError(ErrorCode::BadSpec, "P^m is not principal for p = " + to_string(p));
  return *g;
}

std::optional<IntVector> rational_s_unit_coordinates(const Rational& x0, const SSet& S) {
  Rational x = x0;
  x.canonicalize();
  if (x == 0) return std::nullopt;
  IntVector out(S.primes.size() + 1, Integer(0));
  out[0] = x < 0 ? 1 : 0;
  Integer num = abs(x.get_num()), den = x.get_den();
  for (std::size_t i = 0; i < S.primes.size(); ++i) {
    const Integer& p = S.primes[i];
    while (num % p == 0) num /= p, out[i + 1] += 1;
    while (den % p == 0) den /= p, out[i + 1] -= 1;
  }
  if (num != 1 || den != 1) return std::nullopt;
  return out;
}

KElem SUnitModule::evaluate(const IntVector& exponents) const { return power_product(generators, exponents, K); }

SUnitModule sunit_module(const QuadField& K, const SSet& S, std::size_t max_steps) {
  SUnitModule M;
  M.K = K;
  M.S = S;
  UnitGroup U = unit_group(K);

  for (const auto& p : S.primes) {
    SplitData sd = splitting(K, p);
    const int idx = static_cast<int>(M.places.size());
    if (sd.kind == SplitKind::Split) {
      Ideal P = *prime_ideal(K, p);
      M.places.push_back({p, sd.kind, P, idx + 1});
      M.places.push_back({p, sd.kind, conjugate(K, P), idx});
    } else if (sd.kind == SplitKind::Ramified) {
      M.places.push_back({p, sd.kind, *prime_ideal(K, p), idx});
    } else {
      M.places.push_back({p, sd.kind, principal_ideal(K, KElem::rational(K, p)), idx});
    }
  }
  const std::size_t k = M.places.size();

  ClassGroup C = class_group(K, max_steps);
  const auto& inv = C.structure().invariant_factors;
  if (inv.empty()) {
    M.principal = Lattice::full(k);
  } else {
    IntMatrix A(inv.size(), k);
    for (std::size_t j = 0; j < k; ++j) {
      IntVector v = C.dlog(M.places[j].ideal.k == 1 ? form_of(K, M.places[j].ideal) : C.classes().front());
      for (std::size_t i = 0; i < inv.size(); ++i) A(i, j) = v[i];
    }
    std::vector<IntVector> rel;
    for (std::size_t i = 0; i < inv.size(); ++i) {
      IntVector r(inv.size(), Integer(0));
      r[i] = inv[i];
      rel.push_back(r);
    }
    M.principal = preimage(A, Lattice(inv.size(), rel));
  }

  M.generators.push_back(U.zeta);
  M.labels.push_back("zeta");
  if (U.eps) {
    M.generators.push_back(*U.eps);
    M.labels.push_back("eps");
  }
  const std::size_t offset = M.generators.size();
  for (std::size_t j = 0; j < M.principal.rank(); ++j) {
    M.generators.push_back(ideal_generator_for(K, M.places, M.principal.basis()[j], max_steps));
    M.labels.push_back("alpha" + std::to_string(j + 1));
  }
  const std::size_t n = M.generators.size();

  M.valuations = IntMatrix(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) M.valuations(i, j) = valuation(K, M.places[j].ideal, M.generators[i]);
  for (std::size_t j = 0; j < M.principal.rank(); ++j)
    for (std::size_t c = 0; c < k; ++c)
      if (M.valuations(offset + j, c) != M.principal.basis()[j][c])
        throw MathError(ErrorCode::DiscreteLogFailure, "generator valuations do not match the principal lattice");

  for (const auto& g : M.generators) {
    M.norms.push_back(g.norm());
    if (!rational_s_unit_coordinates(g.norm(), S))
      throw MathError(ErrorCode::CrossCheckFailed, "norm of a generator is not an S-unit of Q");
  }

  M.sigma = IntMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector col = sunit_log(M, M.generators[j].conj());
    for (std::size_t i = 0; i < n; ++i) M.sigma(i, j) = col[i];
  }

  IntMatrix rel(1, n);
  rel(0, 0) = U.torsion;
  auto g = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  M.module = GModule::from_generators(g, FinAbPresentation(n, rel), {1}, {M.sigma});
  return M;
}

IntVector sunit_log(const SUnitModule& M, const KElem& x) {
  const QuadField& K = M.K;
  const std::size_t k = M.places.size();
  if (x.is_zero()) throw MathError(ErrorCode::DiscreteLogFailure, "zero is not an S-unit");
  auto nc = rational_s_unit_coordinates(x.norm(), M.S);
  if (!nc) throw MathError(ErrorCode::DiscreteLogFailure, x.to_string() + " is not an S-unit");
  IntVector val(k);
  for (std::size_t j = 0; j < k; ++j) val[j] = valuation(K, M.places[j].ideal, x);
  auto c = M.principal.coordinates(val);
  if (!c) throw MathError(ErrorCode::DiscreteLogFailure, "valuation vector outside the principal lattice");
  UnitGroup U = unit_group(K);
  const std::size_t offset = U.eps ? 2 : 1;
  std::vector<KElem> alphas(M.generators.begin() + static_cast<long>(offset), M.generators.end());
  KElem u = x / power_product(alphas, *c, K);
  auto [a, b] = unit_log(K, U, u);
  IntVector out(M.generators.size(), Integer(0));
  out[0] = a;
  if (U.eps) out[1] = b;
  for (std::size_t j = 0; j < c->size(); ++j) out[offset + j] = (*c)[j];
  if (!(M.evaluate(out) == x)) throw MathError(ErrorCode::DiscreteLogFailure, "S-unit logarithm does not verify");
  return out;
}

FinAbGroup tate_h0_units(const SUnitModule& M) {
  const std::size_t s = M.S.primes.size();
  std::vector<IntVector> bottom;
  IntVector two(s + 1, Integer(0));
  two[0] = 2;
  bottom.push_back(two);
  for (const auto& nrm : M.norms) bottom.push_back(*rational_s_unit_coordinates(nrm, M.S));
  return Subquotient(Lattice::full(s + 1), bottom).group();
}

FinAbGroup h1_units(const SUnitModule& M) { return h1_cyclic(M.module).group(); }

HerbrandReport herbrand_check(const SUnitModule& M) {
  HerbrandReport r;
  r.h0_order = tate_h0_units(M).order();
  r.h1_order = h1_units(M).order();
  r.quotient = Rational(r.h0_order, r.h1_order);
  r.quotient.canonicalize();
  Integer prod = 1;
  for (const auto& v : M.S.places()) prod *= splitting(M.K, v).local_degree();
  r.expected = Rational(prod, 2);
  r.expected.canonicalize();
  r.ok = r.quotient == r.expected;
  if (!r.ok)
    throw MathError(ErrorCode::CheckFailed, "Herbrand quotient " + to_string(r.quotient) + " != " + to_string(r.expected));
  return r;
}

}  // namespace chev
