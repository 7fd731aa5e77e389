#include "chev/classgroup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace chev {

namespace {

Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer tau(const Integer& D, const Integer& b, const Integer& a) {
  Integer A = abs(a), twoA = 2 * A;
  if (D > 0 && A * A < D) {
    Integer r = isqrt(D);
    return r - mod_floor(r - b, twoA);
  }
  Integer t = mod_floor(b, twoA);
  if (t > A) t -= twoA;
  return t;
}

QuadForm with_b(const Integer& D, const Integer& a, const Integer& b) { return QuadForm{a, b, (b * b - D) / (4 * a)}; }

// Properly equivalent form whose first coefficient is coprime to m.
QuadForm coprime_to(const QuadForm& g, const Integer& m) {
  if (gcd(g.a, m) == 1) return g;
  for (long bound = 1;; ++bound) {
    for (long x = -bound; x <= bound; ++x)
      for (long y = -bound; y <= bound; ++y) {
        if (std::max(std::abs(x), std::abs(y)) != bound) continue;
        if (std::gcd(x, y) != 1) continue;
        Integer X = x, Y = y;
        Integer val = g.a * X * X + g.b * X * Y + g.c * Y * Y;
        if (val == 0 || gcd(val, m) != 1) continue;
        Integer s, t, d;
        mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
        // [[X, Z], [Y, W]] with X W - Y Z = 1
        Integer W = s * d, Z = -t * d;
        Integer b = 2 * g.a * X * Z + g.b * (X * W + Y * Z) + 2 * g.c * Y * W;
        Integer c = g.a * Z * Z + g.b * Z * W + g.c * W * W;
        return QuadForm{val, b, c};
      }
    if (bound > 1000) throw MathError(ErrorCode::CrossCheckFailed, "no coprime representation found");
  }
}

QuadForm ideal_form(const QuadField& K, const QuadForm& f) { return QuadForm{abs(f.a), f.b, (f.b * f.b - K.D) / (4 * abs(f.a))}; }

Ideal ideal_of(const QuadField& K, const QuadForm& f) {
  return ideal_from_generators(K, {KElem::rational(K, abs(f.a)), KElem::from_uv(K, f.b, 1)});
}

QuadForm power(const std::function<QuadForm(const QuadForm&, const QuadForm&)>& mul, const QuadForm& id,
               const QuadForm& f, Integer n) {
  QuadForm base = n < 0 ? inverse_form(f) : f;
  if (n < 0) n = -n;
  QuadForm r = id;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = mul(r, base);
    n /= 2;
    if (n > 0) base = mul(base, base);
  }
  return r;
}

}  // namespace

std::string QuadForm::to_string() const {
  std::ostringstream os;
  os << "(" << chev::to_string(a) << "," << chev::to_string(b) << "," << chev::to_string(c) << ")";
  return os.str();
}

bool QuadForm::operator<(const QuadForm& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return c < o.c;
}

QuadForm principal_form(const Integer& D) {
  Integer delta = mod_floor(D, 4) == 0 ? Integer(0) : Integer(1);
  return QuadForm{1, delta, (delta - D) / 4};
}

QuadForm form_of(const QuadField& K, const Ideal& I) { return with_b(K.D, I.a, I.b); }

QuadForm inverse_form(const QuadForm& f) { return QuadForm{f.a, -f.b, f.c}; }

bool is_reduced(const QuadForm& f) {
  const Integer D = f.disc();
  if (D < 0) {
    if (abs(f.b) > f.a || f.a > f.c) return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
  }
  if (f.b <= 0 || f.b * f.b >= D) return false;
  Integer A = abs(f.a);
  Integer s = 2 * A + f.b;
  if (s * s <= D) return false;
  Integer t = 2 * A - f.b;
  return t <= 0 || t * t < D;
}

QuadForm rho(const QuadForm& f) {
  const Integer D = f.disc();
  return with_b(D, f.c, tau(D, -f.b, f.c));
}

QuadForm reduce(const QuadForm& f, std::size_t max_steps) {
  const Integer D = f.disc();
  if (D < 0) {
    if (f.a <= 0) throw InputError(ErrorCode::DegenerateInput, "definite forms must be positive");
    QuadForm g = with_b(D, f.a, tau(D, f.b, f.a));
    std::size_t steps = 0;
    while (!is_reduced(g)) {
      if (++steps > max_steps) throw EffortError(ErrorCode::EffortExceeded, "form reduction bound exceeded");
      if (g.a > g.c) g = with_b(D, g.c, tau(D, -g.b, g.c));
      else g = QuadForm{g.a, -g.b, g.c};  // a == c or |b| == a with b < 0
    }
    return g;
  }
  QuadForm g = with_b(D, f.a, tau(D, f.b, f.a));
  std::size_t steps = 0;
  while (!is_reduced(g)) {
    if (++steps > max_steps) throw EffortError(ErrorCode::EffortExceeded, "form reduction bound exceeded");
    g = rho(g);
  }
  return g;
}

QuadForm canonical(const QuadForm& f, std::size_t max_steps) {
  QuadForm g = reduce(f, max_steps);
  if (g.disc() < 0) return g;
  QuadForm best = g, cur = rho(g);
  std::size_t steps = 0;
  while (!(cur == g)) {
    if (++steps > max_steps) throw EffortError(ErrorCode::EffortExceeded, "form cycle bound exceeded");
    if (cur < best) best = cur;
    cur = rho(cur);
  }
  return best;
}

QuadForm compose(const QuadForm& f, const QuadForm& g0) {
  const Integer D = f.disc();
  if (g0.disc() != D) throw InputError(ErrorCode::DiscriminantMismatch, "forms of different discriminants");
  QuadForm g = coprime_to(g0, f.a);
  Integer a1 = abs(f.a), a2 = abs(g.a);
  Integer B;
  if (a2 == 1) {
    B = f.b;
  } else {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
    Integer t = mod_floor(((g.b - f.b) / 2) * inv, a2);
    B = f.b + 2 * a1 * t;
  }
  return canonical(with_b(D, f.a * g.a, B));
}

std::vector<QuadForm> reduced_forms(const Integer& D) {
  std::vector<QuadForm> out;
  if (D < 0) {
    const Integer absD = -D;
    for (Integer a = 1; 3 * a * a <= absD; ++a)
      for (Integer b = -a + 1; b <= a; ++b) {
        if ((b * b - D) % (4 * a) != 0) continue;
        QuadForm f = with_b(D, a, b);
        if (is_reduced(f)) out.push_back(f);
      }
    return out;
  }
  const Integer r = isqrt(D);
  for (Integer b = 1; b <= r; ++b) {
    if ((b * b - D) % 4 != 0) continue;
    Integer ac = (D - b * b) / 4;
    for (Integer a = 1; a <= ac; ++a) {
      if (ac % a != 0) continue;
      for (const Integer& sa : {a, Integer(-a)}) {
        QuadForm f = with_b(D, sa, b);
        if (is_reduced(f)) out.push_back(f);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct GreedyResult {
  std::map<QuadForm, IntVector> coords;
  std::vector<QuadForm> gens;
  Subquotient quotient;
  FinAbGroup structure;
};

GreedyResult greedy_structure(const std::vector<QuadForm>& classes, const QuadForm& id,
                              const std::function<QuadForm(const QuadForm&, const QuadForm&)>& mul) {
  GreedyResult R;
  R.coords[id] = {};
  std::vector<IntVector> rels;
  for (const auto& cand : classes) {
    if (R.coords.count(cand)) continue;
    const std::size_t r = R.gens.size();
    for (auto& [f, v] : R.coords) v.push_back(Integer(0));
    for (auto& rel : rels) rel.push_back(Integer(0));
    std::vector<QuadForm> powers{id, cand};
    while (!R.coords.count(powers.back())) powers.push_back(mul(powers.back(), cand));
    const std::size_t k = powers.size() - 1;
    IntVector rel = R.coords.at(powers.back());
    for (auto& x : rel) x = -x;
    rel[r] += static_cast<unsigned long>(k);
    rels.push_back(rel);
    auto old = R.coords;
    for (std::size_t j = 1; j < k; ++j)
      for (const auto& [h, v] : old) {
        IntVector w = v;
        w[r] += static_cast<unsigned long>(j);
        R.coords[mul(powers[j], h)] = w;
      }
    R.gens.push_back(cand);
  }
  const std::size_t n = R.gens.size();
  if (n == 0) return R;
  R.quotient = Subquotient(Lattice::full(n), rels);
  R.structure = R.quotient.group();
  return R;
}

}  // namespace

IntVector ClassGroup::dlog(const QuadForm& f) const {
  QuadForm c = class_of(f);
  auto it = greedy_.find(c);
  if (it == greedy_.end()) throw MathError(ErrorCode::DiscreteLogFailure, "class " + c.to_string() + " not enumerated");
  if (it->second.empty()) return {};
  return greedy_quotient_.normal_coordinates(it->second);
}

IntVector ClassGroup::dlog(const Ideal& I) const {
  if (narrow_) throw InputError(ErrorCode::BadSpec, "ideal discrete logarithm needs the ordinary group");
  return dlog(form_of(K_, chev::canonical(K_, I, max_steps_).reduced));
}

QuadForm ClassGroup::class_of(const QuadForm& f) const {
  if (f.disc() != K_.D) throw InputError(ErrorCode::DiscriminantMismatch, "form of another discriminant");
  if (narrow_) return chev::canonical(f, max_steps_);
  return form_of(K_, chev::canonical(K_, ideal_of(K_, ideal_form(K_, f)), max_steps_).reduced);
}

QuadForm ClassGroup::multiply(const QuadForm& f, const QuadForm& g) const {
  if (narrow_) return compose(f, g);
  Ideal p = chev::multiply(K_, ideal_of(K_, f), ideal_of(K_, g));
  return form_of(K_, chev::canonical(K_, p, max_steps_).reduced);
}

namespace {

void finish(std::vector<QuadForm>& classes, const QuadForm& id,
            const std::function<QuadForm(const QuadForm&, const QuadForm&)>& mul, GreedyResult& R,
            std::vector<QuadForm>& gen_forms) {
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  classes.erase(std::find(classes.begin(), classes.end(), id));
  classes.insert(classes.begin(), id);
  R = greedy_structure(classes, id, mul);
  if (R.coords.size() != classes.size())
    throw MathError(ErrorCode::CrossCheckFailed, "class enumeration is not closed under composition");
  gen_forms.clear();
  if (R.gens.empty()) return;
  for (const auto& v : R.quotient.factor_generators()) {
    QuadForm f = id;
    for (std::size_t i = 0; i < v.size(); ++i) f = mul(f, power(mul, id, R.gens[i], v[i]));
    gen_forms.push_back(f);
  }
}

}  // namespace

ClassGroup class_group(const QuadField& K, std::size_t max_steps) {
  ClassGroup C;
  C.K_ = K;
  C.narrow_ = false;
  C.max_steps_ = max_steps;
  std::vector<QuadForm> classes;
  for (const auto& I : reduced_ideals(K)) classes.push_back(form_of(K, canonical(K, I, max_steps).reduced));
  QuadForm id = form_of(K, canonical(K, unit_ideal(K), max_steps).reduced);
  auto mul = [&C](const QuadForm& f, const QuadForm& g) { return C.multiply(f, g); };
  GreedyResult R;
  finish(classes, id, mul, R, C.generator_forms_);
  C.classes_ = classes;
  C.greedy_ = std::move(R.coords);
  C.greedy_quotient_ = R.quotient;
  C.structure_ = R.structure;
  return C;
}

ClassGroup narrow_class_group(const QuadField& K, std::size_t max_steps) {
  ClassGroup C;
  C.K_ = K;
  C.narrow_ = true;
  C.max_steps_ = max_steps;
  std::vector<QuadForm> classes;
  for (const auto& f : reduced_forms(K.D)) classes.push_back(canonical(f, max_steps));
  QuadForm id = canonical(principal_form(K.D), max_steps);
  auto mul = [&C](const QuadForm& f, const QuadForm& g) { return C.multiply(f, g); };
  GreedyResult R;
  finish(classes, id, mul, R, C.generator_forms_);
  C.classes_ = classes;
  C.greedy_ = std::move(R.coords);
  C.greedy_quotient_ = R.quotient;
  C.structure_ = R.structure;
  return C;
}

IntVector prime_class(const ClassGroup& C, const Integer& p) {
  const QuadField& K = C.field();
  auto P = prime_ideal(K, p);
  if (!P) return IntVector(C.structure().invariant_factors.size(), Integer(0));
  IntVector v = C.dlog(form_of(K, *P));
  if (v.empty()) v.assign(C.structure().invariant_factors.size(), Integer(0));
  return v;
}

SClassGroup s_class_group(const QuadField& K, const SSet& S, std::size_t max_steps) {
  SClassGroup out;
  out.base = class_group(K, max_steps);
  out.S = S;
  const auto& inv = out.base.structure().invariant_factors;
  const std::size_t n = inv.size();
  std::vector<IntVector> bottom;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector v(n, Integer(0));
    v[i] = inv[i];
    bottom.push_back(v);
  }
  for (const auto& p : S.primes) {
    IntVector v = prime_class(out.base, p);
    out.prime_classes.push_back(v);
    bottom.push_back(v);
  }
  out.quotient = Subquotient(Lattice::full(n), bottom);
  out.structure = out.quotient.group();
  return out;
}

FinAbGroup ambiguous_subgroup(const SClassGroup& C) { return m_torsion(C.structure, 2); }

}  // namespace chev
