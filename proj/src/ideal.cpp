#include "chev/ideal.hpp"

#include <algorithm>
#include <sstream>

namespace chev {

namespace {

Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

// b reduced modulo 2a into the window used for the field's sign.
Integer normalize_b(const QuadField& K, const Integer& a, const Integer& b) {
  Integer two_a = 2 * a;
  if (K.real() && a * a < K.D) {
    Integer r = isqrt(K.D);
    return r - mod_floor(r - b, two_a);
  }
  Integer t = mod_floor(b, two_a);  // [0, 2a)
  if (t > a) t -= two_a;
  return t;
}

Ideal make_primitive(const QuadField& K, const Integer& k, const Integer& a, const Integer& b) {
  Ideal I;
  I.k = k;
  I.a = a;
  I.b = normalize_b(K, a, b);
  return I;
}

Integer c_of(const QuadField& K, const Ideal& x) { return (x.b * x.b - K.D) / (4 * x.a); }

KElem beta_of(const QuadField& K, const Ideal& x) { return KElem::from_uv(K, x.b, 1); }

std::pair<Integer, Integer> int_omega_coords(const KElem& x) {
  auto [p, q] = x.omega_coordinates();
  if (p.get_den() != 1 || q.get_den() != 1) throw MathError(ErrorCode::DegenerateInput, "element is not integral");
  return {p.get_num(), q.get_num()};
}

}  // namespace

std::string Ideal::to_string() const {
  std::ostringstream os;
  if (k != 1) os << chev::to_string(k) << "*";
  os << "[" << chev::to_string(a) << ", (" << chev::to_string(b) << "+sqrtD)/2]";
  return os.str();
}

Ideal ideal_from_generators(const QuadField& K, const std::vector<KElem>& gens) {
  std::vector<std::pair<Integer, Integer>> v;
  const KElem w = KElem::omega(K);
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    v.push_back(int_omega_coords(g));
    v.push_back(int_omega_coords(g * w));
  }
  if (v.empty()) throw InputError(ErrorCode::DegenerateInput, "zero ideal");
  // Euclid on the omega coordinate
  for (;;) {
    std::size_t piv = v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i].second != 0 && (piv == v.size() || abs(v[i].second) < abs(v[piv].second))) piv = i;
    bool done = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i == piv || v[i].second == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), v[i].second.get_mpz_t(), v[piv].second.get_mpz_t());
      v[i].first -= q * v[piv].first;
      v[i].second -= q * v[piv].second;
      if (v[i].second != 0) done = false;
    }
    if (done) {
      std::swap(v[0], v[piv]);
      break;
    }
  }
  if (v[0].second < 0) v[0] = {-v[0].first, -v[0].second};
  Integer k = v[0].second;
  Integer n = 0;
  for (std::size_t i = 1; i < v.size(); ++i) n = gcd(n, v[i].first);
  if (n == 0) throw MathError(ErrorCode::DegenerateInput, "generators do not span a full lattice");
  Integer m = mod_floor(v[0].first, n);
  if (n % k != 0 || m % k != 0) throw MathError(ErrorCode::CrossCheckFailed, "lattice is not an ideal");
  Integer a = n / k;
  Integer b = 2 * (m / k) + K.delta();
  if ((b * b - K.D) % (4 * a) != 0) throw MathError(ErrorCode::CrossCheckFailed, "lattice is not an ideal");
  return make_primitive(K, k, a, b);
}

Ideal unit_ideal(const QuadField& K) { return make_primitive(K, 1, 1, K.delta()); }

Ideal principal_ideal(const QuadField& K, const KElem& alpha) { return ideal_from_generators(K, {alpha}); }

std::pair<KElem, KElem> ideal_basis(const QuadField& K, const Ideal& x) {
  KElem k = KElem::rational(K, x.k);
  return {k * KElem::rational(K, x.a), k * beta_of(K, x)};
}

Ideal multiply(const QuadField& K, const Ideal& x, const Ideal& y) {
  auto [x1, x2] = ideal_basis(K, x);
  auto [y1, y2] = ideal_basis(K, y);
  return ideal_from_generators(K, {x1 * y1, x1 * y2, x2 * y1, x2 * y2});
}

Ideal conjugate(const QuadField& K, const Ideal& x) {
  auto [x1, x2] = ideal_basis(K, x);
  return ideal_from_generators(K, {x1.conj(), x2.conj()});
}

Ideal ideal_pow(const QuadField& K, const Ideal& x, unsigned long n) {
  Ideal r = unit_ideal(K), base = x;
  while (n) {
    if (n & 1) r = multiply(K, r, base);
    n >>= 1;
    if (n) base = multiply(K, base, base);
  }
  return r;
}

bool contains(const QuadField& K, const Ideal& x, const KElem& alpha) {
  auto [p, q] = alpha.omega_coordinates();
  if (p.get_den() != 1 || q.get_den() != 1) return false;
  Integer X = p.get_num(), Y = q.get_num();
  if (Y % x.k != 0) return false;
  Integer t = Y / x.k;
  Integer rest = X - t * x.k * ((x.b - K.delta()) / 2);
  return rest % (x.k * x.a) == 0;
}

std::optional<Ideal> prime_ideal(const QuadField& K, const Integer& p) {
  if (kronecker(K.D, p) == -1) return std::nullopt;
  Integer four_p = 4 * p;
  for (Integer b = 0; b < 2 * p; ++b) {
    if ((b - K.D) % 2 != 0) continue;
    if (mod_floor(b * b - K.D, four_p) == 0) {
      return make_primitive(K, 1, p, b);
    }
  }
  throw MathError(ErrorCode::CrossCheckFailed, "no square root of D modulo 4p");
}

long valuation(const QuadField& K, const Ideal& prime, const KElem& alpha) {
  if (alpha.is_zero()) throw InputError(ErrorCode::DegenerateInput, "valuation of zero");
  Integer m = lcm(alpha.a().get_den(), alpha.b().get_den());
  KElem beta = alpha * KElem::rational(K, m);
  auto count = [&](const KElem& x) {
    long v = 0;
    Ideal power = prime;
    while (contains(K, power, x)) {
      ++v;
      power = multiply(K, power, prime);
    }
    return v;
  };
  return count(beta) - count(KElem::rational(K, m));
}

bool is_reduced(const QuadField& K, const Ideal& x) {
  if (!x.is_primitive()) return false;
  const Integer& a = x.a;
  const Integer& b = x.b;
  if (K.imaginary()) {
    Integer c = c_of(K, x);
    if (abs(b) > a || a > c) return false;
    if ((abs(b) == a || a == c) && b < 0) return false;
    return true;
  }
  if (b <= 0 || b * b >= K.D) return false;
  Integer s = 2 * a + b;
  if (s * s <= K.D) return false;
  Integer t = 2 * a - b;
  return t <= 0 || t * t < K.D;
}

Reduction rho(const QuadField& K, const Ideal& x) {
  Integer c = abs(c_of(K, x));
  Reduction r;
  r.gamma = beta_of(K, x) / KElem::rational(K, c);
  r.reduced = make_primitive(K, 1, c, -x.b);
  return r;
}

Reduction reduce(const QuadField& K, const Ideal& x, std::size_t max_steps) {
  Reduction out;
  out.gamma = KElem::rational(K, x.k);
  Ideal cur = make_primitive(K, 1, x.a, x.b);
  std::size_t steps = 0;
  while (!is_reduced(K, cur)) {
    if (++steps > max_steps) throw EffortError(ErrorCode::EffortExceeded, "ideal reduction did not terminate");
    Reduction r = rho(K, cur);
    out.gamma = out.gamma * r.gamma;
    cur = r.reduced;
  }
  out.reduced = cur;
  return out;
}

std::vector<Ideal> reduced_ideals(const QuadField& K) {
  std::vector<Ideal> out;
  const Integer absD = abs(K.D);
  if (K.imaginary()) {
    // a <= sqrt(|D|/3)
    for (Integer a = 1; 3 * a * a <= absD; ++a)
      for (Integer b = -a + 1; b <= a; ++b) {
        if ((b - K.D) % 2 != 0) continue;
        if ((b * b - K.D) % (4 * a) != 0) continue;
        Ideal I = make_primitive(K, 1, a, b);
        if (is_reduced(K, I)) out.push_back(I);
      }
    return out;
  }
  const Integer r = isqrt(K.D);
  for (Integer b = 1; b <= r; ++b) {
    if ((b - K.D) % 2 != 0) continue;
    Integer ac = (K.D - b * b) / 4;
    for (Integer a = 1; a * a <= ac; ++a) {
      if (ac % a != 0) continue;
      for (const Integer& aa : {a, Integer(ac / a)}) {
        Ideal I;
        I.k = 1;
        I.a = aa;
        I.b = b;
        if (is_reduced(K, I) && normalize_b(K, aa, b) == b &&
            std::find(out.begin(), out.end(), I) == out.end())
          out.push_back(I);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Ideal& x, const Ideal& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return out;
}

Reduction canonical(const QuadField& K, const Ideal& x, std::size_t max_steps) {
  Reduction red = reduce(K, x, max_steps);
  if (K.imaginary()) return red;
  Reduction best = red;
  KElem acc = red.gamma;
  Ideal cur = red.reduced;
  std::size_t steps = 0;
  for (;;) {
    if (++steps > max_steps) throw EffortError(ErrorCode::EffortExceeded, "rho cycle bound exceeded");
    Reduction r = rho(K, cur);
    acc = acc * r.gamma;
    cur = r.reduced;
    if (cur == red.reduced) break;
    if (cur.a < best.reduced.a || (cur.a == best.reduced.a && cur.b < best.reduced.b)) {
      best.reduced = cur;
      best.gamma = acc;
    }
  }
  return best;
}

std::optional<KElem> generator(const QuadField& K, const Ideal& x, std::size_t max_steps) {
  Reduction c = canonical(K, x, max_steps);
  if (c.reduced.a != 1) return std::nullopt;
  return normalize_generator(K, c.gamma);
}

int torsion_order(const QuadField& K) {
  if (K.D == -4) return 4;
  if (K.D == -3) return 6;
  return 2;
}

KElem torsion_generator(const QuadField& K) {
  if (K.D == -4) return KElem::from_uv(K, 0, 1);
  if (K.D == -3) return KElem::from_uv(K, 1, 1);
  return KElem::rational(K, -1);
}

KElem fundamental_unit(const QuadField& K) {
  if (!K.real()) throw InputError(ErrorCode::DegenerateInput, "fundamental unit needs a real field");
  ContinuedFraction cf = cont_frac_quadratic(K.d);
  const auto& [p, q] = cf.convergents.back();
  KElem eps = K.delta() == 1 ? KElem::from_uv(K, 2 * p - q, q) : KElem::from_uv(K, 2 * p, q);
  if (abs(eps.norm()) != 1) throw MathError(ErrorCode::CrossCheckFailed, "convergent is not a unit");
  return eps;
}

KElem normalize_generator(const QuadField& K, const KElem& alpha) {
  if (K.imaginary()) {
    const int t = torsion_order(K);
    const KElem z = torsion_generator(K);
    std::optional<KElem> best;
    KElem cur = alpha;
    for (int j = 0; j < t; ++j, cur = cur * z) {
      bool ok = (cur.a() > 0 && cur.b() >= 0) || (cur.a() == 0 && cur.b() > 0);
      if (ok && (!best || cur.b() < best->b())) best = cur;
    }
    if (!best) return alpha.a() > 0 ? alpha : -alpha;  // only +-1 as units
    return *best;
  }
  KElem x = alpha.real_sign() < 0 ? -alpha : alpha;
  const KElem eps = fundamental_unit(K);
  const KElem eps2 = eps * eps;
  const KElem one = KElem::one(K);
  const Rational n = abs(x.norm());
  for (;;) {
    KElem t = x * x / KElem::rational(K, n);
    if (t.compare_abs(eps2) >= 0) {
      x = x / eps;
    } else if (t.compare_abs(one) < 0) {
      x = x * eps;
    } else {
      break;
    }
  }
  return x;
}

}  // namespace chev
