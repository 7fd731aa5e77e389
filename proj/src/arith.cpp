#include "chev/arith.hpp"

#include <algorithm>
#include <map>

namespace chev {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::SquareInput: return "SquareInput";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotExactInput: return "NotExactInput";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::BadHom: return "BadHom";
    case ErrorCode::EffortExceeded: return "EffortExceeded";
    case ErrorCode::SearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorCode::InfiniteQ: return "InfiniteQ";
    case ErrorCode::InfiniteCohomology: return "InfiniteCohomology";
    case ErrorCode::CrossCheckFailed: return "CrossCheckFailed";
    case ErrorCode::DiscreteLogFailure: return "DiscreteLogFailure";
    case ErrorCode::CheckFailed: return "CheckFailed";
  }
  return "Unknown";
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer parse_integer(const std::string& s) {
  Integer n;
  if (s.empty() || n.set_str(s, 10) != 0) {
    throw InputError(ErrorCode::BadSpec, "not an integer: '" + s + "'");
  }
  return n;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw InputError(ErrorCode::BadSpec, "zero denominator: '" + s + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

long to_long(const Integer& n) {
  if (!n.fits_slong_p()) throw InputError(ErrorCode::BadSpec, "integer out of machine range: " + n.get_str());
  return n.get_si();
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw InputError(ErrorCode::DegenerateInput, "isqrt of negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

namespace {

Integer powmod(const Integer& b, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool miller_rabin_witness(const Integer& n, const Integer& d, unsigned long s, unsigned long a) {
  Integer x = powmod(Integer(a), d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;
}

const Integer& two_pow_64() {
  static const Integer v = pow(Integer(2), 64);
  return v;
}

}  // namespace

PrimalityResult primality(const Integer& value) {
  Integer n = abs(value);
  if (n < 2) return {false, true};
  static constexpr unsigned long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned long p : small) {
    if (n == p) return {true, true};
    if (n % p == 0) return {false, true};
  }
  if (n >= two_pow_64()) {
    // GMP runs Baillie-PSW followed by extra Miller-Rabin rounds.
    int r = mpz_probab_prime_p(n.get_mpz_t(), 30);
    return {r != 0, r == 2};
  }
  Integer d = n - 1;
  unsigned long s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // The first twelve prime bases are deterministic below 3.1 * 10^23.
  for (unsigned long a : small) {
    if (miller_rabin_witness(n, d, s, a)) return {false, true};
  }
  return {true, true};
}

Integer Factorization::product() const {
  Integer p = 1;
  for (const auto& f : factors) p *= pow(f.prime, f.exponent);
  return p;
}

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 if the
// iteration budget runs out.
Integer pollard_brent(const Integer& n, unsigned long budget) {
  if (n % 2 == 0) return 2;
  unsigned long spent = 0;
  for (unsigned long c = 1; spent < budget; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1;
    unsigned long r = 1;
    const unsigned long m = 64;
    while (g == 1 && spent < budget) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += lim;
        spent += lim;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void split_into(const Integer& n, unsigned long budget, std::map<Integer, unsigned long>& out,
                bool& probabilistic) {
  if (n == 1) return;
  auto pr = primality(n);
  if (pr.prime) {
    if (!pr.proven) probabilistic = true;
    out[n] += 1;
    return;
  }
  Integer f = pollard_brent(n, budget);
  if (f == 0) {
    throw EffortError(ErrorCode::EffortExceeded, "cofactor " + n.get_str() + " resisted the rho budget");
  }
  split_into(f, budget, out, probabilistic);
  split_into(n / f, budget, out, probabilistic);
}

}  // namespace

Factorization factorize(const Integer& n, unsigned long effort_bound) {
  if (n < 1) throw InputError(ErrorCode::DegenerateInput, "factorize requires n >= 1");
  Factorization result;
  result.value = n;
  std::map<Integer, unsigned long> found;
  Integer m = n;
  for (unsigned long p = 2; p <= 100000; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > m) break;
    if (m % p == 0) {
      unsigned long e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      found[Integer(p)] = e;
    }
  }
  if (m > 1) split_into(m, effort_bound, found, result.probabilistic);
  for (auto& [p, e] : found) result.factors.push_back({p, e});
  return result;
}

bool is_squarefree(const Integer& n, unsigned long effort_bound) {
  Integer m = abs(n);
  if (m == 0) return false;
  auto f = factorize(m, effort_bound);
  return std::all_of(f.factors.begin(), f.factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

int kronecker(const Integer& a, const Integer& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

std::optional<Integer> sqrt_mod(const Integer& a_in, const Integer& p) {
  if (p < 2 || !is_prime(p)) throw InputError(ErrorCode::NotPrime, p.get_str() + " is not prime");
  Integer a = a_in % p;
  if (a < 0) a += p;
  if (a == 0) return Integer(0);
  if (p == 2) return a;
  if (kronecker(a, p) != 1) return std::nullopt;
  // Tonelli-Shanks
  Integer q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (kronecker(z, p) != -1) ++z;
  Integer c = powmod(z, q, p);
  Integer x = powmod(a, (q + 1) / 2, p);
  Integer t = powmod(a, q, p);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Integer b = c;
    for (unsigned long j = 0; j + 1 < m - i; ++j) b = b * b % p;
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  Integer other = p - x;
  return std::min(x, other);
}

ContinuedFraction cont_frac_quadratic(const Integer& D) {
  if (D <= 0) throw InputError(ErrorCode::DegenerateInput, "continued fraction needs D > 0");
  if (is_square(D)) throw InputError(ErrorCode::SquareInput, D.get_str() + " is a perfect square");
  ContinuedFraction cf;
  cf.radicand = D;
  Integer dm4 = D % 4;
  cf.p0 = (dm4 == 1) ? 1 : 0;
  cf.q0 = (dm4 == 1) ? 2 : 1;
  const Integer root = isqrt(D);

  Integer P = cf.p0, Q = cf.q0;
  auto partial = [&](const Integer& p, const Integer& q) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), Integer(p + root).get_mpz_t(), q.get_mpz_t());
    return a;
  };
  cf.a0 = partial(P, Q);
  cf.pqa_p.push_back(P);
  cf.pqa_q.push_back(Q);

  Integer p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  Integer p_cur = cf.a0, q_cur = 1;
  cf.convergents.emplace_back(p_cur, q_cur);

  Integer a = cf.a0;
  P = a * Q - P;
  Q = (D - P * P) / Q;
  const Integer first_p = P, first_q = Q;
  for (;;) {
    cf.pqa_p.push_back(P);
    cf.pqa_q.push_back(Q);
    a = partial(P, Q);
    cf.period.push_back(a);
    Integer nextP = a * Q - P;
    Integer nextQ = (D - nextP * nextP) / Q;
    P = nextP;
    Q = nextQ;
    if (P == first_p && Q == first_q) break;
    Integer p_next = a * p_cur + p_prev;
    Integer q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    cf.convergents.emplace_back(p_cur, q_cur);
  }
  return cf;
}

}  // namespace chev
