#include "chev/quadfield.hpp"

#include <algorithm>
#include <sstream>

namespace chev {

std::string QuadField::name() const { return "Q(sqrt(" + chev::to_string(d) + "))"; }

QuadField make_field(const Integer& d, unsigned long effort_bound) {
  if (d == 0 || d == 1) throw InputError(ErrorCode::DegenerateInput, "d must not be 0 or 1");
  Integer ad = abs(d);
  if (ad != 1 && !is_squarefree(ad, effort_bound))
    throw InputError(ErrorCode::NotSquarefree, chev::to_string(d) + " is not squarefree");
  Integer r = d % 4;
  if (r < 0) r += 4;
  QuadField K;
  K.d = d;
  K.D = r == 1 ? d : Integer(4 * d);
  return K;
}

std::vector<Integer> fundamental_radicands(unsigned long limit, bool negative, bool positive) {
  std::vector<Integer> out;
  auto accept = [](const Integer& D) -> std::optional<Integer> {
    Integer r = D % 4;
    if (r < 0) r += 4;
    if (r == 1) {
      if (abs(D) == 1 || !is_squarefree(abs(D))) return std::nullopt;
      return D;
    }
    if (r != 0) return std::nullopt;
    Integer d = D / 4;
    Integer s = d % 4;
    if (s < 0) s += 4;
    if (s != 2 && s != 3) return std::nullopt;
    if (abs(d) != 1 && !is_squarefree(abs(d))) return std::nullopt;
    return d;
  };
  for (unsigned long n = 3; n <= limit; ++n) {
    if (negative)
      if (auto d = accept(-Integer(n))) out.push_back(*d);
    if (positive)
      if (auto d = accept(Integer(n))) out.push_back(*d);
  }
  return out;
}

KElem KElem::from_uv(const QuadField& K, const Integer& u, const Integer& v) {
  return KElem(Rational(u, 2), Rational(v, 2), K.D);
}

KElem KElem::omega(const QuadField& K) { return KElem(Rational(K.delta(), 2), Rational(1, 2), K.D); }

KElem KElem::operator+(const KElem& o) const { return KElem(a_ + o.a_, b_ + o.b_, D_); }
KElem KElem::operator-(const KElem& o) const { return KElem(a_ - o.a_, b_ - o.b_, D_); }
KElem KElem::operator*(const KElem& o) const {
  return KElem(a_ * o.a_ + b_ * o.b_ * D_, a_ * o.b_ + b_ * o.a_, D_);
}
KElem KElem::operator/(const KElem& o) const {
  Rational n = o.norm();
  if (n == 0) throw MathError(ErrorCode::DegenerateInput, "division by zero in K");
  KElem t = *this * o.conj();
  return KElem(t.a_ / n, t.b_ / n, D_);
}

KElem KElem::pow(long n) const {
  KElem base = n < 0 ? KElem(1, 0, D_) / *this : *this;
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  KElem r(1, 0, D_);
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool KElem::is_integral() const {
  Rational t = trace(), n = norm();
  return t.get_den() == 1 && n.get_den() == 1;
}

std::pair<Rational, Rational> KElem::omega_coordinates() const {
  Integer r = D_ % 4;
  if (r < 0) r += 4;
  Rational y = 2 * b_;
  Rational x = r == 0 ? a_ : Rational(a_ - b_);
  x.canonicalize();
  y.canonicalize();
  return {x, y};
}

std::pair<Integer, Integer> KElem::uv() const {
  Rational u = 2 * a_, v = 2 * b_;
  u.canonicalize();
  v.canonicalize();
  if (u.get_den() != 1 || v.get_den() != 1)
    throw MathError(ErrorCode::DegenerateInput, "element has no (u + v sqrt D)/2 form");
  return {u.get_num(), v.get_num()};
}

int KElem::real_sign() const {
  int s1 = sgn(a_), s2 = sgn(b_);
  if (s1 == 0) return s2;
  if (s2 == 0 || s1 == s2) return s1;
  Rational lhs = a_ * a_, rhs = b_ * b_ * D_;
  return lhs > rhs ? s1 : s2;
}

int KElem::compare_abs(const KElem& o) const {
  KElem x = real_sign() < 0 ? -*this : *this;
  KElem y = o.real_sign() < 0 ? -o : o;
  return (x - y).real_sign();
}

std::string KElem::to_string() const {
  Integer r = D_ % 4;
  if (r < 0) r += 4;
  Integer d = r == 0 ? Integer(D_ / 4) : D_;
  Rational y = r == 0 ? Rational(2 * b_) : b_;
  y.canonicalize();
  std::string root = d == -1 ? "i" : "sqrt(" + chev::to_string(d) + ")";
  std::ostringstream os;
  if (y == 0) return chev::to_string(a_);
  if (a_ != 0) os << chev::to_string(a_) << (y > 0 ? "+" : "-");
  else if (y < 0) os << "-";
  Rational ay = abs(y);
  if (ay != 1) os << chev::to_string(ay) << "*";
  os << root;
  return os.str();
}

const char* split_kind_name(SplitKind k) {
  switch (k) {
    case SplitKind::Split: return "split";
    case SplitKind::Inert: return "inert";
    case SplitKind::Ramified: return "ramified";
  }
  return "?";
}

std::string Place::to_string() const { return infinite() ? "inf" : chev::to_string(p); }

SplitData splitting(const QuadField& K, const Integer& p) {
  if (p < 2 || !is_prime(p)) throw InputError(ErrorCode::NotPrime, chev::to_string(p) + " is not prime");
  SplitData s;
  s.place = Place{p};
  switch (kronecker(K.D, p)) {
    case 0: s.kind = SplitKind::Ramified, s.e = 2, s.f = 1, s.g = 1; break;
    case 1: s.kind = SplitKind::Split, s.e = 1, s.f = 1, s.g = 2; break;
    default: s.kind = SplitKind::Inert, s.e = 1, s.f = 2, s.g = 1; break;
  }
  return s;
}

SplitData splitting(const QuadField& K, const Place& v) {
  if (!v.infinite()) return splitting(K, v.p);
  SplitData s;
  s.place = v;
  if (K.real()) {
    s.kind = SplitKind::Split, s.e = 1, s.f = 1, s.g = 2;
  } else {
    // complex conjugation: counted as a degree-two place
    s.kind = SplitKind::Inert, s.e = 1, s.f = 2, s.g = 1;
  }
  return s;
}

std::vector<Integer> ramified_primes(const QuadField& K) {
  std::vector<Integer> out;
  for (const auto& pp : factorize(abs(K.D)).factors) out.push_back(pp.prime);
  return out;
}

SSet::SSet(std::vector<Integer> ps) : primes(std::move(ps)) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
}

bool SSet::contains(const Integer& p) const { return std::binary_search(primes.begin(), primes.end(), p); }

std::vector<Place> SSet::places() const {
  std::vector<Place> out{Place::infinity()};
  for (const auto& p : primes) out.push_back(Place{p});
  return out;
}

std::string SSet::to_string() const {
  std::string s = "inf";
  for (const auto& p : primes) s += "," + chev::to_string(p);
  return s;
}

bool SSet::operator<(const SSet& o) const {
  if (primes.size() != o.primes.size()) return primes.size() < o.primes.size();
  return primes < o.primes;
}

SSet parse_sset(const std::string& s) {
  std::vector<Integer> ps;
  std::string tok;
  auto flush = [&]() {
    if (tok.empty()) return;
    if (tok == "inf" || tok == "infty" || tok == "oo" || tok == "infinity") {
    } else {
      Integer p;
      try {
        p = parse_integer(tok);
      } catch (const Error&) {
        throw InputError(ErrorCode::BadSpec, "bad place '" + tok + "'");
      }
      if (p < 2 || !is_prime(p)) throw InputError(ErrorCode::NotPrime, tok + " is not prime");
      ps.push_back(p);
    }
    tok.clear();
  };
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '{' || c == '}') flush();
    else tok += c;
  }
  flush();
  return SSet(std::move(ps));
}

MuNu mu_nu(const QuadField& K, const SSet& S) {
  MuNu r;
  for (const auto& v : S.places())
    if (splitting(K, v).local_degree() == 2) ++r.mu;
  for (const auto& p : ramified_primes(K))
    if (!S.contains(p)) ++r.nu;
  return r;
}

Integer smallest_split_prime(const QuadField& K, const SSet& S) {
  for (Integer p = 2;; ++p) {
    if (!is_prime(p) || S.contains(p)) continue;
    if (kronecker(K.D, p) == 1) return p;
  }
}

}  // namespace chev
