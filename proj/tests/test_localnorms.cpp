#include <map>
#include <random>

#include "chev/localnorms.hpp"
#include "doctest.h"

using namespace chev;

namespace {

// z^2 = a x^2 + b y^2 over Q_p, decided by a primitive solution mod p^k.
// With v(a), v(b) in {0, 1} any primitive solution has a unit coordinate t with
// v(dF/dt) <= v(2) + 1, so k = 3 (odd p) or 5 (p = 2) lets Hensel lift it.
class SolubilityOracle {
 public:
  explicit SolubilityOracle(long p) : p_(p), m_(1) {
    for (int i = 0; i < (p == 2 ? 5 : 3); ++i) m_ *= p;
    any_.assign(m_, false);
    unit_.assign(m_, false);
    for (long z = 0; z < m_; ++z) {
      long r = z * z % m_;
      any_[r] = true;
      if (z % p_) unit_[r] = true;
    }
  }

  int operator()(long a, long b) {
    a = reduce(a);
    b = reduce(b);
    auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    long am = ((a % m_) + m_) % m_, bm = ((b % m_) + m_) % m_;
    int out = -1;
    for (long x = 0; x < m_ && out < 0; ++x)
      for (long y = 0; y < m_; ++y) {
        long r = (am * (x * x % m_) + bm * (y * y % m_)) % m_;
        bool primitive_xy = (x % p_) || (y % p_);
        if (primitive_xy ? any_[r] : unit_[r]) {
          out = 1;
          break;
        }
      }
    memo_[key] = out;
    return out;
  }

 private:
  long reduce(long a) const {
    while (a % (p_ * p_) == 0) a /= p_ * p_;
    return a;
  }
  long p_, m_;
  std::vector<bool> any_, unit_;
  std::map<std::pair<long, long>, int> memo_;
};

int hs(long a, long b, long p) { return hilbert_symbol(Rational(a), Rational(b), Place{Integer(p)}); }

const std::vector<long> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

}  // namespace

TEST_CASE("Hilbert symbol examples") {
  CHECK(hilbert_symbol(-1, -1, Place::infinity()) == -1);
  CHECK(hs(-1, -1, 2) == -1);
  CHECK(hs(2, 7, 7) == 1);
  CHECK(hs(-1, 5, 2) == 1);
  CHECK(hs(3, 3, 3) == -1);
  CHECK(hs(2, 3, 3) == -1);
  CHECK(hilbert_symbol(Rational(1, 2), Rational(-1, 3), Place{Integer(2)}) == hs(2, -3, 2));
  CHECK_THROWS_AS(hs(0, 3, 3), InputError);
}

TEST_CASE("Hilbert symbols agree with p-adic solubility") {
  for (long p : {2L, 3L, 5L, 7L}) {
    SolubilityOracle oracle(p);
    const long range = p == 7 ? 12 : 30;
    for (long a = -range; a <= range; ++a)
      for (long b = -range; b <= range; ++b) {
        if (a == 0 || b == 0) continue;
        CHECK_MESSAGE(hs(a, b, p) == oracle(a, b), "a=" << a << " b=" << b << " p=" << p);
      }
  }
}

TEST_CASE("Hilbert symbols: symmetry, product formula, unramified triviality") {
  for (long a = -30; a <= 30; ++a)
    for (long b = -30; b <= 30; ++b) {
      if (a == 0 || b == 0) continue;
      int prod = hilbert_symbol(a, b, Place::infinity());
      for (long p : kPrimes) {
        int s = hs(a, b, p);
        prod *= s;
        CHECK(s == hs(b, a, p));
        if (p != 2 && a % p && b % p) CHECK(s == 1);
      }
      CHECK(prod == 1);
    }
}

TEST_CASE("Hilbert symbols are bimultiplicative on random rationals") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<long> num(-200, 200), den(1, 60);
  auto rnd = [&] {
    long n = 0;
    while (n == 0) n = num(rng);
    return Rational(n, den(rng));
  };
  for (int t = 0; t < 400; ++t) {
    Rational a = rnd(), a2 = rnd(), b = rnd();
    a.canonicalize(), a2.canonicalize(), b.canonicalize();
    std::vector<Place> places{Place::infinity()};
    for (long p : kPrimes) places.push_back(Place{Integer(p)});
    int prod = 1;
    for (const auto& v : places) {
      CHECK(hilbert_symbol(a * a2, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v));
      CHECK(hilbert_symbol(a * a, b, v) == 1);
      CHECK(hilbert_symbol(a, -a, v) == 1);
    }
    // product formula once every prime of a and b is in the list
    Integer all = abs(a.get_num() * a.get_den() * b.get_num() * b.get_den());
    bool covered = true;
    for (const auto& f : factorize(all).factors)
      if (f.prime > 31) covered = false;
    if (!covered) continue;
    for (const auto& v : places) prod *= hilbert_symbol(a, b, v);
    CHECK(prod == 1);
  }
}

TEST_CASE("global norm examples") {
  QuadField Ki = make_field(-1), K2 = make_field(2);
  auto t5 = is_global_norm(5, Ki);
  CHECK(t5.is_norm);
  REQUIRE(t5.witness);
  CHECK(t5.witness->norm() == 5);
  CHECK(!is_global_norm(-1, Ki).is_norm);
  CHECK(!is_global_norm(3, Ki).is_norm);
  auto tm1 = is_global_norm(-1, K2);
  CHECK(tm1.is_norm);
  REQUIRE(tm1.witness);
  CHECK(tm1.witness->norm() == -1);
  auto frac = is_global_norm(Rational(5, 2), Ki);
  CHECK(frac.is_norm);
  REQUIRE(frac.witness);
  CHECK(frac.witness->norm() == Rational(5, 2));
}

TEST_CASE("local norm test agrees with an explicit norm search") {
  for (long d : {-1L, -2L, -3L, -5L, -7L, -15L, 2L, 3L, 5L, 6L, 7L, 13L, 34L}) {
    QuadField K = make_field(d);
    for (long x = -30; x <= 30; ++x) {
      if (x == 0) continue;
      auto t = is_global_norm(x, K);
      CHECK_MESSAGE(t.is_norm == t.witness.has_value(), "d=" << d << " x=" << x);
      if (t.witness) CHECK(t.witness->norm() == x);
    }
  }
}

TEST_CASE("W group examples") {
  auto Wi = w_group(make_field(-1), parse_sset("inf"));
  CHECK(Wi.index == 2);
  CHECK(Wi.w.rank() == 1);
  CHECK(!Wi.w.contains({1}));
  CHECK(w_group(make_field(2), parse_sset("inf")).index == 1);
  CHECK(w_group(make_field(34), parse_sset("inf")).index == 1);
  auto Wi5 = w_group(make_field(-1), parse_sset("inf,5"));
  CHECK(Wi5.index == 2);
  CHECK(Wi5.w.contains({0, 1}));
}

TEST_CASE("W group membership is the local norm test; index bounds") {
  std::size_t cases = 0;
  for (const auto& d : fundamental_radicands(120)) {
    QuadField K = make_field(d);
    for (const char* s : {"inf", "inf,2", "inf,3", "inf,2,5", "inf,3,7,11"}) {
      SSet S = parse_sset(s);
      auto W = w_group(K, S);
      Integer pw = 1;
      while (pw < W.index) pw *= 2;
      CHECK(pw == W.index);
      std::size_t bound = std::min(S.size() + 1, W.symbol_places.size());
      CHECK(W.index <= pow(Integer(2), bound));
      const std::size_t n = S.primes.size() + 1;
      std::vector<IntVector> vecs{IntVector(n, Integer(0))};
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<IntVector> next;
        for (const auto& v : vecs)
          for (long e : {0L, 1L, -1L, 2L}) {
            if (i == 0 && (e < 0 || e > 1)) continue;
            IntVector w = v;
            w[i] = e;
            next.push_back(w);
          }
        vecs = next;
      }
      for (const auto& v : vecs) {
        Rational u = v[0] == 1 ? -1 : 1;
        for (std::size_t i = 1; i < n; ++i) {
          Rational pe(pow(S.primes[i - 1], static_cast<unsigned long>(abs(to_long(v[i])))));
          u *= v[i] < 0 ? 1 / pe : pe;
        }
        CHECK(W.w.contains(v) == is_global_norm(u, K, 0).is_norm);
        ++cases;
      }
    }
  }
  CHECK(cases > 1000);
}

TEST_CASE("H^1 of K^* mod S-units: examples and index identity") {
  auto h = [](long d, const char* s) {
    QuadField K = make_field(d);
    SSet S = parse_sset(s);
    return h1_k_mod_units(w_group(K, S), sunit_module(K, S));
  };
  CHECK(h(-1, "inf").is_trivial());
  CHECK(h(34, "inf") == FinAbGroup::cyclic(2));
  CHECK(h(-1, "inf,5").is_trivial());
  CHECK(h(-5, "inf").is_trivial());
  for (const auto& d : fundamental_radicands(200)) {
    QuadField K = make_field(d);
    for (const char* s : {"inf", "inf,2", "inf,3,5"}) {
      SSet S = parse_sset(s);
      auto M = sunit_module(K, S);
      auto W = w_group(K, S);
      auto Q = h1_k_mod_units(W, M);
      CHECK(W.index * Q.order() == tate_h0_units(M).order());
      for (auto e : Q.invariant_factors) CHECK(e == 2);
    }
  }
}
