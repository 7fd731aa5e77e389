#include <random>
#include <set>

#include "chev/classgroup.hpp"
#include "doctest.h"

using namespace chev;

namespace {

// Reduced definite forms by direct search over |b| <= a <= c.
std::size_t count_reduced_forms(long D) {
  std::size_t n = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a; b <= a; ++b) {
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if ((b == -a || a == c) && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++n;
    }
  return n;
}

int t_ramified(const QuadField& K) { return static_cast<int>(ramified_primes(K).size()); }

}  // namespace

TEST_CASE("reduced forms examples") {
  CHECK(reduced_forms(-4) == std::vector<QuadForm>{{1, 0, 1}});
  CHECK(reduced_forms(-23).size() == 3);
  CHECK(reduced_forms(-3) == std::vector<QuadForm>{{1, 1, 1}});
  for (long D = -3; D >= -2000; --D) {
    long r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) continue;
    long d = r == 1 ? D : D / 4;
    bool fund = true;
    for (long q = 2; q * q <= std::labs(d); ++q)
      if (d % (q * q) == 0) fund = false;
    if (r == 0 && (((d % 4) + 4) % 4 == 1)) fund = false;
    if (!fund) continue;
    CHECK(reduced_forms(D).size() == count_reduced_forms(D));
  }
}

TEST_CASE("composition examples") {
  const Integer D = -23;
  QuadForm e = principal_form(D);
  auto forms = reduced_forms(D);
  for (const auto& f : forms) {
    CHECK(compose(e, f) == f);
    CHECK(compose(f, inverse_form(f)) == canonical(e));
  }
  QuadForm f{2, 1, 3};
  QuadForm f2 = compose(f, f);
  CHECK(!(f2 == f));
  CHECK(!(f2 == canonical(e)));
  CHECK(compose(f2, f) == canonical(e));
  CHECK_THROWS_AS(compose(f, QuadForm{1, 0, 1}), InputError);
  try {
    compose(f, QuadForm{1, 0, 1});
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DiscriminantMismatch);
  }
}

TEST_CASE("composition is an abelian group law for all |D| <= 500") {
  std::mt19937_64 rng(3);
  for (const auto& d : fundamental_radicands(500)) {
    QuadField K = make_field(d);
    ClassGroup C = narrow_class_group(K);
    const auto& cl = C.classes();
    const QuadForm e = cl.front();
    for (const auto& x : cl) {
      CHECK(C.multiply(e, x) == x);
      CHECK(C.multiply(x, inverse_form(x)) == e);
      for (const auto& y : cl) CHECK(C.multiply(x, y) == C.multiply(y, x));
    }
    for (int t = 0; t < 20; ++t) {
      const auto& x = cl[rng() % cl.size()];
      const auto& y = cl[rng() % cl.size()];
      const auto& z = cl[rng() % cl.size()];
      CHECK(C.multiply(C.multiply(x, y), z) == C.multiply(x, C.multiply(y, z)));
    }
    CHECK(C.order() == Integer(static_cast<unsigned long>(cl.size())));
  }
}

TEST_CASE("class group examples") {
  CHECK(class_group(make_field(-5)).structure() == FinAbGroup::cyclic(2));
  CHECK(class_group(make_field(10)).structure() == FinAbGroup::cyclic(2));
  CHECK(narrow_class_group(make_field(3)).structure() == FinAbGroup::cyclic(2));
  CHECK(class_group(make_field(3)).structure().is_trivial());
  CHECK(class_group(make_field(-23)).structure() == FinAbGroup::cyclic(3));
  CHECK(class_group(make_field(-14)).structure() == FinAbGroup::cyclic(4));
  CHECK(class_group(make_field(-21)).structure() == FinAbGroup::from_orders({2, 2}));
  CHECK(class_group(make_field(-105)).structure() == FinAbGroup::from_orders({2, 2, 2}));
  CHECK(class_group(make_field(-47)).order() == 5);
  CHECK(class_group(make_field(79)).order() == 3);
  CHECK(class_group(make_field(82)).order() == 4);
  CHECK(class_group(make_field(229)).order() == 3);
  CHECK(class_group(make_field(34)).order() == 2);
  CHECK(class_group(make_field(-1)).structure().is_trivial());
}

TEST_CASE("ordinary and narrow class groups agree for D < 0 and differ by N(eps) for D > 0") {
  for (const auto& d : fundamental_radicands(1000)) {
    QuadField K = make_field(d);
    ClassGroup C = class_group(K);
    ClassGroup N = narrow_class_group(K);
    if (K.imaginary()) {
      CHECK(C.structure() == N.structure());
      CHECK(C.order() == Integer(static_cast<unsigned long>(count_reduced_forms(to_long(K.D)))));
    } else {
      KElem eps = fundamental_unit(K);
      Integer ratio = eps.norm() == -1 ? 1 : 2;
      CHECK(N.order() == C.order() * ratio);
    }
  }
}

TEST_CASE("discrete logarithms respect the group law and generators realize the structure") {
  std::mt19937_64 rng(17);
  for (long d : {-5L, -14L, -21L, -105L, -47L, -299L, -1155L, 10L, 82L, 79L, 3L, 226L, 399L}) {
    for (bool narrow : {false, true}) {
      QuadField K = make_field(d);
      ClassGroup C = narrow ? narrow_class_group(K) : class_group(K);
      const auto& inv = C.structure().invariant_factors;
      REQUIRE(C.generator_forms().size() == inv.size());
      for (std::size_t i = 0; i < inv.size(); ++i) {
        IntVector v = C.dlog(C.generator_forms()[i]);
        for (std::size_t j = 0; j < inv.size(); ++j) CHECK(v[j] == (i == j ? 1 : 0));
      }
      const auto& cl = C.classes();
      std::set<IntVector> seen;
      for (const auto& x : cl) seen.insert(C.dlog(x));
      CHECK(seen.size() == cl.size());
      for (int t = 0; t < 30; ++t) {
        const auto& x = cl[rng() % cl.size()];
        const auto& y = cl[rng() % cl.size()];
        IntVector lhs = C.dlog(C.multiply(x, y));
        IntVector a = C.dlog(x), b = C.dlog(y);
        for (std::size_t j = 0; j < inv.size(); ++j) {
          Integer s = a[j] + b[j];
          CHECK(lhs[j] == s % inv[j]);
        }
      }
    }
  }
}

TEST_CASE("inversion is the Galois action") {
  for (long d : {-5L, -23L, -14L, -105L, 10L, 82L, 79L}) {
    QuadField K = make_field(d);
    ClassGroup C = class_group(K);
    for (const auto& x : C.classes()) {
      Ideal I = ideal_from_generators(K, {KElem::rational(K, x.a), KElem::from_uv(K, x.b, 1)});
      Ideal J = conjugate(K, I);
      CHECK(C.multiply(x, inverse_form(x)) == C.classes().front());
      CHECK(C.dlog(multiply(K, I, J)) == IntVector(C.structure().invariant_factors.size(), Integer(0)));
      CHECK(C.class_of(form_of(K, J)) == C.class_of(inverse_form(x)));
    }
  }
}

TEST_CASE("prime classes") {
  ClassGroup C5 = class_group(make_field(-5));
  CHECK(C5.dlog(QuadForm{3, 2, 2}) == IntVector{1});
  CHECK(prime_class(C5, 3) == IntVector{1});
  CHECK(prime_class(C5, 2) == IntVector{1});
  CHECK(prime_class(C5, 11) == IntVector{0});
  CHECK(prime_class(C5, 29) == IntVector{0});
  CHECK(prime_class(class_group(make_field(-1)), 5).empty());
}

TEST_CASE("S-class groups") {
  QuadField K = make_field(-5);
  CHECK(s_class_group(K, parse_sset("inf")).structure == FinAbGroup::cyclic(2));
  CHECK(s_class_group(K, parse_sset("inf,2")).structure.is_trivial());
  CHECK(s_class_group(K, parse_sset("inf,11")).structure == FinAbGroup::cyclic(2));
  CHECK(s_class_group(make_field(-1), parse_sset("inf,3,5")).structure.is_trivial());
  for (long d : {-14L, -105L, -299L, 82L, 226L}) {
    QuadField L = make_field(d);
    for (const char* s : {"inf", "inf,2", "inf,3", "inf,2,3,5,7"}) {
      auto C = s_class_group(L, parse_sset(s));
      CHECK(C.base.order() % C.order() == 0);
    }
  }
}

TEST_CASE("ambiguous subgroup is the 2-torsion") {
  SClassGroup C;
  C.structure = FinAbGroup::cyclic(2);
  CHECK(ambiguous_subgroup(C) == FinAbGroup::cyclic(2));
  C.structure = FinAbGroup::cyclic(3);
  CHECK(ambiguous_subgroup(C).is_trivial());
  C.structure = FinAbGroup::from_orders({2, 4});
  CHECK(ambiguous_subgroup(C).order() == 4);
}

TEST_CASE("genus theory: [C_K[2]] = 2^(t-1) for imaginary |D| <= 2000") {
  for (const auto& d : fundamental_radicands(2000, true, false)) {
    QuadField K = make_field(d);
    auto C = s_class_group(K, SSet{});
    CHECK(ambiguous_subgroup(C).order() == pow(Integer(2), static_cast<unsigned long>(t_ramified(K) - 1)));
  }
}
