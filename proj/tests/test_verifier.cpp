#include "chev/verifier.hpp"
#include "doctest.h"

using namespace chev;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> v;
  for (long x : xs) v.push_back(x);
  return v;
}

FinAbGroup elementary2(std::size_t r) { return FinAbGroup::from_orders(std::vector<Integer>(r, Integer(2))); }

}  // namespace

TEST_CASE("ambiguous class number formula: examples") {
  auto r5 = verify_theorem_1_1(make_field(-5), SSet{});
  CHECK(r5.lhs == 2);
  CHECK(r5.h1_k_mod_units.is_trivial());
  CHECK(r5.e_product == 4);
  CHECK(r5.h1_units.order() == 2);
  CHECK(r5.verdict);

  auto r1 = verify_theorem_1_1(make_field(-1), SSet{});
  CHECK(r1.lhs == 1);
  CHECK(r1.e_product == 2);
  CHECK(r1.h1_units.order() == 2);
  CHECK(r1.verdict);

  auto r34 = verify_theorem_1_1(make_field(34), SSet{});
  CHECK(r34.lhs == 2);
  CHECK(r34.h1_k_mod_units.order() == 2);
  CHECK(r34.e_product == 4);
  CHECK(r34.h1_units.order() == 4);
  CHECK(r34.rhs == 2);
  CHECK(r34.verdict);

  auto ri5 = verify_theorem_1_1(make_field(-1), parse_sset("inf,5"));
  CHECK(ri5.verdict);
  CHECK(ri5.herbrand_ok);
}

TEST_CASE("ambiguous class number formula over |D| <= 300 for several S") {
  for (auto policy : {SPolicy::Infinity, SPolicy::InfinityTwo, SPolicy::SmallestSplit}) {
    SweepOptions o;
    o.dmax = 300;
    o.policy = policy;
    auto res = sweep(o);
    CHECK(res.summary.total == res.rows.size());
    CHECK(res.summary.verified == res.summary.total);
    for (const auto& row : res.rows) {
      CHECK_MESSAGE(row.status == RowStatus::Verified, row.d << " " << row.error);
      CHECK(row.herbrand_ok.value_or(false));
    }
  }
}

TEST_CASE("genus cross-check") {
  auto g30 = genus_cross_check(make_field(-30));
  CHECK(g30.t == 3);
  CHECK(g30.ambiguous_order == 4);
  CHECK(genus_cross_check(make_field(-5)).ambiguous_order == 2);
  CHECK(genus_cross_check(make_field(-1)).ambiguous_order == 1);
  CHECK_THROWS_AS(genus_cross_check(make_field(5)), InputError);
  for (const auto& d : fundamental_radicands(1500, true, false)) {
    QuadField K = make_field(d);
    auto g = genus_cross_check(K);
    CHECK(g.ok);
    // agrees with the Chevalley left-hand side at S = {inf}
    CHECK(verify_theorem_1_1(K, SSet{}).lhs == Rational(g.ambiguous_order));
  }
}

TEST_CASE("norm torus report examples") {
  auto ri = norm_torus_report(make_field(-1), SSet{});
  CHECK(ri.mu == 1);
  CHECK(ri.nu == 1);
  CHECK(ri.h0_units == 2);
  CHECK(ri.w_index == 2);
  CHECK(ri.w_mod_norms == 1);
  CHECK(ri.q_product == Rational(1, 2));
  CHECK(ri.inertia_bound == 2);
  CHECK(ri.residual == 2);

  auto r2 = norm_torus_report(make_field(2), SSet{});
  CHECK(r2.mu == 0);
  CHECK(r2.nu == 1);
  CHECK(r2.w_index == 1);
  CHECK(r2.residual == 1);

  auto r5 = norm_torus_report(make_field(-5), SSet{});
  CHECK(r5.mu == 1);
  CHECK(r5.nu == 2);
  CHECK(r5.w_index == 2);
  CHECK(r5.residual == 8);
}

TEST_CASE("norm torus report: local factors invert ramification") {
  for (const auto& d : fundamental_radicands(200)) {
    QuadField K = make_field(d);
    for (const char* s : {"inf", "inf,2", "inf,3"}) {
      SSet S = parse_sset(s);
      auto r = norm_torus_report(K, S);
      Rational e = 1;
      for (const auto& p : ramified_primes(K))
        if (!S.contains(p)) e *= splitting(K, p).e;
      CHECK(r.q_product * e == 1);
      CHECK(r.q_product == Rational(1, pow(Integer(2), static_cast<unsigned long>(r.nu))));
      CHECK(r.local.size() == r.nu);
      CHECK(r.h0_units == r.w_index * r.w_mod_norms);
    }
  }
}

TEST_CASE("truncated H^0 explorer examples") {
  QuadField Ki = make_field(-1);
  CHECK(truncated_h0_explorer(Ki, SSet{}, {}).is_trivial());
  CHECK(truncated_h0_explorer(Ki, SSet{}, ints({2, 3, 5, 7})) == elementary2(3));
  CHECK(truncated_h0_explorer(Ki, SSet{}, ints({2, 3, 5, 7, 11})) == elementary2(4));
  CHECK(truncated_h0_explorer(Ki, SSet{}, ints({5, 13})).is_trivial());
  CHECK(truncated_h0_explorer(Ki, SSet{}, ints({3, 7}), -1).is_trivial());
  // Q(sqrt -5): the primes above 3 are non-principal, M_{3} = {(a, b) : a + b even}
  QuadField K5 = make_field(-5);
  CHECK(truncated_h0_explorer(K5, SSet{}, ints({3})) == FinAbGroup::cyclic(2));
  CHECK(truncated_h0_explorer(K5, SSet{}, ints({3}), -1) == FinAbGroup::cyclic(2));
  CHECK_THROWS_AS(truncated_h0_explorer(Ki, parse_sset("inf,5"), ints({5})), InputError);
  CHECK_THROWS_AS(truncated_h0_explorer(Ki, SSet{}, ints({6})), InputError);
  CHECK_THROWS_AS(truncated_h0_explorer(Ki, SSet{}, ints({3}), 1), InputError);
}

TEST_CASE("truncated explorer: class number one count and injective chains") {
  const auto T = ints({2, 3, 5, 7, 11, 13, 17, 19, 23});
  for (long d : {-1L, -2L, -3L, -7L, -11L, -19L, -43L, 2L, 3L, 5L, 13L, -5L, -14L, -23L, 10L, 79L}) {
    QuadField K = make_field(d);
    for (const char* s : {"inf", "inf,2"}) {
      SSet S = parse_sset(s);
      std::vector<Integer> t;
      for (const auto& p : T)
        if (!S.contains(p)) t.push_back(p);
      auto chain0 = truncated_h0_chain(K, S, t, 0);
      auto chainm = truncated_h0_chain(K, S, t, -1);
      REQUIRE(chain0.size() == t.size() + 1);
      if (s_class_group(K, S).structure.is_trivial()) {
        // M_T is a permutation module and a direct summand of M_T'
        for (const auto& row : chain0) CHECK(row.injective_from_previous);
        for (const auto& row : chainm) CHECK(row.injective_from_previous);
        for (const auto& row : chain0) {
          std::size_t nonsplit = 0;
          for (const auto& p : row.T)
            if (splitting(K, p).kind != SplitKind::Split) ++nonsplit;
          CHECK(row.group == elementary2(nonsplit));
        }
        for (const auto& row : chainm) CHECK(row.group.is_trivial());
      }
      for (const auto& row : chain0)
        for (const auto& f : row.group.invariant_factors) CHECK(f == 2);
    }
  }
}

TEST_CASE("truncation maps need not be injective once the class group is nontrivial") {
  // Q(sqrt -14): C_K = Z/4 = <c>, [P2] = c^2, [P3] = c, so P2 P3 / P3' lies in M_{2,3}
  // and its norm P2^2 kills the generator of H^0(M_{2}).
  auto chain = truncated_h0_chain(make_field(-14), SSet{}, ints({2, 3}), 0);
  REQUIRE(chain.size() == 3);
  CHECK(chain[1].group == FinAbGroup::cyclic(2));
  CHECK(!chain[2].injective_from_previous);
}

TEST_CASE("sweep plumbing") {
  SweepOptions empty;
  empty.dmin = 10;
  empty.dmax = 5;
  auto e = sweep(empty);
  CHECK(e.rows.empty());
  CHECK(e.summary.total == 0);

  SweepOptions o;
  o.dmax = 120;
  o.threads = 3;
  auto par = sweep(o);
  o.threads = 1;
  auto seq = sweep(o);
  REQUIRE(par.rows.size() == seq.rows.size());
  for (std::size_t i = 0; i < seq.rows.size(); ++i) {
    CHECK(par.rows[i].d == seq.rows[i].d);
    CHECK(par.rows[i].report->lhs == seq.rows[i].report->lhs);
  }
  for (std::size_t i = 1; i < seq.rows.size(); ++i) CHECK(abs(seq.rows[i - 1].D) <= abs(seq.rows[i].D));

  SweepOptions tight;
  tight.dmax = 200;
  tight.positive = true;
  tight.negative = false;
  tight.effort.max_steps = 2;
  auto t = sweep(tight);
  CHECK(t.summary.verified + t.summary.failed + t.summary.skipped == t.summary.total);
  CHECK(t.summary.skipped > 0);
  for (const auto& row : t.rows)
    if (row.status == RowStatus::Skipped) CHECK(row.error_category == 3);

  SweepOptions lo;
  lo.dmin = 2;
  lo.dmax = 50;
  auto small = sweep(lo);
  CHECK(small.summary.verified == small.summary.total);
  CHECK(small.summary.total > 0);
}
