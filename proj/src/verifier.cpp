#include "chev/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace chev {

namespace {

std::string strip_code(const Error& e) {
  std::string w = e.what();
  auto pos = w.find(": ");
  return pos == std::string::npos ? w : w.substr(pos + 2);
}

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError(e.code(), name + ": " + strip_code(e));
  } catch (const EffortError& e) {
    throw EffortError(e.code(), name + ": " + strip_code(e));
  } catch (const MathError& e) {
    throw MathError(e.code(), name + ": " + strip_code(e));
  }
}

Rational reduced(Rational q) {
  q.canonicalize();
  return q;
}

struct TatePiece {
  Lattice top, bottom;
  FinAbGroup group;
};

struct TPlaces {
  std::vector<IntVector> classes;  // base class-group coordinates
  std::vector<std::size_t> partner;
  std::vector<Integer> prime_of;
};

TPlaces places_over(const QuadField& K, const SSet& S, const ClassGroup& C, const std::vector<Integer>& T) {
  TPlaces out;
  const std::size_t r = C.structure().invariant_factors.size();
  for (const auto& p : T) {
    if (p < 2 || !is_prime(p))
      throw InputError(ErrorCode::NotPrime, "truncation set entry " + to_string(p) + " is not prime");
    if (S.contains(p)) throw InputError(ErrorCode::BadSpec, "truncation prime " + to_string(p) + " lies in S");
    if (std::find(out.prime_of.begin(), out.prime_of.end(), p) != out.prime_of.end())
      throw InputError(ErrorCode::BadSpec, "truncation prime " + to_string(p) + " repeated");
    SplitData sd = splitting(K, p);
    IntVector c = sd.kind == SplitKind::Inert ? IntVector(r, Integer(0)) : prime_class(C, p);
    const std::size_t idx = out.classes.size();
    if (sd.kind == SplitKind::Split) {
      IntVector neg = c;
      for (auto& x : neg) x = -x;
      out.classes.push_back(c);
      out.classes.push_back(neg);
      out.partner.push_back(idx + 1);
      out.partner.push_back(idx);
      out.prime_of.push_back(p);
      out.prime_of.push_back(p);
    } else {
      out.classes.push_back(c);
      out.partner.push_back(idx);
      out.prime_of.push_back(p);
    }
  }
  return out;
}

TatePiece truncated_piece(const QuadField& K, const SSet& S, const std::vector<Integer>& T, int degree,
                          const Effort& effort) {
  if (degree != 0 && degree != -1) throw InputError(ErrorCode::BadSpec, "degree must be 0 or -1");
  SClassGroup Cs = stage("class group", [&] { return s_class_group(K, S, effort.max_steps); });
  TPlaces tp = places_over(K, S, Cs.base, T);
  const std::size_t n = tp.classes.size();
  const std::size_t r = Cs.base.structure().invariant_factors.size();

  Lattice L = Lattice::full(n);
  if (r > 0 && n > 0) L = preimage(IntMatrix::from_columns(r, tp.classes), Cs.quotient.bottom());

  IntMatrix sigma(n, n);
  for (std::size_t j = 0; j < n; ++j) sigma(tp.partner[j], j) = 1;
  const IntMatrix I = IntMatrix::identity(n);
  const IntMatrix B = L.basis_matrix();
  auto ambient = [&](const std::vector<IntVector>& coords) {
    std::vector<IntVector> v;
    for (const auto& c : coords) v.push_back(B * c);
    return Lattice(n, v);
  };
  auto columns = [&](const IntMatrix& m) {
    std::vector<IntVector> v;
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.column(j));
    return Lattice(n, v);
  };
  const std::size_t k = L.rank();
  TatePiece out;
  if (k == 0) {
    out.top = out.bottom = Lattice::zero(n);
    return out;
  }
  IntMatrix norm = (I + sigma) * B, aug = (sigma - I) * B;
  if (degree == 0) {
    out.top = ambient(integer_kernel(aug));
    out.bottom = columns(norm);
  } else {
    out.top = ambient(integer_kernel(norm));
    out.bottom = columns(aug);
  }
  out.group = Subquotient(out.top, out.bottom).group();
  return out;
}

Lattice pad(const Lattice& L, std::size_t n) {
  std::vector<IntVector> v;
  for (auto b : L.basis()) {
    b.resize(n, Integer(0));
    v.push_back(b);
  }
  return Lattice(n, v);
}

}  // namespace

ChevalleyReport verify_theorem_1_1(const QuadField& K, const SSet& S, const Effort& effort) {
  ChevalleyReport r;
  r.field = K;
  r.S = S;
  SClassGroup Cs = stage("class group", [&] { return s_class_group(K, S, effort.max_steps); });
  r.class_group = Cs.base.structure();
  r.s_class_group = Cs.structure;
  r.ambiguous = m_torsion(Cs.structure, 2);
  SUnitModule M = stage("S-units", [&] { return sunit_module(K, S, effort.max_steps); });
  WGroup W = stage("local norms", [&] { return w_group(K, S); });
  r.h1_k_mod_units = stage("H1(K*/O*)", [&] { return h1_k_mod_units(W, M); });
  r.h1_units = stage("H1(O*)", [&] { return h1_units(M); });
  for (const auto& p : ramified_primes(K))
    if (!S.contains(p)) {
      int e = splitting(K, p).e;
      r.ramification.push_back({p, e});
      r.e_product *= e;
    }
  r.lhs = reduced(Rational(r.ambiguous.order(), r.c_base));
  r.rhs = reduced(Rational(r.h1_k_mod_units.order() * r.e_product, r.h1_units.order()));
  r.verdict = r.lhs == r.rhs;

  r.h0_units_order = stage("H0(O*)", [&] { return tate_h0_units(M).order(); });
  Integer deg = 1;
  for (const auto& v : S.places()) deg *= splitting(K, v).local_degree();
  r.herbrand_quotient = reduced(Rational(r.h0_units_order, r.h1_units.order()));
  r.herbrand_expected = reduced(Rational(deg, 2));
  r.herbrand_ok = r.herbrand_quotient == r.herbrand_expected;
  return r;
}

GenusReport genus_cross_check(const QuadField& K, const Effort& effort) {
  if (!K.imaginary()) throw InputError(ErrorCode::BadSpec, "genus cross-check needs an imaginary field");
  GenusReport g;
  g.t = ramified_primes(K).size();
  g.expected = pow(Integer(2), static_cast<unsigned long>(g.t - 1));
  SClassGroup C = stage("class group", [&] { return s_class_group(K, SSet{}, effort.max_steps); });
  g.ambiguous_order = ambiguous_subgroup(C).order();
  g.ok = g.ambiguous_order == g.expected;
  if (!g.ok)
    throw MathError(ErrorCode::CheckFailed, "ambiguous classes " + to_string(g.ambiguous_order) + " != 2^(t-1) = " +
                                                to_string(g.expected) + " for " + K.name());
  return g;
}

FinAbGroup truncated_h0_explorer(const QuadField& K, const SSet& S, const std::vector<Integer>& T, int degree,
                                 const Effort& effort) {
  return truncated_piece(K, S, T, degree, effort).group;
}

std::vector<TruncatedH0> truncated_h0_chain(const QuadField& K, const SSet& S, const std::vector<Integer>& T,
                                            int degree, const Effort& effort) {
  std::vector<TruncatedH0> out;
  std::optional<TatePiece> prev;
  for (std::size_t m = 0; m <= T.size(); ++m) {
    std::vector<Integer> prefix(T.begin(), T.begin() + static_cast<long>(m));
    TatePiece cur = truncated_piece(K, S, prefix, degree, effort);
    TruncatedH0 row{prefix, degree, cur.group, true};
    if (prev) {
      const std::size_t n = cur.top.ambient_dim();
      Lattice image_top = lattice_sum(pad(prev->top, n), cur.bottom);
      Integer image = Subquotient(image_top, cur.bottom).group().order();
      row.injective_from_previous = image == prev->group.order();
    }
    out.push_back(row);
    prev = cur;
  }
  return out;
}

NormTorusReport norm_torus_report(const QuadField& K, const SSet& S, const std::vector<Integer>& truncation_primes,
                                  const Effort& effort) {
  NormTorusReport r;
  r.field = K;
  r.S = S;
  MuNu mn = mu_nu(K, S);
  r.mu = mn.mu;
  r.nu = mn.nu;
  SUnitModule M = stage("S-units", [&] { return sunit_module(K, S, effort.max_steps); });
  WGroup W = stage("local norms", [&] { return w_group(K, S); });
  r.h0_units = tate_h0_units(M).order();
  r.w_index = W.index;
  r.w_mod_norms = stage("W/N", [&] { return h1_k_mod_units(W, M).order(); });
  if (r.w_index * r.w_mod_norms != r.h0_units)
    throw MathError(ErrorCode::CrossCheckFailed, "[O*:W][W/N] differs from [H0(O*)]");

  auto g = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  r.q_product = 1;
  r.inertia_bound = 1;
  for (const auto& p : ramified_primes(K)) {
    if (S.contains(p)) continue;
    GTower tower(g, g->all(), g->all());
    QDeltaReport qd = stage("local factor", [&] { return local_factor_q_delta(tower); });
    LocalFactor lf{p, tower.e(), qd.q, Integer(0)};
    if (lf.q != Rational(1, lf.e))
      throw MathError(ErrorCode::CrossCheckFailed, "q(delta) at " + to_string(p) + " is " + to_string(lf.q));
    FiniteGroup dec = *tower.decomposition();
    lf.bound = Integer(tower.e()) / Integer(static_cast<long>(dec.commutator_subgroup().size()));
    r.q_product *= lf.q;
    r.inertia_bound *= lf.bound;
    r.local.push_back(lf);
  }
  r.q_product.canonicalize();
  long expo = static_cast<long>(r.mu + r.nu) - 1;
  Rational four = expo >= 0 ? Rational(pow(Integer(4), static_cast<unsigned long>(expo)))
                            : Rational(Integer(1), pow(Integer(4), static_cast<unsigned long>(-expo)));
  r.residual = reduced(four * Rational(r.h_base) / Rational(r.w_index));
  if (!truncation_primes.empty()) r.truncated = truncated_h0_chain(K, S, truncation_primes, 0, effort);
  return r;
}

SPolicy parse_s_policy(const std::string& s) {
  if (s == "infty" || s == "inf") return SPolicy::Infinity;
  if (s == "infty2" || s == "inf2" || s == "infty,2" || s == "inf,2") return SPolicy::InfinityTwo;
  if (s == "split" || s == "smallest-split") return SPolicy::SmallestSplit;
  if (s == "explicit") return SPolicy::Explicit;
  throw InputError(ErrorCode::BadSpec, "unknown S policy '" + s + "' (infty, infty2, split, explicit)");
}

std::string s_policy_name(SPolicy p) {
  switch (p) {
    case SPolicy::Infinity: return "infty";
    case SPolicy::InfinityTwo: return "infty2";
    case SPolicy::SmallestSplit: return "split";
    case SPolicy::Explicit: return "explicit";
  }
  return "?";
}

SSet resolve_s(const QuadField& K, SPolicy policy, const SSet& explicit_s) {
  switch (policy) {
    case SPolicy::Infinity: return SSet{};
    case SPolicy::InfinityTwo: return SSet(std::vector<Integer>{2});
    case SPolicy::SmallestSplit: return SSet(std::vector<Integer>{smallest_split_prime(K)});
    case SPolicy::Explicit: return explicit_s;
  }
  return SSet{};
}

const char* row_status_name(RowStatus s) {
  switch (s) {
    case RowStatus::Verified: return "verified";
    case RowStatus::Failed: return "failed";
    case RowStatus::Skipped: return "skipped";
  }
  return "?";
}

namespace {

SweepRow run_row(const Integer& d, const SweepOptions& o) {
  SweepRow row;
  row.d = d;
  try {
    QuadField K = make_field(d, o.effort.factor_effort);
    row.D = K.D;
    row.S = resolve_s(K, o.policy, o.explicit_s);
    row.report = verify_theorem_1_1(K, row.S, o.effort);
    bool ok = row.report->verdict;
    if (!ok) row.error = "LHS " + to_string(row.report->lhs) + " != RHS " + to_string(row.report->rhs);
    if (o.check_herbrand) {
      row.herbrand_ok = row.report->herbrand_ok;
      if (!*row.herbrand_ok) {
        ok = false;
        row.error += (row.error.empty() ? "" : "; ") + std::string("Herbrand quotient mismatch");
      }
    }
    if (o.check_genus && K.imaginary() && row.S.primes.empty()) {
      try {
        row.genus_ok = genus_cross_check(K, o.effort).ok;
      } catch (const MathError& e) {
        row.genus_ok = false;
        ok = false;
        row.error += (row.error.empty() ? "" : "; ") + std::string(e.what());
      }
    }
    row.status = ok ? RowStatus::Verified : RowStatus::Failed;
  } catch (const InputError& e) {
    row.status = RowStatus::Skipped, row.error = e.what(), row.error_category = 2;
  } catch (const EffortError& e) {
    row.status = RowStatus::Skipped, row.error = e.what(), row.error_category = 3;
  } catch (const MathError& e) {
    row.status = RowStatus::Skipped, row.error = e.what(), row.error_category = 1;
  }
  return row;
}

}  // namespace

SweepResult sweep(const SweepOptions& o) {
  auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  res.summary.dmin = o.dmin;
  res.summary.dmax = o.dmax;
  res.summary.policy = s_policy_name(o.policy);
  if (o.policy == SPolicy::Explicit) res.summary.policy += ":" + o.explicit_s.to_string();

  std::vector<Integer> ds;
  if (o.dmax >= o.dmin && o.dmax >= 3)
    for (const auto& d : fundamental_radicands(static_cast<unsigned long>(o.dmax), o.negative, o.positive))
      if (abs(make_field(d, o.effort.factor_effort).D) >= o.dmin) ds.push_back(d);
  res.rows.resize(ds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ds.size(); i = next++) res.rows[i] = run_row(ds[i], o);
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(o.threads, ds.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::sort(res.rows.begin(), res.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    Integer aa = abs(a.D == 0 ? a.d : a.D), ab = abs(b.D == 0 ? b.d : b.D);
    if (aa != ab) return aa < ab;
    if ((a.d < 0) != (b.d < 0)) return a.d < 0;
    return a.S < b.S;
  });
  for (const auto& row : res.rows) {
    ++res.summary.total;
    if (row.status == RowStatus::Verified) ++res.summary.verified;
    if (row.status == RowStatus::Failed) {
      ++res.summary.failed;
      res.summary.failures.push_back(to_string(row.d) + ": " + row.error);
    }
    if (row.status == RowStatus::Skipped) ++res.summary.skipped;
  }
  res.summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace chev
