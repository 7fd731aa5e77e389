#include "chev/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace chev {

namespace {
int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
}  // namespace

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw InputError(ErrorCode::BadSpec, "matrix entry count does not match shape");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError(ErrorCode::BadSpec, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::size_t cols, const std::vector<IntVector>& rows) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError(ErrorCode::BadSpec, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw InputError(ErrorCode::BadSpec, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw InputError(ErrorCode::BadSpec, "determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw InputError(ErrorCode::BadSpec, "matrix product shape mismatch");
  IntMatrix r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        mpz_addmul(r(i, j).get_mpz_t(), aik.get_mpz_t(), other(k, j).get_mpz_t());
    }
  return r;
}

IntVector IntMatrix::operator*(const IntVector& x) const {
  if (cols_ != x.size()) throw InputError(ErrorCode::BadSpec, "matrix-vector shape mismatch");
  IntVector r(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      mpz_addmul(r[i].get_mpz_t(), (*this)(i, k).get_mpz_t(), x[k].get_mpz_t());
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError(ErrorCode::BadSpec, "matrix sum shape mismatch");
  IntMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += other.data_[k];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError(ErrorCode::BadSpec, "matrix difference shape mismatch");
  IntMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= other.data_[k];
  return r;
}

IntMatrix operator*(const Integer& k, const IntMatrix& m) {
  IntMatrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) *= k;
  return r;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
  if (rows_ != other.rows_) throw InputError(ErrorCode::BadSpec, "hconcat row mismatch");
  IntMatrix r(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) r(i, cols_ + j) = other(i, j);
  }
  return r;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& other) const {
  if (cols_ != other.cols_) throw InputError(ErrorCode::BadSpec, "vconcat column mismatch");
  IntMatrix r(rows_ + other.rows_, cols_);
  std::copy(data_.begin(), data_.end(), r.data_.begin());
  std::copy(other.data_.begin(), other.data_.end(), r.data_.begin() + static_cast<long>(data_.size()));
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- Smith form

namespace {

struct SnfWork {
  IntMatrix a;
  IntMatrix u;     // tracked when want_u
  IntMatrix v;     // tracked when want_v
  IntMatrix vinv;  // tracked when want_v
  bool want_u = false;
  bool want_v = false;
  std::size_t rank = 0;
};

void row_submul(IntMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    mpz_submul(m(target, j).get_mpz_t(), q.get_mpz_t(), m(source, j).get_mpz_t());
}

void col_submul(IntMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    mpz_submul(m(i, target).get_mpz_t(), q.get_mpz_t(), m(i, source).get_mpz_t());
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) mpz_swap(m(a, j).get_mpz_t(), m(b, j).get_mpz_t());
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) mpz_swap(m(i, a).get_mpz_t(), m(i, b).get_mpz_t());
}

void do_swap_rows(SnfWork& w, std::size_t a, std::size_t b) {
  swap_rows(w.a, a, b);
  if (w.want_u) swap_rows(w.u, a, b);
}

void do_swap_cols(SnfWork& w, std::size_t a, std::size_t b) {
  swap_cols(w.a, a, b);
  if (w.want_v) {
    swap_cols(w.v, a, b);
    swap_rows(w.vinv, a, b);
  }
}

// row_target -= q * row_source
void do_row_op(SnfWork& w, std::size_t target, std::size_t source, const Integer& q) {
  row_submul(w.a, target, source, q);
  if (w.want_u) row_submul(w.u, target, source, q);
}

// col_target -= q * col_source
void do_col_op(SnfWork& w, std::size_t target, std::size_t source, const Integer& q) {
  col_submul(w.a, target, source, q);
  if (w.want_v) {
    col_submul(w.v, target, source, q);
    // inverse row operation: row_source += q * row_target
    Integer neg = -q;
    row_submul(w.vinv, source, target, neg);
  }
}

bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (x == 0) continue;
      if (!found || cmpabs(x, best) < 0) {
        found = true;
        best = abs(x);
        pr = i;
        pc = j;
      }
    }
  return found;
}

void run_snf(SnfWork& w) {
  const std::size_t rows = w.a.rows(), cols = w.a.cols();
  if (w.want_u) w.u = IntMatrix::identity(rows);
  if (w.want_v) {
    w.v = IntMatrix::identity(cols);
    w.vinv = IntMatrix::identity(cols);
  }
  std::size_t t = 0;
  const std::size_t limit = std::min(rows, cols);
  Integer q;
  for (; t < limit; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(w.a, t, pr, pc)) break;
    do_swap_rows(w, t, pr);
    do_swap_cols(w, t, pc);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.a(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), w.a(i, t).get_mpz_t(), w.a(t, t).get_mpz_t());
        if (q != 0) do_row_op(w, i, t, q);
        if (w.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.a(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), w.a(t, j).get_mpz_t(), w.a(t, t).get_mpz_t());
        if (q != 0) do_col_op(w, j, t, q);
        if (w.a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // move the smallest remaining entry of row/column t to the pivot
        std::size_t br = t, bc = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (w.a(i, t) != 0 && cmpabs(w.a(i, t), w.a(br, bc)) < 0) {
            br = i;
            bc = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (w.a(t, j) != 0 && cmpabs(w.a(t, j), w.a(br, bc)) < 0) {
            br = t;
            bc = j;
          }
        do_swap_rows(w, t, br);
        do_swap_cols(w, t, bc);
        continue;
      }
      // divisibility of the remaining block by the pivot
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(w.a(i, j).get_mpz_t(), w.a(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      Integer minus_one = -1;
      do_row_op(w, t, bad_row, minus_one);
    }
    if (w.a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) w.a(t, j) = -w.a(t, j);
      if (w.want_u)
        for (std::size_t j = 0; j < rows; ++j) w.u(t, j) = -w.u(t, j);
    }
  }
  w.rank = t;
}

SnfWork snf(const IntMatrix& m, bool want_u, bool want_v) {
  SnfWork w;
  w.a = m;
  w.want_u = want_u;
  w.want_v = want_v;
  run_snf(w);
  return w;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SnfWork w = snf(m, true, true);
  return {std::move(w.u), std::move(w.a), std::move(w.v)};
}

std::vector<Integer> elementary_divisors(const IntMatrix& m) {
  SnfWork w = snf(m, false, false);
  std::vector<Integer> d;
  for (std::size_t i = 0; i < w.rank; ++i) d.push_back(w.a(i, i));
  return d;
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
  SnfWork w = snf(m, false, true);
  std::vector<IntVector> out;
  for (std::size_t j = w.rank; j < m.cols(); ++j) out.push_back(w.v.column(j));
  return out;
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw InputError(ErrorCode::BadSpec, "solve_integer: right-hand side length mismatch");
  SnfWork w = snf(m, true, true);
  IntVector c = w.u * b;
  IntVector z(m.cols(), Integer(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < w.rank) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), w.a(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(z[i].get_mpz_t(), c[i].get_mpz_t(), w.a(i, i).get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return w.v * z;
}

// ---------------------------------------------------------------- Lattice

Lattice::Lattice(std::size_t ambient, const std::vector<IntVector>& generators) : ambient_(ambient) {
  std::vector<IntVector> nonzero;
  for (const auto& g : generators) {
    if (g.size() != ambient) throw InputError(ErrorCode::BadSpec, "lattice generator has wrong length");
    if (std::any_of(g.begin(), g.end(), [](const Integer& x) { return x != 0; })) nonzero.push_back(g);
  }
  if (nonzero.empty()) {
    v_ = IntMatrix::identity(ambient);
    return;
  }
  SnfWork w = snf(IntMatrix::from_rows(ambient, nonzero), false, true);
  for (std::size_t i = 0; i < w.rank; ++i) {
    divisors_.push_back(w.a(i, i));
    IntVector b = w.vinv.row(i);
    for (auto& x : b) x *= w.a(i, i);
    basis_.push_back(std::move(b));
  }
  v_ = std::move(w.v);
}

Lattice Lattice::full(std::size_t n) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return Lattice(n, gens);
}

IntMatrix Lattice::basis_matrix() const { return IntMatrix::from_columns(ambient_, basis_); }

std::optional<IntVector> Lattice::coordinates(const IntVector& x) const {
  if (x.size() != ambient_) throw InputError(ErrorCode::BadSpec, "lattice coordinates: wrong vector length");
  IntVector c(basis_.size());
  Integer y;
  for (std::size_t j = 0; j < ambient_; ++j) {
    y = 0;
    for (std::size_t k = 0; k < ambient_; ++k)
      if (x[k] != 0) mpz_addmul(y.get_mpz_t(), x[k].get_mpz_t(), v_(k, j).get_mpz_t());
    if (j < basis_.size()) {
      if (!mpz_divisible_p(y.get_mpz_t(), divisors_[j].get_mpz_t())) return std::nullopt;
      mpz_divexact(c[j].get_mpz_t(), y.get_mpz_t(), divisors_[j].get_mpz_t());
    } else if (y != 0) {
      return std::nullopt;
    }
  }
  return c;
}

bool Lattice::contains(const Lattice& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const IntVector& b) { return contains(b); });
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  std::vector<IntVector> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Lattice(a.ambient_dim(), gens);
}

Lattice preimage(const IntMatrix& a, const Lattice& sub) {
  if (sub.ambient_dim() != a.rows()) throw InputError(ErrorCode::BadSpec, "preimage: dimension mismatch");
  IntMatrix system = a;
  if (sub.rank() > 0) system = a.hconcat(Integer(-1) * sub.basis_matrix());
  auto ker = integer_kernel(system);
  for (auto& k : ker) k.resize(a.cols());
  return Lattice(a.cols(), ker);
}

Lattice image_lattice(const IntMatrix& f, const Lattice& source) {
  std::vector<IntVector> gens;
  for (const auto& b : source.basis()) gens.push_back(f * b);
  return Lattice(f.rows(), gens);
}

// ---------------------------------------------------------------- groups

FinAbGroup FinAbGroup::cyclic(const Integer& n) { return from_orders({n}); }

FinAbGroup FinAbGroup::from_orders(const std::vector<Integer>& cyclic_orders, std::size_t free_rank) {
  FinAbGroup g = structure(FinAbPresentation(cyclic_orders.size(), IntMatrix::diagonal(cyclic_orders)));
  g.free_rank += free_rank;
  return g;
}

Integer FinAbGroup::order() const {
  if (free_rank > 0) throw MathError(ErrorCode::InfiniteCohomology, "group " + to_string() + " is infinite");
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

std::string FinAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  for (const auto& d : invariant_factors) s += (s.empty() ? "" : " x ") + std::string("Z/") + d.get_str();
  if (free_rank > 0) s += (s.empty() ? "" : " x ") + std::string("Z^") + std::to_string(free_rank);
  return s;
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<Integer> orders = a.invariant_factors;
  orders.insert(orders.end(), b.invariant_factors.begin(), b.invariant_factors.end());
  return FinAbGroup::from_orders(orders, a.free_rank + b.free_rank);
}

FinAbPresentation::FinAbPresentation(std::size_t gens, IntMatrix rels) : generators(gens), relations(std::move(rels)) {
  if (relations.cols() != generators) {
    if (relations.rows() == 0) {
      relations = IntMatrix(0, generators);
    } else {
      throw InputError(ErrorCode::BadSpec, "relation matrix column count must equal generator count");
    }
  }
}

FinAbPresentation FinAbPresentation::from_group(const FinAbGroup& g) {
  std::size_t n = g.invariant_factors.size() + g.free_rank;
  IntMatrix rels(g.invariant_factors.size(), n);
  for (std::size_t i = 0; i < g.invariant_factors.size(); ++i) rels(i, i) = g.invariant_factors[i];
  return FinAbPresentation(n, rels);
}

Lattice FinAbPresentation::relation_lattice() const {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < relations.rows(); ++i) rows.push_back(relations.row(i));
  return Lattice(generators, rows);
}

FinAbGroup structure(const FinAbPresentation& p) {
  auto d = elementary_divisors(p.relations);
  FinAbGroup g;
  for (const auto& x : d)
    if (x != 1) g.invariant_factors.push_back(x);
  g.free_rank = p.generators - d.size();
  return g;
}

// ---------------------------------------------------------------- Subquotient

Subquotient::Subquotient(Lattice top, const std::vector<IntVector>& bottom_generators)
    : top_(std::move(top)), bottom_(top_.ambient_dim(), bottom_generators) {
  const std::size_t r = top_.rank();
  std::vector<IntVector> rel_rows;
  for (const auto& b : bottom_.basis()) {
    auto c = top_.coordinates(b);
    if (!c) throw MathError(ErrorCode::CheckFailed, "subquotient bottom is not contained in top");
    rel_rows.push_back(std::move(*c));
  }
  SnfWork w = snf(IntMatrix::from_rows(r, rel_rows), false, true);
  snf_diag_.assign(r, Integer(0));
  for (std::size_t i = 0; i < w.rank; ++i) snf_diag_[i] = w.a(i, i);
  for (std::size_t i = 0; i < r; ++i) {
    if (i < w.rank) {
      if (snf_diag_[i] != 1) {
        kept_.push_back(i);
        group_.invariant_factors.push_back(snf_diag_[i]);
      }
    } else {
      kept_.push_back(i);
      ++group_.free_rank;
    }
  }
  to_normal_ = std::move(w.v);
  from_normal_ = std::move(w.vinv);
}

Subquotient Subquotient::of_presentation(const FinAbPresentation& p) {
  return Subquotient(Lattice::full(p.generators), p.relation_lattice());
}

FinAbPresentation Subquotient::presentation() const {
  std::vector<IntVector> rows;
  for (const auto& b : bottom_.basis()) rows.push_back(*top_.coordinates(b));
  return FinAbPresentation(top_.rank(), IntMatrix::from_rows(top_.rank(), rows));
}

IntVector Subquotient::normal_coordinates(const IntVector& x) const {
  auto c = top_.coordinates(x);
  if (!c) throw MathError(ErrorCode::CheckFailed, "element is not in the subquotient");
  const std::size_t r = top_.rank();
  IntVector out;
  out.reserve(kept_.size());
  for (std::size_t pos : kept_) {
    Integer y = 0;
    for (std::size_t k = 0; k < r; ++k) mpz_addmul(y.get_mpz_t(), (*c)[k].get_mpz_t(), to_normal_(k, pos).get_mpz_t());
    if (snf_diag_[pos] != 0) mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), snf_diag_[pos].get_mpz_t());
    out.push_back(std::move(y));
  }
  return out;
}

std::vector<IntVector> Subquotient::factor_generators() const {
  std::vector<IntVector> gens;
  const auto& basis = top_.basis();
  for (std::size_t pos : kept_) {
    IntVector v(ambient_dim(), Integer(0));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Integer& coef = from_normal_(pos, j);
      if (coef == 0) continue;
      for (std::size_t k = 0; k < v.size(); ++k) mpz_addmul(v[k].get_mpz_t(), coef.get_mpz_t(), basis[j][k].get_mpz_t());
    }
    gens.push_back(std::move(v));
  }
  return gens;
}

IntVector Subquotient::element_from_coordinates(const IntVector& coords) const {
  auto gens = factor_generators();
  if (coords.size() != gens.size()) throw InputError(ErrorCode::BadSpec, "coordinate vector has wrong length");
  IntVector v(ambient_dim(), Integer(0));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) mpz_addmul(v[k].get_mpz_t(), coords[i].get_mpz_t(), gens[i][k].get_mpz_t());
  return v;
}

// ---------------------------------------------------------------- maps

SubquotientMap SubquotientMap::from_ambient(std::shared_ptr<const Subquotient> src,
                                            std::shared_ptr<const Subquotient> dst, const IntMatrix& ambient) {
  SubquotientMap m;
  m.on_basis = ambient * src->top().basis_matrix();
  m.source = std::move(src);
  m.target = std::move(dst);
  return m;
}

IntVector SubquotientMap::apply(const IntVector& x) const {
  auto c = source->top().coordinates(x);
  if (!c) throw MathError(ErrorCode::CheckFailed, "map applied outside its source");
  return on_basis * *c;
}

bool SubquotientMap::is_well_defined() const {
  for (std::size_t j = 0; j < on_basis.cols(); ++j)
    if (!target->top().contains(on_basis.column(j))) return false;
  for (const auto& b : source->bottom().basis())
    if (!target->bottom().contains(apply(b))) return false;
  return true;
}

Lattice SubquotientMap::kernel_lattice() const {
  Lattice coords = preimage(on_basis, target->bottom());
  IntMatrix basis = source->top().basis_matrix();
  std::vector<IntVector> gens;
  for (const auto& c : coords.basis()) gens.push_back(basis * c);
  return Lattice(source->ambient_dim(), gens);
}

Subquotient SubquotientMap::kernel() const { return Subquotient(kernel_lattice(), source->bottom()); }

Subquotient SubquotientMap::image() const {
  std::vector<IntVector> gens = target->bottom().basis();
  for (std::size_t j = 0; j < on_basis.cols(); ++j) gens.push_back(on_basis.column(j));
  return Subquotient(Lattice(target->ambient_dim(), gens), target->bottom());
}

Subquotient SubquotientMap::cokernel() const { return Subquotient(target->top(), image().top()); }

bool SubquotientMap::is_injective() const { return kernel().group().is_trivial(); }

bool SubquotientMap::is_surjective() const { return cokernel().group().is_trivial(); }

bool SubquotientMap::is_zero() const {
  for (std::size_t j = 0; j < on_basis.cols(); ++j)
    if (!target->bottom().contains(on_basis.column(j))) return false;
  return true;
}

bool is_exact_at(const SubquotientMap& f, const SubquotientMap& g) {
  for (std::size_t j = 0; j < f.on_basis.cols(); ++j)
    if (!g.target->bottom().contains(g.apply(f.on_basis.column(j)))) return false;
  return f.image().top().contains(g.kernel_lattice());
}

// ---------------------------------------------------------------- AbHom

AbHom::AbHom(FinAbPresentation src, FinAbPresentation dst, IntMatrix m)
    : source(std::move(src)), target(std::move(dst)), matrix(std::move(m)) {
  if (matrix.rows() != target.generators || matrix.cols() != source.generators)
    throw InputError(ErrorCode::BadHom, "hom matrix shape does not match generator counts");
  Lattice rel = target.relation_lattice();
  for (std::size_t i = 0; i < source.relations.rows(); ++i) {
    if (!rel.contains(matrix * source.relations.row(i)))
      throw InputError(ErrorCode::BadHom, "a source relation does not map into the target relations");
  }
}

AbHom AbHom::compose_after(const AbHom& inner) const { return AbHom(inner.source, target, matrix * inner.matrix); }

namespace {

SubquotientMap as_map(const AbHom& f) {
  auto src = std::make_shared<const Subquotient>(Subquotient::of_presentation(f.source));
  auto dst = std::make_shared<const Subquotient>(Subquotient::of_presentation(f.target));
  return SubquotientMap::from_ambient(src, dst, f.matrix);
}

}  // namespace

HomDecomposition hom_kernel_image_cokernel(const AbHom& f) {
  SubquotientMap m = as_map(f);
  return {m.kernel(), m.image(), m.cokernel()};
}

Rational q_of_hom(const AbHom& f) {
  auto d = hom_kernel_image_cokernel(f);
  if (!d.kernel.group().is_finite() || !d.cokernel.group().is_finite())
    throw MathError(ErrorCode::InfiniteQ, "q(f) needs finite kernel and cokernel");
  Rational q(d.cokernel.group().order(), d.kernel.group().order());
  q.canonicalize();
  return q;
}

FinAbGroup m_torsion(const FinAbGroup& g, const Integer& m) {
  if (m < 1) throw InputError(ErrorCode::DegenerateInput, "m must be >= 1");
  std::vector<Integer> orders;
  for (const auto& d : g.invariant_factors) orders.push_back(gcd(d, m));
  return FinAbGroup::from_orders(orders);
}

FinAbGroup mod_m(const FinAbGroup& g, const Integer& m) {
  if (m < 1) throw InputError(ErrorCode::DegenerateInput, "m must be >= 1");
  std::vector<Integer> orders;
  for (const auto& d : g.invariant_factors) orders.push_back(gcd(d, m));
  for (std::size_t i = 0; i < g.free_rank; ++i) orders.push_back(m);
  return FinAbGroup::from_orders(orders);
}

FixedSubgroup fixed_subgroup(const FinAbPresentation& g, const AbHom& phi) {
  if (phi.source.generators != g.generators || phi.target.generators != g.generators)
    throw InputError(ErrorCode::BadHom, "phi must be an endomorphism of the presented group");
  auto d = hom_kernel_image_cokernel(phi);
  if (!d.kernel.group().is_trivial() || !d.cokernel.group().is_trivial())
    throw InputError(ErrorCode::NotAutomorphism, "phi is not an automorphism");
  AbHom shifted(g, g, phi.matrix - IntMatrix::identity(g.generators));
  auto k = hom_kernel_image_cokernel(shifted).kernel;
  return {k.group(), k};
}

std::vector<FinAbGroup> SixTermSequence::structures() const {
  std::vector<FinAbGroup> out;
  for (const auto& g : groups) out.push_back(g->group());
  return out;
}

SixTermSequence six_term_torsion_sequence(const AbHom& i, const AbHom& p, const Integer& m) {
  if (m < 1) throw InputError(ErrorCode::DegenerateInput, "m must be >= 1");
  if (i.target.generators != p.source.generators)
    throw InputError(ErrorCode::NotExactInput, "maps do not compose");
  SubquotientMap mi = as_map(i), mp = as_map(p);
  // reuse B so both maps share the same middle object
  mp.source = mi.target;
  if (!mi.is_injective() || !mp.is_surjective() || !is_exact_at(mi, mp))
    throw InputError(ErrorCode::NotExactInput, "input is not a short exact sequence");

  const std::size_t na = i.source.generators, nb = i.target.generators, nc = p.target.generators;
  const Lattice la = i.source.relation_lattice(), lb = i.target.relation_lattice(), lc = p.target.relation_lattice();
  auto torsion_part = [&](std::size_t n, const Lattice& l) {
    return std::make_shared<const Subquotient>(preimage(m * IntMatrix::identity(n), l), l);
  };
  auto quotient_part = [&](std::size_t n, const Lattice& l) {
    std::vector<IntVector> gens = l.basis();
    for (std::size_t k = 0; k < n; ++k) {
      IntVector v(n, Integer(0));
      v[k] = m;
      gens.push_back(std::move(v));
    }
    return std::make_shared<const Subquotient>(Lattice::full(n), Lattice(n, gens));
  };

  SixTermSequence seq;
  seq.groups = {torsion_part(na, la), torsion_part(nb, lb), torsion_part(nc, lc),
                quotient_part(na, la), quotient_part(nb, lb), quotient_part(nc, lc)};

  // connecting map: lift x in C_m to y in B, then m*y = i(z) modulo relations
  IntMatrix lift_system = p.matrix;
  if (lc.rank() > 0) lift_system = lift_system.hconcat(Integer(-1) * lc.basis_matrix());
  IntMatrix pull_system = i.matrix;
  if (lb.rank() > 0) pull_system = pull_system.hconcat(Integer(-1) * lb.basis_matrix());
  const auto& cm = *seq.groups[2];
  IntMatrix connecting(na, cm.top().rank());
  for (std::size_t k = 0; k < cm.top().rank(); ++k) {
    auto y = solve_integer(lift_system, cm.top().basis()[k]);
    if (!y) throw MathError(ErrorCode::CheckFailed, "lift through a surjection failed");
    IntVector my(y->begin(), y->begin() + static_cast<long>(nb));
    for (auto& x : my) x *= m;
    auto z = solve_integer(pull_system, my);
    if (!z) throw MathError(ErrorCode::CheckFailed, "connecting map: m*y is not in the image of i");
    for (std::size_t r = 0; r < na; ++r) connecting(r, k) = (*z)[r];
  }

  seq.maps.push_back(SubquotientMap::from_ambient(seq.groups[0], seq.groups[1], i.matrix));
  seq.maps.push_back(SubquotientMap::from_ambient(seq.groups[1], seq.groups[2], p.matrix));
  SubquotientMap c;
  c.source = seq.groups[2];
  c.target = seq.groups[3];
  c.on_basis = connecting;
  seq.maps.push_back(std::move(c));
  seq.maps.push_back(SubquotientMap::from_ambient(seq.groups[3], seq.groups[4], i.matrix));
  seq.maps.push_back(SubquotientMap::from_ambient(seq.groups[4], seq.groups[5], p.matrix));

  bool exact = std::all_of(seq.maps.begin(), seq.maps.end(), [](const SubquotientMap& f) { return f.is_well_defined(); });
  exact = exact && seq.maps[0].is_injective();
  for (std::size_t k = 0; exact && k + 1 < seq.maps.size(); ++k) exact = is_exact_at(seq.maps[k], seq.maps[k + 1]);
  exact = exact && seq.maps[4].is_surjective();
  seq.exact = exact;
  return seq;
}

}  // namespace chev
