#include "kkcalc/zmodule.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kkcalc {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw std::invalid_argument("IntMatrix: entry count mismatch");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("IntMatrix::from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
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

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t a, std::size_t b, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j)
    if ((*this)(b, j) != 0) mpz_addmul((*this)(a, j).get_mpz_t(), k.get_mpz_t(), (*this)(b, j).get_mpz_t());
}

void IntMatrix::add_col_multiple(std::size_t a, std::size_t b, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i)
    if ((*this)(i, b) != 0) mpz_addmul((*this)(i, a).get_mpz_t(), k.get_mpz_t(), (*this)(i, b).get_mpz_t());
}

void IntMatrix::negate_row(std::size_t a) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
}

void IntMatrix::negate_col(std::size_t a) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
}

void IntMatrix::set_block(std::size_t row0, std::size_t col0, const IntMatrix& block) {
  if (row0 + block.rows_ > rows_ || col0 + block.cols_ > cols_)
    throw std::out_of_range("IntMatrix::set_block");
  for (std::size_t i = 0; i < block.rows_; ++i)
    for (std::size_t j = 0; j < block.cols_; ++j) (*this)(row0 + i, col0 + j) = block(i, j);
}

IntMatrix IntMatrix::stack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.rows_ == 0) return bottom.rows_ == 0 ? IntMatrix(0, std::max(top.cols_, bottom.cols_)) : bottom;
  if (bottom.rows_ == 0) return top;
  if (top.cols_ != bottom.cols_) throw std::invalid_argument("IntMatrix::stack: column mismatch");
  IntMatrix m(top.rows_ + bottom.rows_, top.cols_);
  m.set_block(0, 0, top);
  m.set_block(top.rows_, 0, bottom);
  return m;
}

IntMatrix IntMatrix::block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows_;
    c += b.cols_;
  }
  IntMatrix m(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows_;
    c += b.cols_;
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix product: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("IntMatrix sum: shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("IntMatrix difference: shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("IntMatrix * vector: dimension mismatch");
  IntVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0 && a(i, j) != 0) y[i] += a(i, j) * x[j];
  return y;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector add: length mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

IntVector subtract(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector subtract: length mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

IntVector scale(const Int& k, const IntVector& a) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
  return c;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Int d = determinant(m);
  return d == 1 || d == -1;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "," : "") << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

Int truncated_quotient(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct SmithWork {
  IntMatrix d, u, v, vi;
  bool track_u = true;
  bool track_vi = true;

  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    if (track_u) u.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
    if (track_vi) vi.swap_rows(a, b);
  }
  void add_row(std::size_t a, std::size_t b, const Int& k) {
    d.add_row_multiple(a, b, k);
    if (track_u) u.add_row_multiple(a, b, k);
  }
  void add_col(std::size_t a, std::size_t b, const Int& k) {
    d.add_col_multiple(a, b, k);
    v.add_col_multiple(a, b, k);
    if (track_vi) vi.add_row_multiple(b, a, -k);
  }
  void negate_row(std::size_t a) {
    d.negate_row(a);
    if (track_u) u.negate_row(a);
  }
};

// Smallest |entry| in the submatrix [t.., t..]; ties by row then column.
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Int& x = d(i, j);
      if (x == 0) continue;
      if (!found || mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) < 0) {
        best = abs(x);
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

namespace {

SmithForm smith_impl(const IntMatrix& m, bool track_u, bool track_vi) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithWork w{m, track_u ? IntMatrix::identity(rows) : IntMatrix(), IntMatrix::identity(cols),
              track_vi ? IntMatrix::identity(cols) : IntMatrix(), track_u, track_vi};
  std::size_t rank = 0;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(w.d, t, pi, pj)) break;
    for (;;) {
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.d(i, t) == 0) continue;
        w.add_row(i, t, -truncated_quotient(w.d(i, t), w.d(t, t)));
        if (w.d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.d(t, j) == 0) continue;
        w.add_col(j, t, -truncated_quotient(w.d(t, j), w.d(t, t)));
        if (w.d(t, j) != 0) clean = false;
      }
      if (clean) {
        // Pivot must divide the remaining submatrix.
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (!mpz_divisible_p(w.d(i, j).get_mpz_t(), w.d(t, t).get_mpz_t())) {
              w.add_row(t, i, 1);
              divides = false;
              break;
            }
        if (divides) break;
      }
      find_pivot(w.d, t, pi, pj);
    }
    if (w.d(t, t) < 0) w.negate_row(t);
    rank = t + 1;
  }
  return SmithForm{std::move(w.u), std::move(w.d), std::move(w.v), std::move(w.vi), rank};
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) { return smith_impl(m, true, true); }

namespace {

void normalize_sign(IntVector& v) {
  for (const Int& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    return;
  }
}

}  // namespace

IntegerSolver::IntegerSolver(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()), snf_(smith_impl(m, true, false)) {}

std::optional<IntegerSolution> IntegerSolver::solve(const IntVector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("solve_integer: rhs length mismatch");
  const SmithForm& snf = snf_;
  const IntVector c = snf.u * b;
  IntVector y(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i < snf.rank) {
      const Int& di = snf.d(i, i);
      if (!mpz_divisible_p(c[i].get_mpz_t(), di.get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), di.get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution sol;
  sol.particular = snf.v * y;
  for (std::size_t j = snf.rank; j < cols_; ++j) {
    IntVector k = snf.v.column(j);
    normalize_sign(k);
    sol.kernel_basis.push_back(std::move(k));
  }
  return sol;
}

std::optional<IntVector> IntegerSolver::particular(const IntVector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("solve_integer: rhs length mismatch");
  const IntVector c = snf_.u * b;
  IntVector y(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i < snf_.rank) {
      const Int& di = snf_.d(i, i);
      if (!mpz_divisible_p(c[i].get_mpz_t(), di.get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), di.get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf_.v * y;
}

std::optional<IntegerSolution> solve_integer(const IntMatrix& m, const IntVector& b) {
  return IntegerSolver(m).solve(b);
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm snf = smith_impl(m, false, false);
  std::vector<IntVector> cols;
  for (std::size_t j = snf.rank; j < m.cols(); ++j) {
    IntVector k = snf.v.column(j);
    normalize_sign(k);
    cols.push_back(std::move(k));
  }
  return IntMatrix::from_columns(cols, m.cols());
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  const SmithForm snf = smith_impl(generators, false, true);
  IntMatrix basis(snf.rank, generators.cols());
  for (std::size_t i = 0; i < snf.rank; ++i)
    for (std::size_t j = 0; j < generators.cols(); ++j) basis(i, j) = snf.d(i, i) * snf.v_inv(i, j);
  return basis;
}

FgGroup::FgGroup(std::size_t ambient_rank, IntMatrix relations)
    : ambient_rank_(ambient_rank), relations_(std::move(relations)) {
  if (relations_.rows() == 0) relations_ = IntMatrix(0, ambient_rank_);
  if (relations_.cols() != ambient_rank_) throw std::invalid_argument("FgGroup: relation width mismatch");
  SmithForm snf = smith_impl(relations_, false, true);
  for (std::size_t i = 0; i < ambient_rank_; ++i) {
    Int f = i < snf.rank ? snf.d(i, i) : Int(0);
    if (f == 1) continue;
    factors_.push_back(f);
    kept_.push_back(i);
  }
  forward_ = std::move(snf.v);
  backward_ = std::move(snf.v_inv);
}

FgGroup FgGroup::free(std::size_t rank) { return FgGroup(rank, IntMatrix(0, rank)); }

FgGroup FgGroup::cyclic(const Int& order) {
  IntMatrix rel(1, 1);
  rel(0, 0) = order;
  return FgGroup(1, rel);
}

std::size_t FgGroup::free_rank() const {
  return static_cast<std::size_t>(std::count(factors_.begin(), factors_.end(), Int(0)));
}

std::vector<Int> FgGroup::torsion_factors() const {
  std::vector<Int> t;
  for (const Int& f : factors_)
    if (f != 0) t.push_back(f);
  return t;
}

Int FgGroup::torsion_order() const {
  Int p = 1;
  for (const Int& f : factors_)
    if (f != 0) p *= f;
  return p;
}

Int FgGroup::order() const {
  if (!is_finite()) throw std::logic_error("FgGroup::order: group is infinite");
  return torsion_order();
}

IntVector FgGroup::coordinates(const IntVector& x) const {
  if (x.size() != ambient_rank_) throw std::invalid_argument("FgGroup::coordinates: length mismatch");
  IntVector out(kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    const std::size_t col = kept_[k];
    Int y = 0;
    for (std::size_t i = 0; i < ambient_rank_; ++i)
      if (x[i] != 0) y += x[i] * forward_(i, col);
    if (factors_[k] != 0) mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), factors_[k].get_mpz_t());
    out[k] = std::move(y);
  }
  return out;
}

IntVector FgGroup::ambient_from_coordinates(const IntVector& coords) const {
  if (coords.size() != kept_.size()) throw std::invalid_argument("FgGroup::ambient_from_coordinates: length mismatch");
  IntVector x(ambient_rank_);
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    if (coords[k] == 0) continue;
    for (std::size_t j = 0; j < ambient_rank_; ++j) x[j] += coords[k] * backward_(kept_[k], j);
  }
  return x;
}

IntVector FgGroup::generator(std::size_t i) const {
  IntVector c(kept_.size());
  c.at(i) = 1;
  return ambient_from_coordinates(c);
}

bool FgGroup::is_zero(const IntVector& x) const { return kkcalc::is_zero(coordinates(x)); }

bool FgGroup::equal(const IntVector& x, const IntVector& y) const { return is_zero(subtract(x, y)); }

std::string FgGroup::describe() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  const std::size_t fr = free_rank();
  bool first = true;
  if (fr > 0) {
    os << "Z";
    if (fr > 1) os << "^" << fr;
    first = false;
  }
  for (const Int& f : factors_) {
    if (f == 0) continue;
    os << (first ? "" : " + ") << "Z_" << f.get_str();
    first = false;
  }
  return os.str();
}

FgGroup group_invariants(const IntMatrix& relations, std::size_t ambient_rank) {
  return FgGroup(ambient_rank, relations);
}

bool same_invariants(const FgGroup& a, const FgGroup& b) { return a.invariant_factors() == b.invariant_factors(); }

std::optional<InducedHom> hom_check_and_induce(const FgGroup& source, const FgGroup& target,
                                               const IntMatrix& matrix) {
  const std::size_t n = source.ambient_rank(), m = target.ambient_rank();
  if (matrix.rows() != m || matrix.cols() != n) throw std::invalid_argument("hom_check_and_induce: matrix shape mismatch");
  const IntMatrix& rs = source.relations();
  const IntMatrix& rt = target.relations();
  for (std::size_t i = 0; i < rs.rows(); ++i)
    if (!target.is_zero(matrix * rs.row(i))) return std::nullopt;

  // Kernel lattice: x with H x in the row span of rt.
  IntMatrix joint(m, n + rt.rows());
  joint.set_block(0, 0, matrix);
  for (std::size_t k = 0; k < rt.rows(); ++k)
    for (std::size_t i = 0; i < m; ++i) joint(i, n + k) = -rt(k, i);
  const IntMatrix ker = integer_kernel(joint);
  IntMatrix gens(ker.cols(), n);
  for (std::size_t c = 0; c < ker.cols(); ++c)
    for (std::size_t i = 0; i < n; ++i) gens(c, i) = ker(i, c);
  const IntMatrix basis = lattice_basis(gens);  // rows
  const IntMatrix basis_cols = basis.transpose();
  IntMatrix kernel_rel(rs.rows(), basis.rows());
  const IntegerSolver solver(basis_cols);
  for (std::size_t i = 0; i < rs.rows(); ++i) {
    auto sol = solver.particular(rs.row(i));
    if (!sol) throw std::logic_error("hom_check_and_induce: relation outside kernel lattice");
    for (std::size_t j = 0; j < basis.rows(); ++j) kernel_rel(i, j) = (*sol)[j];
  }

  InducedHom out{GroupHom{source, target, matrix}, FgGroup(basis.rows(), kernel_rel),
                 FgGroup(m, IntMatrix::stack(rt, matrix.transpose())), basis_cols};
  return out;
}

bool in_subgroup(const FgGroup& g, const IntMatrix& gens, const IntVector& x) {
  const std::size_t n = g.ambient_rank();
  const IntMatrix& r = g.relations();
  IntMatrix joint(n, gens.cols() + r.rows());
  if (gens.cols() > 0) joint.set_block(0, 0, gens);
  for (std::size_t k = 0; k < r.rows(); ++k)
    for (std::size_t i = 0; i < n; ++i) joint(i, gens.cols() + k) = r(k, i);
  return solve_integer(joint, x).has_value();
}

namespace {

// Every column of `xs` lies in span(gens) + relations.
bool all_in_subgroup(const FgGroup& g, const IntMatrix& gens, const IntMatrix& xs) {
  if (xs.cols() == 0) return true;
  const std::size_t n = g.ambient_rank();
  const IntMatrix& r = g.relations();
  IntMatrix joint(n, gens.cols() + r.rows());
  if (gens.cols() > 0) joint.set_block(0, 0, gens);
  for (std::size_t k = 0; k < r.rows(); ++k)
    for (std::size_t i = 0; i < n; ++i) joint(i, gens.cols() + k) = r(k, i);
  const IntegerSolver solver(joint);
  for (std::size_t j = 0; j < xs.cols(); ++j)
    if (!solver.particular(xs.column(j))) return false;
  return true;
}

}  // namespace

bool same_subgroup(const FgGroup& g, const IntMatrix& a, const IntMatrix& b) {
  return all_in_subgroup(g, b, a) && all_in_subgroup(g, a, b);
}

IntMatrix image_generators(const GroupHom& h) { return h.matrix; }

IntMatrix kernel_generators(const GroupHom& h) {
  auto ind = hom_check_and_induce(h.source, h.target, h.matrix);
  if (!ind) throw std::logic_error("kernel_generators: hom not well defined");
  return ind->kernel_lattice;
}

}  // namespace kkcalc
