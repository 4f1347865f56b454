#pragma once

// Exact integer linear algebra: Smith normal form, presented finitely
// generated abelian groups, and integer linear systems.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace kkcalc {

using Int = mpz_class;
using IntVector = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Int>& entries() const { return data_; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntMatrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row a += k * row b
  void add_row_multiple(std::size_t a, std::size_t b, const Int& k);
  // col a += k * col b
  void add_col_multiple(std::size_t a, std::size_t b, const Int& k);
  void negate_row(std::size_t a);
  void negate_col(std::size_t a);

  // Block placement; `block` must fit.
  void set_block(std::size_t row0, std::size_t col0, const IntMatrix& block);
  // Vertical concatenation; column counts must agree (an empty operand is skipped).
  static IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom);
  static IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

  bool is_zero() const;
  bool is_diagonal() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);

IntVector add(const IntVector& a, const IntVector& b);
IntVector subtract(const IntVector& a, const IntVector& b);
IntVector scale(const Int& k, const IntVector& a);
bool is_zero(const IntVector& v);

// Bareiss fraction-free determinant; matrix must be square.
Int determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

std::string to_string(const IntMatrix& m);
std::string to_string(const IntVector& v);

struct SmithForm {
  IntMatrix u;      // rows x rows, unimodular
  IntMatrix d;      // rows x cols, diagonal
  IntMatrix v;      // cols x cols, unimodular
  IntMatrix v_inv;  // inverse of v
  std::size_t rank = 0;
};

/// Smith normal form with U * M * V = D.
///
/// Pivot rule: the smallest-magnitude nonzero entry of the remaining
/// submatrix, ties broken by lowest row, then lowest column. The diagonal is
/// nonnegative and divisibility sorted, with zeros last.
SmithForm smith_normal_form(const IntMatrix& m);

struct IntegerSolution {
  IntVector particular;
  std::vector<IntVector> kernel_basis;
};

/// Solves M x = b over the integers. Kernel basis vectors have their first
/// nonzero entry positive.
std::optional<IntegerSolution> solve_integer(const IntMatrix& m, const IntVector& b);

/// Reusable solver for one matrix and many right-hand sides.
class IntegerSolver {
 public:
  explicit IntegerSolver(const IntMatrix& m);
  std::optional<IntegerSolution> solve(const IntVector& b) const;
  // Particular solution only.
  std::optional<IntVector> particular(const IntVector& b) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  SmithForm snf_;
};

/// Basis of the integer kernel {x : M x = 0}, as columns of the result.
IntMatrix integer_kernel(const IntMatrix& m);

/// Basis (as rows) of the lattice spanned by the given rows.
IntMatrix lattice_basis(const IntMatrix& generators_as_rows);

/// Finitely generated abelian group Z^n / (row span of relations).
class FgGroup {
 public:
  FgGroup() = default;
  // Relations are rows; every row must have `ambient_rank` entries.
  FgGroup(std::size_t ambient_rank, IntMatrix relations);

  static FgGroup free(std::size_t rank);
  static FgGroup cyclic(const Int& order);

  std::size_t ambient_rank() const { return ambient_rank_; }
  const IntMatrix& relations() const { return relations_; }
  // Divisibility sorted, ones dropped, zeros (free summands) last.
  const std::vector<Int>& invariant_factors() const { return factors_; }

  std::size_t free_rank() const;
  std::vector<Int> torsion_factors() const;
  // Product of torsion factors.
  Int torsion_order() const;
  bool is_finite() const { return free_rank() == 0; }
  // Group order; requires a finite group.
  Int order() const;
  bool is_trivial() const { return factors_.empty(); }

  // Invariant-factor coordinates of an ambient vector, reduced to the least
  // nonnegative residue on every finite cyclic factor.
  IntVector coordinates(const IntVector& ambient) const;
  // An ambient vector with the given invariant-factor coordinates.
  IntVector ambient_from_coordinates(const IntVector& coords) const;
  // Ambient vector of the i-th invariant-factor generator.
  IntVector generator(std::size_t i) const;

  bool is_zero(const IntVector& ambient) const;
  bool equal(const IntVector& x, const IntVector& y) const;

  // Unimodular change of basis: row vector x maps to x * forward().
  const IntMatrix& forward() const { return forward_; }
  const IntMatrix& backward() const { return backward_; }

  std::string describe() const;

 private:
  std::size_t ambient_rank_ = 0;
  IntMatrix relations_;
  std::vector<Int> factors_;
  // Columns of forward_ corresponding to kept factors.
  std::vector<std::size_t> kept_;
  IntMatrix forward_;
  IntMatrix backward_;
};

FgGroup group_invariants(const IntMatrix& relations, std::size_t ambient_rank);

bool same_invariants(const FgGroup& a, const FgGroup& b);

/// Homomorphism on presented groups; `matrix` is target.ambient x
/// source.ambient and acts on column vectors.
struct GroupHom {
  FgGroup source;
  FgGroup target;
  IntMatrix matrix;

  IntVector apply(const IntVector& x) const { return matrix * x; }
};

struct InducedHom {
  GroupHom hom;
  FgGroup kernel;
  FgGroup cokernel;
  // Columns: ambient source vectors spanning the kernel lattice; the kernel
  // group is presented on coordinates relative to these columns.
  IntMatrix kernel_lattice;
};

/// Returns the induced hom with its kernel and cokernel, or nothing if the
/// matrix does not respect the relations.
std::optional<InducedHom> hom_check_and_induce(const FgGroup& source,
                                               const FgGroup& target,
                                               const IntMatrix& matrix);

/// Is x in (span of columns of gens) + (relations of g)?
bool in_subgroup(const FgGroup& g, const IntMatrix& gens_as_columns, const IntVector& x);

/// Equality of the subgroups generated by two column sets.
bool same_subgroup(const FgGroup& g, const IntMatrix& a_cols, const IntMatrix& b_cols);

IntMatrix image_generators(const GroupHom& h);
IntMatrix kernel_generators(const GroupHom& h);

}  // namespace kkcalc
