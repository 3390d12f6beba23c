#pragma once

// Exact integer linear algebra and finitely generated abelian groups.
//
// Subgroups of Z^n are always handled as column spans.  Two spans are
// compared through their column Hermite forms, which are unique for a
// lattice, so every equality test here is exact and deterministic.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace graphk {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  /// Row-major literal, e.g. `IntMatrix{{2, 6}, {1, 2}}`.
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  void set_column(std::size_t j, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;

  // Elementary operations; the row/column named first is modified.
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void add_column_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_columns(std::size_t a, std::size_t b);
  void negate_row(std::size_t i);
  void negate_column(std::size_t j);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);

/// [a | b]; row counts must agree.
IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
/// [a ; b]; column counts must agree.
IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);

bool is_zero(const IntVector& v);

/// Bareiss fraction-free elimination.
Integer determinant(const IntMatrix& m);

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
/// U_inverse is carried along so canonical coordinates can be lifted back.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inverse;
  std::size_t rank = 0;

  IntVector diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Column Hermite form of the span of the columns of `generators`:
/// lower echelon, positive pivots, entries left of a pivot reduced into
/// [0, pivot), zero columns dropped.  Equal spans give equal matrices.
IntMatrix hermite_form(const IntMatrix& generators);

/// Membership of v in the lattice spanned by an output of hermite_form.
bool lattice_contains(const IntMatrix& hermite, IntVector v);

bool same_lattice(const IntMatrix& a, const IntMatrix& b);

/// Lattice basis of ker(M : Z^cols -> Z^rows), in Hermite form.
IntMatrix kernel_basis(const IntMatrix& m);

/// Some integer c with M c = y, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& y);

/// Coordinates of every column of `b` in the lattice basis `basis`.
/// Throws InternalError when a column is not in the span.
IntMatrix coordinates_in(const IntMatrix& basis, const IntMatrix& b);

/// Finitely generated abelian group Z^n / span(relations).
class FgGroup {
 public:
  FgGroup() : FgGroup(IntMatrix(0, 0)) {}
  explicit FgGroup(IntMatrix relations);

  static FgGroup free(std::size_t rank) { return FgGroup(IntMatrix(rank, 0)); }

  std::size_t ambient_rank() const { return relations_.rows(); }
  const IntMatrix& relations() const { return relations_; }
  const IntMatrix& relation_lattice() const { return hermite_; }

  /// Invariant factors >= 2 in divisibility order.
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }
  /// Number of canonical generators: torsion factors first, then free.
  std::size_t canonical_rank() const { return factors_.size() + free_rank_; }

  bool is_trivial() const { return canonical_rank() == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  /// Group order when finite.
  std::optional<Integer> order() const;

  /// Coordinates w.r.t. the canonical decomposition; torsion entries in [0, d).
  IntVector canonical_coordinates(const IntVector& x) const;
  /// Ambient representative of a canonical coordinate vector.
  IntVector section(const IntVector& canonical) const;

  bool is_zero(const IntVector& x) const;
  bool same_class(const IntVector& x, const IntVector& y) const;

  /// Same ambient rank and same relation subgroup.
  bool same_presentation(const FgGroup& other) const;

  std::string str() const;

 private:
  IntMatrix relations_;
  IntMatrix hermite_;
  IntMatrix to_canonical_;    // U from the Smith form
  IntMatrix from_canonical_;  // U^-1
  std::vector<std::size_t> torsion_rows_;
  std::vector<Integer> factors_;
  std::size_t rank_ = 0;
  std::size_t free_rank_ = 0;
};

/// Z^rows / im M with projection x -> x + im M.
FgGroup cokernel(const IntMatrix& m);

/// Homomorphism induced by an integer matrix between two presentations.
class GroupHom {
 public:
  /// Zero map between trivial groups.
  GroupHom() = default;

  const FgGroup& source() const { return source_; }
  const FgGroup& target() const { return target_; }
  const IntMatrix& lift() const { return lift_; }

  IntVector apply(const IntVector& x) const { return lift_ * x; }

  /// Matrix in canonical coordinates of source and target (torsion
  /// entries reduced).  Depends on the stored Smith bases.
  IntMatrix canonical_matrix() const;

  bool is_zero() const;

  friend GroupHom make_hom(IntMatrix lift, FgGroup source, FgGroup target);

 private:
  GroupHom(IntMatrix lift, FgGroup source, FgGroup target)
      : lift_(std::move(lift)), source_(std::move(source)), target_(std::move(target)) {}

  IntMatrix lift_;
  FgGroup source_;
  FgGroup target_;
};

/// Throws InputError on dimension mismatch and NotWellDefined when
/// lift * relations(source) is not inside the target relation subgroup.
GroupHom make_hom(IntMatrix lift, FgGroup source, FgGroup target);

/// Lattice {x in Z^n : f.lift x in relations(target)}, in Hermite form.
IntMatrix kernel_lattice(const GroupHom& f);

/// Subgroups of the group as abstract groups.
FgGroup kernel_group(const GroupHom& f);
FgGroup image_group(const GroupHom& f);
FgGroup cokernel_group(const GroupHom& f);

/// im f == ker g inside target(f) == source(g).
bool exactness_at(const GroupHom& f, const GroupHom& g);

std::string to_string(const IntVector& v);

}  // namespace graphk
