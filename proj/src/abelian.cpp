#include "graphk/abelian.hpp"

#include "graphk/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace graphk {

namespace {

Integer truncated_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool divides(const Integer& d, const Integer& a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

void require(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::set_column(std::size_t j, const IntVector& v) {
  require(v.size() == rows_, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
}

void IntMatrix::add_column_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_column(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

std::string IntMatrix::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_ && cols_ > 0; ++i) {
    if (i) out << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ' ';
      out << (*this)(i, j);
    }
  }
  out << "] (" << rows_ << 'x' << cols_ << ')';
  return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols() == b.rows(), "matrix product dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  require(a.cols() == x.size(), "matrix-vector dimension mismatch");
  IntVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) y[i] += a(i, k) * x[k];
  return y;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) c.negate_row(i);
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) { return a + (-b); }

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  require(a.rows() == b.rows(), "hcat row mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix vcat(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols() == b.cols(), "vcat column mismatch");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Integer determinant(const IntMatrix& m) {
  require(m.rows() == m.cols(), "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), previous.get_mpz_t());
      }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

IntVector SmithForm::diagonal() const {
  IntVector d(std::min(D.rows(), D.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = D(i, i);
  return d;
}

namespace {

// Row and column operations on D mirrored into U, U^-1 and V.
struct SmithWork {
  IntMatrix d, u, uinv, v;

  void add_row(std::size_t target, std::size_t source, const Integer& q) {
    d.add_row_multiple(target, source, q);
    u.add_row_multiple(target, source, q);
    uinv.add_column_multiple(source, target, -q);
  }
  void add_col(std::size_t target, std::size_t source, const Integer& q) {
    d.add_column_multiple(target, source, q);
    v.add_column_multiple(target, source, q);
  }
  void swap_row(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
    uinv.swap_columns(a, b);
  }
  void swap_col(std::size_t a, std::size_t b) {
    d.swap_columns(a, b);
    v.swap_columns(a, b);
  }
  void negate_row(std::size_t i) {
    d.negate_row(i);
    u.negate_row(i);
    uinv.negate_column(i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithWork w{m, IntMatrix::identity(rows), IntMatrix::identity(rows), IntMatrix::identity(cols)};
  IntMatrix& d = w.d;

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Smallest nonzero magnitude in the trailing block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    w.swap_row(t, best->first);
    w.swap_col(t, best->second);

    for (;;) {
      for (std::size_t i = t + 1; i < rows; ++i)
        if (d(i, t) != 0) w.add_row(i, t, -truncated_quotient(d(i, t), d(t, t)));
      for (std::size_t j = t + 1; j < cols; ++j)
        if (d(t, j) != 0) w.add_col(j, t, -truncated_quotient(d(t, j), d(t, t)));

      // Remainders are smaller than the pivot; promote the smallest one.
      std::optional<std::size_t> row_hit, col_hit;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (d(i, t) != 0 && (!row_hit || abs(d(i, t)) < abs(d(*row_hit, t)))) row_hit = i;
      for (std::size_t j = t + 1; j < cols; ++j)
        if (d(t, j) != 0 && (!col_hit || abs(d(t, j)) < abs(d(t, *col_hit)))) col_hit = j;
      if (row_hit && (!col_hit || abs(d(*row_hit, t)) <= abs(d(t, *col_hit)))) {
        w.swap_row(t, *row_hit);
        continue;
      }
      if (col_hit) {
        w.swap_col(t, *col_hit);
        continue;
      }

      // Pivot isolated; enforce divisibility of the trailing block.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(d(t, t), d(i, j))) {
            offending = i;
            break;
          }
      if (!offending) break;
      w.add_row(t, *offending, 1);
    }
    if (d(t, t) < 0) w.negate_row(t);
  }
  return SmithForm{std::move(w.u), std::move(w.d), std::move(w.v), std::move(w.uinv), t};
}

// ---------------------------------------------------------------------------
// Hermite form and lattices

IntMatrix hermite_form(const IntMatrix& generators) {
  IntMatrix h = generators;
  const std::size_t rows = h.rows();
  const std::size_t cols = h.cols();
  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < rows && pivot_col < cols; ++r) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t j = pivot_col; j < cols; ++j)
        if (h(r, j) != 0 && (!best || abs(h(r, j)) < abs(h(r, *best)))) best = j;
      if (!best) break;
      h.swap_columns(pivot_col, *best);
      bool done = true;
      for (std::size_t j = pivot_col + 1; j < cols; ++j) {
        if (h(r, j) == 0) continue;
        h.add_column_multiple(j, pivot_col, -truncated_quotient(h(r, j), h(r, pivot_col)));
        if (h(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, pivot_col) == 0) continue;
    if (h(r, pivot_col) < 0) h.negate_column(pivot_col);
    for (std::size_t c = 0; c < pivot_col; ++c)
      h.add_column_multiple(c, pivot_col, -floor_quotient(h(r, c), h(r, pivot_col)));
    ++pivot_col;
  }
  std::vector<std::size_t> keep(pivot_col);
  for (std::size_t j = 0; j < pivot_col; ++j) keep[j] = j;
  return h.select_columns(keep);
}

bool lattice_contains(const IntMatrix& hermite, IntVector v) {
  require(hermite.rows() == v.size(), "lattice membership dimension mismatch");
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < hermite.cols(); ++c) {
    while (hermite(pivot_row, c) == 0) ++pivot_row;
    const Integer& pivot = hermite(pivot_row, c);
    if (!divides(pivot, v[pivot_row])) return false;
    const Integer q = v[pivot_row] / pivot;
    for (std::size_t i = pivot_row; i < v.size(); ++i) v[i] -= q * hermite(i, c);
  }
  return is_zero(v);
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  return a.rows() == b.rows() && hermite_form(a) == hermite_form(b);
}

IntMatrix kernel_basis(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  std::vector<std::size_t> tail;
  for (std::size_t j = s.rank; j < m.cols(); ++j) tail.push_back(j);
  return hermite_form(s.V.select_columns(tail));
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& y) {
  require(m.rows() == y.size(), "solve dimension mismatch");
  const SmithForm s = smith_normal_form(m);
  const IntVector z = s.U * y;
  IntVector w(m.cols());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i < s.rank) {
      if (!divides(s.D(i, i), z[i])) return std::nullopt;
      w[i] = z[i] / s.D(i, i);
    } else if (z[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * w;
}

IntMatrix coordinates_in(const IntMatrix& basis, const IntMatrix& b) {
  IntMatrix c(basis.cols(), b.cols());
  if (b.cols() == 0) return c;
  const SmithForm s = smith_normal_form(basis);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const IntVector z = s.U * b.column(j);
    IntVector w(basis.cols());
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (i < s.rank && divides(s.D(i, i), z[i])) {
        w[i] = z[i] / s.D(i, i);
      } else if (z[i] != 0) {
        throw InternalError("vector outside the lattice spanned by the basis");
      }
    }
    c.set_column(j, s.V * w);
  }
  return c;
}

// ---------------------------------------------------------------------------
// FgGroup

FgGroup::FgGroup(IntMatrix relations) : relations_(std::move(relations)) {
  hermite_ = hermite_form(relations_);
  SmithForm s = smith_normal_form(relations_);
  rank_ = s.rank;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.D(i, i) != 1) {
      torsion_rows_.push_back(i);
      factors_.push_back(s.D(i, i));
    }
  }
  free_rank_ = relations_.rows() - s.rank;
  to_canonical_ = std::move(s.U);
  from_canonical_ = std::move(s.U_inverse);
}

std::optional<Integer> FgGroup::order() const {
  if (!is_finite()) return std::nullopt;
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

IntVector FgGroup::canonical_coordinates(const IntVector& x) const {
  require(x.size() == ambient_rank(), "group element dimension mismatch");
  const IntVector y = to_canonical_ * x;
  IntVector c;
  c.reserve(canonical_rank());
  for (std::size_t k = 0; k < torsion_rows_.size(); ++k) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), y[torsion_rows_[k]].get_mpz_t(), factors_[k].get_mpz_t());
    c.push_back(r);
  }
  for (std::size_t i = rank_; i < ambient_rank(); ++i) c.push_back(y[i]);
  return c;
}

IntVector FgGroup::section(const IntVector& canonical) const {
  require(canonical.size() == canonical_rank(), "canonical vector dimension mismatch");
  IntVector y(ambient_rank());
  for (std::size_t k = 0; k < torsion_rows_.size(); ++k) y[torsion_rows_[k]] = canonical[k];
  for (std::size_t i = rank_; i < ambient_rank(); ++i)
    y[i] = canonical[torsion_rows_.size() + (i - rank_)];
  return from_canonical_ * y;
}

bool FgGroup::is_zero(const IntVector& x) const { return lattice_contains(hermite_, x); }

bool FgGroup::same_class(const IntVector& x, const IntVector& y) const {
  require(x.size() == y.size(), "group element dimension mismatch");
  IntVector diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  return is_zero(diff);
}

bool FgGroup::same_presentation(const FgGroup& other) const {
  return ambient_rank() == other.ambient_rank() && hermite_ == other.hermite_;
}

std::string FgGroup::str() const {
  if (is_trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& d : factors_) {
    out << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank_ > 0) {
    out << (first ? "" : " + ") << 'Z';
    if (free_rank_ > 1) out << '^' << free_rank_;
  }
  return out.str();
}

FgGroup cokernel(const IntMatrix& m) { return FgGroup(m); }

// ---------------------------------------------------------------------------
// GroupHom

GroupHom make_hom(IntMatrix lift, FgGroup source, FgGroup target) {
  if (lift.rows() != target.ambient_rank() || lift.cols() != source.ambient_rank())
    throw InputError("homomorphism matrix is " + std::to_string(lift.rows()) + "x" +
                     std::to_string(lift.cols()) + " but groups need " +
                     std::to_string(target.ambient_rank()) + "x" +
                     std::to_string(source.ambient_rank()));
  const IntMatrix images = lift * source.relations();
  for (std::size_t j = 0; j < images.cols(); ++j)
    if (!target.is_zero(images.column(j)))
      throw NotWellDefined("relation " + std::to_string(j) +
                           " is not sent into the target relation subgroup");
  return GroupHom(std::move(lift), std::move(source), std::move(target));
}

IntMatrix GroupHom::canonical_matrix() const {
  IntMatrix c(target_.canonical_rank(), source_.canonical_rank());
  for (std::size_t j = 0; j < source_.canonical_rank(); ++j) {
    IntVector e(source_.canonical_rank());
    e[j] = 1;
    c.set_column(j, target_.canonical_coordinates(apply(source_.section(e))));
  }
  return c;
}

bool GroupHom::is_zero() const {
  for (std::size_t j = 0; j < lift_.cols(); ++j)
    if (!target_.is_zero(lift_.column(j))) return false;
  return true;
}

IntMatrix kernel_lattice(const GroupHom& f) {
  const std::size_t n = f.source().ambient_rank();
  const IntMatrix k = kernel_basis(hcat(f.lift(), f.target().relations()));
  std::vector<std::size_t> top(n);
  for (std::size_t i = 0; i < n; ++i) top[i] = i;
  return hermite_form(k.select_rows(top));
}

FgGroup kernel_group(const GroupHom& f) {
  const IntMatrix basis = kernel_lattice(f);
  return FgGroup(coordinates_in(basis, f.source().relations()));
}

FgGroup image_group(const GroupHom& f) {
  const IntMatrix basis = hermite_form(hcat(f.lift(), f.target().relations()));
  return FgGroup(coordinates_in(basis, f.target().relations()));
}

FgGroup cokernel_group(const GroupHom& f) {
  return FgGroup(hcat(f.lift(), f.target().relations()));
}

bool exactness_at(const GroupHom& f, const GroupHom& g) {
  if (!f.target().same_presentation(g.source()))
    throw InputError("exactness_at: target of the first map is not the source of the second");
  const IntMatrix image = hermite_form(hcat(f.lift(), f.target().relations()));
  return image == kernel_lattice(g);
}

std::string to_string(const IntVector& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

}  // namespace graphk
