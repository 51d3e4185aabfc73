#pragma once

// Dense exact linear algebra: matrices, canonical subspaces, subquotient
// charts and the kernels (rref, kernel, image, solve) everything else uses.
// Vectors are columns; subspaces are stored by a basis in reduced column
// echelon form, which is unique for a given subspace.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace qpmut {

template <ExactField F>
class Mat {
 public:
  using Elem = typename F::Elem;

  Mat() = default;
  Mat(F field, int rows, int cols)
      : field_(field), rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, field.zero()) {
    require(rows >= 0 && cols >= 0, ErrorKind::ShapeMismatch, "negative matrix shape");
  }

  static Mat identity(F field, int n) {
    Mat m(field, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Mat from_rows(F field, const std::vector<std::vector<long long>>& rows) {
    int r = int(rows.size());
    int c = r ? int(rows[0].size()) : 0;
    Mat m(field, r, c);
    for (int i = 0; i < r; ++i) {
      require(int(rows[i].size()) == c, ErrorKind::ShapeMismatch, "ragged matrix rows");
      for (int j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  const F& field() const noexcept { return field_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const Elem& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Elem& x) { return x.is_zero(); });
  }
  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? field_.one() : field_.zero())) return false;
    return true;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    a.check_same_shape(b, "+");
    Mat r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    a.check_same_shape(b, "-");
    Mat r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }
  Mat operator-() const {
    Mat r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  friend Mat operator*(const Elem& s, const Mat& a) {
    Mat r = a;
    for (auto& x : r.data_) x *= s;
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    require(a.cols_ == b.rows_, ErrorKind::ShapeMismatch,
            "product of " + a.shape() + " and " + b.shape());
    Mat r(a.field_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l) {
        const Elem& x = a(i, l);
        if (x.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += x * b(l, j);
      }
    return r;
  }

  Mat transpose() const {
    Mat r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Mat block(int r0, int c0, int nr, int nc) const {
    require(r0 >= 0 && c0 >= 0 && r0 + nr <= rows_ && c0 + nc <= cols_, ErrorKind::ShapeMismatch,
            "block out of range");
    Mat r(field_, nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void set_block(int r0, int c0, const Mat& b) {
    require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, ErrorKind::ShapeMismatch,
            "set_block out of range");
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  Mat column(int j) const { return block(0, j, rows_, 1); }
  Mat select_rows(const std::vector<int>& idx) const {
    Mat r(field_, int(idx.size()), cols_);
    for (int i = 0; i < int(idx.size()); ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
  }
  Mat select_cols(const std::vector<int>& idx) const {
    Mat r(field_, rows_, int(idx.size()));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < int(idx.size()); ++j) r(i, j) = (*this)(i, idx[j]);
    return r;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << field_.format((*this)(i, j));
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same_shape(const Mat& b, const char* op) const {
    require(rows_ == b.rows_ && cols_ == b.cols_, ErrorKind::ShapeMismatch,
            std::string("operator") + op + " on " + shape() + " and " + b.shape());
  }

  F field_{};
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elem> data_;
};

template <ExactField F>
Mat<F> hstack(const F& field, int rows, const std::vector<Mat<F>>& parts) {
  int cols = 0;
  for (const auto& p : parts) {
    require(p.rows() == rows, ErrorKind::ShapeMismatch, "hstack row mismatch");
    cols += p.cols();
  }
  Mat<F> r(field, rows, cols);
  int c = 0;
  for (const auto& p : parts) {
    r.set_block(0, c, p);
    c += p.cols();
  }
  return r;
}

template <ExactField F>
Mat<F> vstack(const F& field, int cols, const std::vector<Mat<F>>& parts) {
  int rows = 0;
  for (const auto& p : parts) {
    require(p.cols() == cols, ErrorKind::ShapeMismatch, "vstack column mismatch");
    rows += p.rows();
  }
  Mat<F> r(field, rows, cols);
  int o = 0;
  for (const auto& p : parts) {
    r.set_block(o, 0, p);
    o += p.rows();
  }
  return r;
}

template <ExactField F>
Mat<F> block_diagonal(const F& field, const std::vector<Mat<F>>& parts) {
  int rows = 0, cols = 0;
  for (const auto& p : parts) rows += p.rows(), cols += p.cols();
  Mat<F> r(field, rows, cols);
  int ro = 0, co = 0;
  for (const auto& p : parts) {
    r.set_block(ro, co, p);
    ro += p.rows();
    co += p.cols();
  }
  return r;
}

template <ExactField F>
struct RowEchelon {
  Mat<F> reduced;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

template <ExactField F>
RowEchelon<F> rref(Mat<F> a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < a.rows(); ++i)
      if (!a(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    auto inv = a(row, col).inverse();
    for (int j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      auto factor = a(i, col);
      for (int j = col; j < a.cols(); ++j) a(i, j) -= factor * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

template <ExactField F>
int rank(const Mat<F>& a) {
  return int(rref(a).pivots.size());
}

template <ExactField F>
std::optional<Mat<F>> inverse(const Mat<F>& a) {
  require(a.rows() == a.cols(), ErrorKind::ShapeMismatch, "inverse of non-square " + a.shape());
  int n = a.rows();
  auto e = rref(hstack(a.field(), n, {a, Mat<F>::identity(a.field(), n)}));
  if (int(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] >= n)) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

template <ExactField F>
bool is_invertible(const Mat<F>& a) {
  return a.rows() == a.cols() && rank(a) == a.rows();
}

/// Basis (as columns) of {x : A x = 0}, one vector per free column.
template <ExactField F>
Mat<F> null_space(const Mat<F>& a) {
  auto e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<int> free;
  for (int j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Mat<F> basis(a.field(), a.cols(), int(free.size()));
  for (int f = 0; f < int(free.size()); ++f) {
    basis(free[f], f) = a.field().one();
    for (int r = 0; r < int(e.pivots.size()); ++r) basis(e.pivots[r], f) = -e.reduced(r, free[f]);
  }
  return basis;
}

/// Some X with A X = B, or nothing when the system is inconsistent.
template <ExactField F>
std::optional<Mat<F>> solve(const Mat<F>& a, const Mat<F>& b) {
  require(a.rows() == b.rows(), ErrorKind::ShapeMismatch, "solve: " + a.shape() + " vs " + b.shape());
  auto e = rref(hstack(a.field(), a.rows(), {a, b}));
  Mat<F> x(a.field(), a.cols(), b.cols());
  for (int r = 0; r < int(e.pivots.size()); ++r) {
    int p = e.pivots[r];
    if (p >= a.cols()) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x(p, j) = e.reduced(r, a.cols() + j);
  }
  return x;
}

/// A subspace of K^n with a basis in reduced column echelon form: basis
/// vector j has a 1 at pivots()[j] and zeros at every other pivot.
template <ExactField F>
class Subspace {
 public:
  Subspace() = default;

  /// Canonical subspace spanned by the columns of `gens`.
  static Subspace span(const Mat<F>& gens) {
    auto e = rref(gens.transpose());
    int d = int(e.pivots.size());
    Subspace s;
    s.basis_ = e.reduced.block(0, 0, d, gens.rows()).transpose();
    s.pivots_ = e.pivots;
    return s;
  }
  static Subspace zero(const F& field, int n) { return span(Mat<F>(field, n, 0)); }
  static Subspace full(const F& field, int n) { return span(Mat<F>::identity(field, n)); }

  int ambient_dim() const noexcept { return basis_.rows(); }
  int dim() const noexcept { return basis_.cols(); }
  const Mat<F>& basis() const noexcept { return basis_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }
  const F& field() const { return basis_.field(); }

  /// Coordinates (dim x n) for vectors already known to lie in the subspace;
  /// also a retraction of the ambient space onto the subspace.
  Mat<F> retraction() const {
    Mat<F> r(field(), dim(), ambient_dim());
    for (int j = 0; j < dim(); ++j) r(j, pivots_[j]) = field().one();
    return r;
  }

  bool contains(const Mat<F>& vectors) const {
    require(vectors.rows() == ambient_dim(), ErrorKind::ShapeMismatch, "contains: ambient mismatch");
    return basis_ * (retraction() * vectors) == vectors;
  }
  bool contains(const Subspace& other) const { return contains(other.basis_); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis_ == b.basis_ && a.pivots_ == b.pivots_;
  }

  /// Standard basis vectors at the non-pivot coordinates; they span a
  /// complement of this subspace.
  Mat<F> complement_basis() const {
    std::vector<bool> is_pivot(ambient_dim(), false);
    for (int p : pivots_) is_pivot[p] = true;
    std::vector<int> rest;
    for (int i = 0; i < ambient_dim(); ++i)
      if (!is_pivot[i]) rest.push_back(i);
    Mat<F> c(field(), ambient_dim(), int(rest.size()));
    for (int j = 0; j < int(rest.size()); ++j) c(rest[j], j) = field().one();
    return c;
  }

 private:
  Mat<F> basis_;
  std::vector<int> pivots_;
};

template <ExactField F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  return Subspace<F>::span(hstack(a.field(), a.ambient_dim(), {a.basis(), b.basis()}));
}

template <ExactField F>
Subspace<F> intersection(const Subspace<F>& a, const Subspace<F>& b) {
  require(a.ambient_dim() == b.ambient_dim(), ErrorKind::ShapeMismatch, "intersection ambient mismatch");
  // x = A u = B v  <=>  [A | -B] (u; v) = 0
  auto k = null_space(hstack(a.field(), a.ambient_dim(), {a.basis(), -b.basis()}));
  return Subspace<F>::span(a.basis() * k.block(0, 0, a.dim(), k.cols()));
}

template <ExactField F>
Subspace<F> kernel(const Mat<F>& a) {
  return Subspace<F>::span(null_space(a));
}
template <ExactField F>
Subspace<F> image(const Mat<F>& a) {
  return Subspace<F>::span(a);
}
/// Preimage {x : A x in target}.
template <ExactField F>
Subspace<F> preimage(const Mat<F>& a, const Subspace<F>& target) {
  // A x = T y  <=>  [A | -T](x; y) = 0
  auto k = null_space(hstack(a.field(), a.rows(), {a, -target.basis()}));
  return Subspace<F>::span(k.block(0, 0, a.cols(), k.cols()));
}

template <ExactField F>
struct ColumnSpaces {
  Subspace<F> kernel;
  Subspace<F> image;
  Mat<F> coker_section;  // basis of a complement of the image
};

template <ExactField F>
ColumnSpaces<F> column_spaces(const Mat<F>& a) {
  auto im = image(a);
  return {kernel(a), im, im.complement_basis()};
}

/// Coordinates on sub/quot_by together with the maps that realize them.
/// `section` columns span a complement of quot_by inside sub; `projection`
/// sends a vector of sub to the coordinates of its class.
template <ExactField F>
struct SubquotientChart {
  int ambient_dim = 0;
  Subspace<F> sub;
  Subspace<F> quot_by;
  Mat<F> section;     // ambient x dim
  Mat<F> projection;  // dim x ambient
  Mat<F> retraction;  // sub.dim x ambient, retraction * sub.basis = id

  int dim() const { return section.cols(); }
};

template <ExactField F>
SubquotientChart<F> make_chart(const Subspace<F>& sub, const Subspace<F>& quot_by) {
  require(sub.ambient_dim() == quot_by.ambient_dim(), ErrorKind::ShapeMismatch, "chart ambient mismatch");
  if (!sub.contains(quot_by)) fail(ErrorKind::ContainmentViolation, "quotient subspace not contained in sub");
  const F& field = sub.field();
  int n = sub.ambient_dim();
  Mat<F> r_sub = sub.retraction();
  // quot_by in coordinates of sub, canonicalized.
  auto q = Subspace<F>::span(r_sub * quot_by.basis());
  Mat<F> comp = q.complement_basis();  // in sub coordinates
  std::vector<bool> is_pivot(sub.dim(), false);
  for (int p : q.pivots()) is_pivot[p] = true;
  std::vector<int> rest;
  for (int i = 0; i < sub.dim(); ++i)
    if (!is_pivot[i]) rest.push_back(i);
  // class coordinates: w = c[rest] - Q[rest, :] c[pivots]
  Mat<F> sel_rest(field, int(rest.size()), sub.dim());
  for (int j = 0; j < int(rest.size()); ++j) sel_rest(j, rest[j]) = field.one();
  Mat<F> sel_piv = q.retraction();
  Mat<F> in_coords = sel_rest - q.basis().select_rows(rest) * sel_piv;
  SubquotientChart<F> c;
  c.ambient_dim = n;
  c.sub = sub;
  c.quot_by = quot_by;
  c.section = sub.basis() * comp;
  c.projection = in_coords * r_sub;
  c.retraction = r_sub;
  return c;
}

template <ExactField F>
SubquotientChart<F> make_chart(const Subspace<F>& sub) {
  return make_chart(sub, Subspace<F>::zero(sub.field(), sub.ambient_dim()));
}

/// Matrix of the map sub/quot -> sub'/quot' induced by A.
template <ExactField F>
Mat<F> induced_map(const Mat<F>& a, const SubquotientChart<F>& src, const SubquotientChart<F>& dst) {
  require(a.cols() == src.ambient_dim && a.rows() == dst.ambient_dim, ErrorKind::ShapeMismatch,
          "induced_map: " + a.shape() + " between ambient " + std::to_string(src.ambient_dim) + " and " +
              std::to_string(dst.ambient_dim));
  if (!dst.sub.contains(a * src.sub.basis()))
    fail(ErrorKind::NotWellDefined, "map does not send sub into target sub");
  if (!dst.quot_by.contains(a * src.quot_by.basis()))
    fail(ErrorKind::NotWellDefined, "map does not send quotient subspace into target quotient subspace");
  return dst.projection * (a * src.section);
}

}  // namespace qpmut
