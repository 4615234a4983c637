#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "modlcp/errors.hpp"

namespace modlcp {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct Triplet {
  Index row;
  Index col;
  Scalar value;
};

/// Diagonal matrix stored as its entries. Used for the modulus parameter
/// (which must be strictly positive) and for diag(A).
template <typename Scalar>
class DiagonalMatrix {
 public:
  explicit DiagonalMatrix(Vector<Scalar> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 1) throw InvalidArgument("diagonal matrix must have n >= 1");
  }

  static DiagonalMatrix constant(Index n, Scalar value) {
    return DiagonalMatrix(Vector<Scalar>::Constant(n, value));
  }
  static DiagonalMatrix identity(Index n) { return constant(n, Scalar(1)); }

  Index size() const noexcept { return entries_.size(); }
  const Vector<Scalar>& entries() const noexcept { return entries_; }
  Scalar operator()(Index i) const { return entries_(i); }

  bool is_positive() const { return (entries_.array() > Scalar(0)).all(); }

  DiagonalMatrix scaled(Scalar factor) const { return DiagonalMatrix(entries_ * factor); }

 private:
  Vector<Scalar> entries_;
};

/// Square matrix in compressed sparse row form.
///
/// Column indices are strictly increasing within each row. Explicit zeros are
/// allowed; they take part in structure queries but never in numerical ones.
template <typename Scalar>
class CsrMatrix {
 public:
  using scalar_type = Scalar;

  CsrMatrix(Index n, std::vector<Index> row_offsets, std::vector<Index> col_indices,
            std::vector<Scalar> values)
      : n_(n),
        row_offsets_(std::move(row_offsets)),
        col_indices_(std::move(col_indices)),
        values_(std::move(values)) {
    validate();
  }

  static CsrMatrix zero(Index n) {
    return CsrMatrix(n, std::vector<Index>(static_cast<std::size_t>(n) + 1, 0), {}, {});
  }

  static CsrMatrix identity(Index n) { return diagonal(Vector<Scalar>::Ones(n)); }

  /// Stores every diagonal entry, zero or not.
  static CsrMatrix diagonal(const Vector<Scalar>& d) {
    const Index n = d.size();
    std::vector<Index> offsets(static_cast<std::size_t>(n) + 1);
    std::vector<Index> cols(static_cast<std::size_t>(n));
    std::vector<Scalar> vals(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      offsets[i + 1] = i + 1;
      cols[i] = i;
      vals[i] = d(i);
    }
    return CsrMatrix(n, std::move(offsets), std::move(cols), std::move(vals));
  }

  static CsrMatrix diagonal(const DiagonalMatrix<Scalar>& d) { return diagonal(d.entries()); }

  /// Duplicate (row, col) pairs are summed.
  static CsrMatrix from_triplets(Index n, std::vector<Triplet<Scalar>> triplets) {
    for (const auto& t : triplets) {
      if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
        throw InvalidArgument("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                              ") outside " + std::to_string(n) + "x" + std::to_string(n));
    }
    std::stable_sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Index> offsets(static_cast<std::size_t>(n) + 1, 0);
    std::vector<Index> cols;
    std::vector<Scalar> vals;
    cols.reserve(triplets.size());
    vals.reserve(triplets.size());
    for (std::size_t k = 0; k < triplets.size(); ++k) {
      const auto& t = triplets[k];
      if (k > 0 && triplets[k - 1].row == t.row && triplets[k - 1].col == t.col) {
        vals.back() += t.value;
        continue;
      }
      cols.push_back(t.col);
      vals.push_back(t.value);
      ++offsets[t.row + 1];
    }
    for (Index i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    return CsrMatrix(n, std::move(offsets), std::move(cols), std::move(vals));
  }

  /// Exact zeros of the dense input are not stored.
  static CsrMatrix from_dense(const DenseMatrix<Scalar>& dense) {
    if (dense.rows() != dense.cols()) throw DimensionMismatch("from_dense: matrix is not square");
    const Index n = dense.rows();
    std::vector<Index> offsets(static_cast<std::size_t>(n) + 1, 0);
    std::vector<Index> cols;
    std::vector<Scalar> vals;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (dense(i, j) != Scalar(0)) {
          cols.push_back(j);
          vals.push_back(dense(i, j));
        }
      }
      offsets[i + 1] = static_cast<Index>(cols.size());
    }
    return CsrMatrix(n, std::move(offsets), std::move(cols), std::move(vals));
  }

  Index size() const noexcept { return n_; }
  Index nnz() const noexcept { return static_cast<Index>(values_.size()); }

  std::span<const Index> row_offsets() const noexcept { return row_offsets_; }
  std::span<const Index> col_indices() const noexcept { return col_indices_; }
  std::span<const Scalar> values() const noexcept { return values_; }

  std::span<const Index> row_cols(Index i) const {
    return std::span<const Index>(col_indices_).subspan(row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]);
  }
  std::span<const Scalar> row_values(Index i) const {
    return std::span<const Scalar>(values_).subspan(row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]);
  }

  /// Entry (i, j); zero when not stored.
  Scalar coeff(Index i, Index j) const {
    const auto cols = row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return Scalar(0);
    return values_[row_offsets_[i] + (it - cols.begin())];
  }

  Vector<Scalar> diagonal() const {
    Vector<Scalar> d(n_);
    for (Index i = 0; i < n_; ++i) d(i) = coeff(i, i);
    return d;
  }

  DenseMatrix<Scalar> to_dense() const {
    DenseMatrix<Scalar> dense = DenseMatrix<Scalar>::Zero(n_, n_);
    for (Index i = 0; i < n_; ++i)
      for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) dense(i, col_indices_[k]) = values_[k];
    return dense;
  }

  /// True when no nonzero value sits strictly above the diagonal.
  bool is_lower_triangular() const {
    for (Index i = 0; i < n_; ++i)
      for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
        if (col_indices_[k] > i && values_[k] != Scalar(0)) return false;
    return true;
  }

  /// Applies `f` to every stored value, keeping the structure.
  template <typename F>
  CsrMatrix unary_expr(F f) const {
    std::vector<Scalar> vals(values_.size());
    std::transform(values_.begin(), values_.end(), vals.begin(), f);
    return CsrMatrix(n_, row_offsets_, col_indices_, std::move(vals));
  }

  /// Keeps only entries for which `keep(row, col, value)` holds.
  template <typename Pred>
  CsrMatrix filtered(Pred keep) const {
    std::vector<Index> offsets(static_cast<std::size_t>(n_) + 1, 0);
    std::vector<Index> cols;
    std::vector<Scalar> vals;
    for (Index i = 0; i < n_; ++i) {
      for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
        if (keep(i, col_indices_[k], values_[k])) {
          cols.push_back(col_indices_[k]);
          vals.push_back(values_[k]);
        }
      }
      offsets[i + 1] = static_cast<Index>(cols.size());
    }
    return CsrMatrix(n_, std::move(offsets), std::move(cols), std::move(vals));
  }

 private:
  void validate() const {
    if (n_ < 1) throw InvalidArgument("sparse matrix dimension must be >= 1");
    if (row_offsets_.size() != static_cast<std::size_t>(n_) + 1)
      throw InvalidArgument("row_offsets must have n+1 entries");
    if (row_offsets_.front() != 0) throw InvalidArgument("row_offsets[0] must be 0");
    if (col_indices_.size() != values_.size()) throw InvalidArgument("col_indices/values length mismatch");
    if (row_offsets_.back() != static_cast<Index>(values_.size()))
      throw InvalidArgument("row_offsets[n] must equal the number of stored values");
    for (Index i = 0; i < n_; ++i) {
      if (row_offsets_[i + 1] < row_offsets_[i]) throw InvalidArgument("row_offsets must be nondecreasing");
      for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
        const Index c = col_indices_[k];
        if (c < 0 || c >= n_) throw InvalidArgument("column index out of range in row " + std::to_string(i));
        if (k > row_offsets_[i] && col_indices_[k - 1] >= c)
          throw InvalidArgument("column indices not strictly increasing in row " + std::to_string(i));
      }
    }
  }

  Index n_;
  std::vector<Index> row_offsets_;
  std::vector<Index> col_indices_;
  std::vector<Scalar> values_;
};

/// y = A x, accumulated row by row in ascending column order.
template <typename Scalar, typename Derived>
Vector<Scalar> matvec(const CsrMatrix<Scalar>& a, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != a.size())
    throw DimensionMismatch("matvec: matrix is " + std::to_string(a.size()) + "x" + std::to_string(a.size()) +
                            ", vector has length " + std::to_string(x.size()));
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  Vector<Scalar> y(a.size());
  for (Index i = 0; i < a.size(); ++i) {
    Scalar sum(0);
    for (Index k = offsets[i]; k < offsets[i + 1]; ++k) sum += vals[k] * x(cols[k]);
    y(i) = sum;
  }
  return y;
}

template <typename Scalar, typename Derived>
Vector<Scalar> operator*(const CsrMatrix<Scalar>& a, const Eigen::MatrixBase<Derived>& x) {
  return matvec(a, x);
}

/// alpha*A + beta*B over the union pattern. Entries that cancel to exactly
/// zero are dropped.
template <typename Scalar>
CsrMatrix<Scalar> combine(Scalar alpha, const CsrMatrix<Scalar>& a, Scalar beta, const CsrMatrix<Scalar>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("combine: dimension mismatch");
  const Index n = a.size();
  std::vector<Index> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Index> cols;
  std::vector<Scalar> vals;
  cols.reserve(static_cast<std::size_t>(a.nnz() + b.nnz()));
  vals.reserve(static_cast<std::size_t>(a.nnz() + b.nnz()));
  auto emit = [&](Index c, Scalar v) {
    if (v != Scalar(0)) {
      cols.push_back(c);
      vals.push_back(v);
    }
  };
  for (Index i = 0; i < n; ++i) {
    const auto ac = a.row_cols(i), bc = b.row_cols(i);
    const auto av = a.row_values(i), bv = b.row_values(i);
    std::size_t p = 0, q = 0;
    while (p < ac.size() || q < bc.size()) {
      if (q == bc.size() || (p < ac.size() && ac[p] < bc[q])) {
        emit(ac[p], alpha * av[p]);
        ++p;
      } else if (p == ac.size() || bc[q] < ac[p]) {
        emit(bc[q], beta * bv[q]);
        ++q;
      } else {
        emit(ac[p], alpha * av[p] + beta * bv[q]);
        ++p;
        ++q;
      }
    }
    offsets[i + 1] = static_cast<Index>(cols.size());
  }
  return CsrMatrix<Scalar>(n, std::move(offsets), std::move(cols), std::move(vals));
}

template <typename Scalar>
CsrMatrix<Scalar> operator+(const CsrMatrix<Scalar>& a, const CsrMatrix<Scalar>& b) {
  return combine(Scalar(1), a, Scalar(1), b);
}

template <typename Scalar>
CsrMatrix<Scalar> operator-(const CsrMatrix<Scalar>& a, const CsrMatrix<Scalar>& b) {
  return combine(Scalar(1), a, Scalar(-1), b);
}

template <typename Scalar>
CsrMatrix<Scalar> operator-(const CsrMatrix<Scalar>& a) {
  return a.unary_expr([](Scalar v) { return -v; });
}

template <typename Scalar>
CsrMatrix<Scalar> operator*(Scalar s, const CsrMatrix<Scalar>& a) {
  return a.unary_expr([s](Scalar v) { return s * v; });
}

template <typename Scalar>
CsrMatrix<Scalar> operator+(const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& d) {
  return a + CsrMatrix<Scalar>::diagonal(d);
}

template <typename Scalar>
CsrMatrix<Scalar> operator-(const CsrMatrix<Scalar>& a, const DiagonalMatrix<Scalar>& d) {
  return a - CsrMatrix<Scalar>::diagonal(d);
}

template <typename Scalar>
CsrMatrix<Scalar> operator-(const DiagonalMatrix<Scalar>& d, const CsrMatrix<Scalar>& a) {
  return CsrMatrix<Scalar>::diagonal(d) - a;
}

template <typename Scalar>
CsrMatrix<Scalar> cwise_abs(const CsrMatrix<Scalar>& a) {
  return a.unary_expr([](Scalar v) { return std::abs(v); });
}

template <typename Scalar>
CsrMatrix<Scalar> strictly_lower(const CsrMatrix<Scalar>& a) {
  return a.filtered([](Index i, Index j, Scalar) { return j < i; });
}

template <typename Scalar>
CsrMatrix<Scalar> strictly_upper(const CsrMatrix<Scalar>& a) {
  return a.filtered([](Index i, Index j, Scalar) { return j > i; });
}

/// Largest |A_ij - B_ij| over both patterns.
template <typename Scalar>
Scalar max_abs_difference(const CsrMatrix<Scalar>& a, const CsrMatrix<Scalar>& b) {
  const auto diff = a - b;
  Scalar worst(0);
  for (Scalar v : diff.values()) worst = std::max(worst, std::abs(v));
  return worst;
}

/// A = D - L - U with L and U the negated strictly lower/upper parts.
template <typename Scalar>
struct DluSplit {
  DiagonalMatrix<Scalar> d;
  CsrMatrix<Scalar> l;
  CsrMatrix<Scalar> u;
};

/// Missing diagonal entries come back as zeros in D.
template <typename Scalar>
DluSplit<Scalar> split_dlu(const CsrMatrix<Scalar>& a) {
  return {DiagonalMatrix<Scalar>(a.diagonal()), -strictly_lower(a), -strictly_upper(a)};
}

/// Solves T x = b by forward substitution. Zero-valued stored entries above
/// the diagonal are tolerated; nonzero ones are not.
template <typename Scalar, typename Derived>
Vector<Scalar> lower_triangular_solve(const CsrMatrix<Scalar>& t, const Eigen::MatrixBase<Derived>& b) {
  if (b.size() != t.size()) throw DimensionMismatch("lower_triangular_solve: dimension mismatch");
  const auto offsets = t.row_offsets();
  const auto cols = t.col_indices();
  const auto vals = t.values();
  Vector<Scalar> x(t.size());
  for (Index i = 0; i < t.size(); ++i) {
    Scalar sum = b(i);
    Scalar diag(0);
    for (Index k = offsets[i]; k < offsets[i + 1]; ++k) {
      const Index j = cols[k];
      if (j < i) {
        sum -= vals[k] * x(j);
      } else if (j == i) {
        diag = vals[k];
      } else if (vals[k] != Scalar(0)) {
        throw NotLowerTriangular("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") lies above the diagonal");
      }
    }
    if (diag == Scalar(0)) throw ZeroDiagonal(i);
    x(i) = sum / diag;
  }
  return x;
}

}  // namespace modlcp
