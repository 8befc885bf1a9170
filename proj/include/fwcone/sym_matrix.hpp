#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fwcone/rational.hpp"

namespace fwcone {

/// Dense real symmetric matrix. Only the upper triangle is stored (row-major),
/// so symmetry holds by construction. The scalar is either double or Rational.
template <class T>
class SymMatrix {
 public:
  using value_type = T;

  explicit SymMatrix(std::size_t n) : n_(n), data_(n * (n + 1) / 2, T(0)) {
    if (n == 0) throw std::invalid_argument("SymMatrix dimension must be positive");
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static SymMatrix diagonal(const std::vector<T>& diag) {
    SymMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  /// Uniform matrix with `on_diag` on the diagonal and `off_diag` elsewhere.
  static SymMatrix uniform(std::size_t n, const T& on_diag, const T& off_diag) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = (i == j) ? on_diag : off_diag;
    return m;
  }

  /// Builds from full rows. Rational input must be exactly symmetric; double
  /// input may deviate by `rel_tol * (1 + max|a_ij|)` and is averaged.
  static SymMatrix from_rows(const std::vector<std::vector<T>>& rows, double rel_tol = 1e-12) {
    const std::size_t n = rows.size();
    SymMatrix m(n);
    double scale = 0.0;
    for (const auto& row : rows) {
      if (row.size() != n) throw std::invalid_argument("matrix rows must form a square");
      for (const auto& v : row) scale = std::max(scale, std::abs(as_double(v)));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const T& upper = rows[i][j];
        const T& lower = rows[j][i];
        if (upper != lower) {
          if constexpr (std::is_same_v<T, double>) {
            if (!(std::abs(upper - lower) <= rel_tol * (1.0 + scale)))
              throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) +
                                          "," + std::to_string(j) + ")");
            m(i, j) = 0.5 * (upper + lower);
            continue;
          } else {
            throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
          }
        }
        m(i, j) = upper;
      }
    }
    return m;
  }

  std::size_t dim() const { return n_; }

  const T& operator()(std::size_t i, std::size_t j) const { return data_[offset(i, j)]; }
  T& operator()(std::size_t i, std::size_t j) { return data_[offset(i, j)]; }

  const T& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return (*this)(i, j);
  }
  T& at(std::size_t i, std::size_t j) {
    check_index(i, j);
    return (*this)(i, j);
  }

  /// Stored upper triangle, row-major.
  const std::vector<T>& packed() const { return data_; }

  std::vector<std::vector<T>> rows() const {
    std::vector<std::vector<T>> out(n_, std::vector<T>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  template <class U>
  SymMatrix<U> cast() const {
    SymMatrix<U> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) {
        if constexpr (std::is_same_v<U, double>)
          out(i, j) = as_double((*this)(i, j));
        else if constexpr (std::is_same_v<T, double> && std::is_same_v<U, Rational>)
          out(i, j) = exact_rational((*this)(i, j));
        else
          out(i, j) = U((*this)(i, j));
      }
    return out;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(as_double(v)));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) {
        const double v = as_double((*this)(i, j));
        s += (i == j ? 1.0 : 2.0) * v * v;
      }
    return std::sqrt(s);
  }

  SymMatrix& operator+=(const SymMatrix& other) {
    require_same_dim(other);
    for (std::size_t p = 0; p < data_.size(); ++p) data_[p] += other.data_[p];
    return *this;
  }
  SymMatrix& operator-=(const SymMatrix& other) {
    require_same_dim(other);
    for (std::size_t p = 0; p < data_.size(); ++p) data_[p] -= other.data_[p];
    return *this;
  }
  SymMatrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, const T& s) { return a *= s; }
  friend SymMatrix operator*(const T& s, SymMatrix a) { return a *= s; }
  friend SymMatrix operator-(SymMatrix a) { return a *= T(-1); }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  std::size_t offset(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  void check_index(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_)
      throw std::out_of_range("entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside " + std::to_string(n_) + "x" + std::to_string(n_) +
                              " matrix");
  }

  void require_same_dim(const SymMatrix& other) const {
    if (other.n_ != n_) throw std::invalid_argument("dimension mismatch");
  }

  std::size_t n_;
  std::vector<T> data_;
};

/// Strictly increasing, nonempty index set.
class Support {
 public:
  Support(std::initializer_list<std::size_t> indices) : Support(std::vector<std::size_t>(indices)) {}
  explicit Support(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw std::invalid_argument("support must be nonempty");
    for (std::size_t a = 1; a < indices_.size(); ++a)
      if (indices_[a - 1] >= indices_[a])
        throw std::invalid_argument("support indices must be strictly increasing");
  }

  std::size_t size() const { return indices_.size(); }
  std::size_t operator[](std::size_t a) const { return indices_[a]; }
  std::size_t max() const { return indices_.back(); }
  bool contains(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }
  const std::vector<std::size_t>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  void check_within(std::size_t n) const {
    if (indices_.back() >= n)
      throw std::out_of_range("support index " + std::to_string(indices_.back()) +
                              " outside dimension " + std::to_string(n));
  }

  friend bool operator==(const Support&, const Support&) = default;
  friend auto operator<=>(const Support&, const Support&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<Support> enumerate_supports(std::size_t n, std::size_t k);

std::size_t binomial(std::size_t n, std::size_t k);

/// Sum of A_ij * B_ij over all (i, j).
template <class T>
T frobenius_inner(const SymMatrix<T>& a, const SymMatrix<T>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("frobenius_inner: dimension mismatch");
  T diag(0), off(0);
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    diag += a(i, i) * b(i, i);
    for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * b(i, j);
  }
  return diag + T(2) * off;
}

template <class T>
SymMatrix<T> principal_submatrix(const SymMatrix<T>& a, const Support& support) {
  support.check_within(a.dim());
  SymMatrix<T> out(support.size());
  for (std::size_t p = 0; p < support.size(); ++p)
    for (std::size_t q = p; q < support.size(); ++q) out(p, q) = a(support[p], support[q]);
  return out;
}

/// n x n matrix carrying `block` on support x support and zeros elsewhere.
template <class T>
SymMatrix<T> embed(const SymMatrix<T>& block, const Support& support, std::size_t n) {
  if (block.dim() != support.size())
    throw std::invalid_argument("embed: block size does not match support size");
  support.check_within(n);
  SymMatrix<T> out(n);
  for (std::size_t p = 0; p < support.size(); ++p)
    for (std::size_t q = p; q < support.size(); ++q) out(support[p], support[q]) = block(p, q);
  return out;
}

/// Adds `block` into `target` at support x support.
template <class T>
void accumulate_embedded(SymMatrix<T>& target, const SymMatrix<T>& block, const Support& support) {
  for (std::size_t p = 0; p < support.size(); ++p)
    for (std::size_t q = p; q < support.size(); ++q) target(support[p], support[q]) += block(p, q);
}

/// Plain row-major square matrix; used for congruence transforms.
template <class T>
struct SquareMatrix {
  std::size_t n;
  std::vector<T> entries;

  explicit SquareMatrix(std::size_t dim) : n(dim), entries(dim * dim, T(0)) {}

  static SquareMatrix identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = T(1);
    return m;
  }
  static SquareMatrix diagonal(const std::vector<T>& d) {
    SquareMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  /// Column j carries a one in row perm[j], so (P^T A P)_{ij} = A_{perm[i], perm[j]}.
  static SquareMatrix permutation(const std::vector<std::size_t>& perm) {
    SquareMatrix m(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) m(perm.at(j), j) = T(1);
    return m;
  }

  T& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

enum class DiagonalSigns { kPositiveOnly, kAllowNegative };

/// Q^T A Q for Q a permutation matrix or a diagonal matrix with positive
/// diagonal (any nonzero diagonal when `signs == kAllowNegative`).
template <class T>
SymMatrix<T> scale_congruence(const SymMatrix<T>& a, const SquareMatrix<T>& q,
                              DiagonalSigns signs = DiagonalSigns::kPositiveOnly) {
  const std::size_t n = a.dim();
  if (q.n != n) throw std::invalid_argument("scale_congruence: dimension mismatch");

  bool is_diagonal = true;
  bool is_permutation = true;
  std::vector<int> row_hits(n, 0), col_hits(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const T& v = q(i, j);
      if (i != j && v != T(0)) is_diagonal = false;
      if (v == T(1)) {
        ++row_hits[i];
        ++col_hits[j];
      } else if (v != T(0)) {
        is_permutation = false;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (row_hits[i] != 1 || col_hits[i] != 1) is_permutation = false;
  if (is_diagonal) {
    for (std::size_t i = 0; i < n; ++i) {
      const T& d = q(i, i);
      if (d == T(0) || (signs == DiagonalSigns::kPositiveOnly && d < T(0))) is_diagonal = false;
    }
  }
  if (!is_diagonal && !is_permutation)
    throw std::invalid_argument(
        "scale_congruence: Q must be a permutation or a positive diagonal matrix");

  SymMatrix<T> out(n);
  if (is_diagonal) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) out(i, j) = q(i, i) * a(i, j) * q(j, j);
    return out;
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (q(i, j) == T(1)) perm[j] = i;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out(i, j) = a(perm[i], perm[j]);
  return out;
}

}  // namespace fwcone
