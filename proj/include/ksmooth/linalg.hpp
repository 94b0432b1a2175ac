#pragma once

// Dense exact vectors and matrices over an ExactField.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ksmooth/error.hpp"
#include "ksmooth/scalar.hpp"

namespace ksmooth {

template <ExactField K>
using Vector = std::vector<K>;

template <ExactField K>
Vector<K> zero_vector(std::size_t dim) {
  return Vector<K>(dim, K(0));
}

template <ExactField K>
Vector<K> unit_vector(std::size_t dim, std::size_t i) {
  Vector<K> e(dim, K(0));
  e.at(i) = K(1);
  return e;
}

template <ExactField K>
K dot(std::span<const K> a, std::span<const K> b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch,
          "dot product of vectors of dimension " + std::to_string(a.size()) + " and " +
              std::to_string(b.size()));
  K s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <ExactField K>
K dot(const Vector<K>& a, const Vector<K>& b) {
  return dot<K>(std::span<const K>(a), std::span<const K>(b));
}

template <ExactField K>
Vector<K> operator+(Vector<K> a, const Vector<K>& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector sum");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <ExactField K>
Vector<K> operator-(Vector<K> a, const Vector<K>& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector difference");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <ExactField K>
Vector<K> operator-(Vector<K> a) {
  for (auto& x : a) x = -x;
  return a;
}

template <ExactField K>
Vector<K> operator*(const K& c, Vector<K> a) {
  for (auto& x : a) x *= c;
  return a;
}

template <ExactField K>
bool is_zero(const Vector<K>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// Positive when the first nonzero coordinate is positive.
template <ExactField K>
int leading_sign(const Vector<K>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return x.sign();
  return 0;
}

template <ExactField K>
std::string to_string(const Vector<K>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_string();
  }
  return out + ")";
}

template <ExactField K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector<K>>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector<K>>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector<K> row(std::size_t r) const;
  Vector<K> col(std::size_t c) const;
  Matrix transpose() const;

  Vector<K> operator*(const Vector<K>& x) const;
  Matrix operator*(const Matrix& o) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

/// Flattened coefficient tuple ((alpha_i beta_j)) laid out i-major, j-minor.
template <ExactField K>
struct KronVector {
  std::size_t n = 0;
  std::size_t p = 0;
  Vector<K> entries;
};

/// Exact rank by fraction-free (Bareiss) elimination with full pivoting on the
/// entry of smallest bit size.
template <ExactField K>
std::size_t rank(const Matrix<K>& m);

/// Rank of a list of vectors of common dimension `dim`.
template <ExactField K>
std::size_t rank(const std::vector<Vector<K>>& vs, std::size_t dim);

/// Solves A x = b. Returns the solution with free variables set to zero, or
/// nullopt when b is outside the column space of A.
template <ExactField K>
std::optional<Vector<K>> solve(const Matrix<K>& a, const Vector<K>& b);

/// Basis of {x : A x = 0}.
template <ExactField K>
std::vector<Vector<K>> nullspace(const Matrix<K>& a);

/// Indices (ascending) of the vectors that increase the rank when scanned in
/// input order.
template <ExactField K>
std::vector<std::size_t> greedy_independent_subset(const std::vector<Vector<K>>& vs);

/// Coordinates of v in the basis `basis`, or nullopt when v is outside its span.
template <ExactField K>
std::optional<Vector<K>> coordinates(const std::vector<Vector<K>>& basis, const Vector<K>& v);

template <ExactField K>
KronVector<K> kron_coeff_vector(const Vector<K>& alpha, const Vector<K>& beta);

/// Coefficient array of the bilinear form S -> f(S x): entry (i * m + j) is
/// x_i f_j for x of dimension n and f of dimension m.
template <ExactField K>
Vector<K> outer_flatten(const Vector<K>& x, const Vector<K>& f);

/// Row-echelon span tracker used for incremental rank questions.
template <ExactField K>
class IncrementalBasis {
 public:
  explicit IncrementalBasis(std::size_t dim) : dim_(dim) {}

  /// Adds v if it is independent of the vectors already held.
  bool try_add(const Vector<K>& v);
  bool contains(const Vector<K>& v) const;
  std::size_t size() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  Vector<K> reduce(Vector<K> v) const;

  std::size_t dim_;
  std::vector<Vector<K>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace ksmooth
