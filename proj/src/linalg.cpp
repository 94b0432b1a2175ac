#include "ksmooth/linalg.hpp"

#include <utility>

namespace ksmooth {

template <ExactField K>
Matrix<K> Matrix<K>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
  return m;
}

template <ExactField K>
Matrix<K> Matrix<K>::from_rows(const std::vector<Vector<K>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, ErrorCode::DimensionMismatch,
            "row " + std::to_string(r) + " has dimension " + std::to_string(rows[r].size()) +
                ", expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

template <ExactField K>
Matrix<K> Matrix<K>::from_columns(const std::vector<Vector<K>>& cols, std::size_t rows) {
  return from_rows(cols, rows).transpose();
}

template <ExactField K>
Vector<K> Matrix<K>::row(std::size_t r) const {
  return Vector<K>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

template <ExactField K>
Vector<K> Matrix<K>::col(std::size_t c) const {
  Vector<K> v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

template <ExactField K>
Matrix<K> Matrix<K>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

template <ExactField K>
Vector<K> Matrix<K>::operator*(const Vector<K>& x) const {
  require(x.size() == cols_, ErrorCode::DimensionMismatch,
          "matrix with " + std::to_string(cols_) + " columns applied to vector of dimension " +
              std::to_string(x.size()));
  Vector<K> y(rows_, K(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  return y;
}

template <ExactField K>
Matrix<K> Matrix<K>::operator*(const Matrix& o) const {
  require(cols_ == o.rows_, ErrorCode::DimensionMismatch, "matrix product");
  Matrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) p(r, c) += (*this)(r, k) * o(k, c);
    }
  return p;
}

template <ExactField K>
std::size_t rank(const Matrix<K>& input) {
  Matrix<K> m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  K prev(1);
  std::size_t k = 0;
  for (; k < rows && k < cols; ++k) {
    std::size_t best_r = rows;
    std::size_t best_c = cols;
    std::size_t best_size = 0;
    for (std::size_t r = k; r < rows; ++r)
      for (std::size_t c = k; c < cols; ++c) {
        if (m(r, c).is_zero()) continue;
        std::size_t size = m(r, c).bit_size();
        if (best_r == rows || size < best_size) {
          best_r = r;
          best_c = c;
          best_size = size;
        }
      }
    if (best_r == rows) break;
    if (best_r != k)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(k, c), m(best_r, c));
    if (best_c != k)
      for (std::size_t r = 0; r < rows; ++r) std::swap(m(r, k), m(r, best_c));
    const K pivot = m(k, k);
    for (std::size_t r = k + 1; r < rows; ++r) {
      for (std::size_t c = k + 1; c < cols; ++c)
        m(r, c) = (pivot * m(r, c) - m(r, k) * m(k, c)) / prev;
      m(r, k) = K(0);
    }
    prev = pivot;
  }
  return k;
}

template <ExactField K>
std::size_t rank(const std::vector<Vector<K>>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  return rank(Matrix<K>::from_rows(vs, dim));
}

namespace {

// Gauss-Jordan reduction in place; returns the pivot column of each nonzero row.
template <ExactField K>
std::vector<std::size_t> reduce_to_rref(Matrix<K>& m, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const K inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const K factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

template <ExactField K>
std::optional<Vector<K>> solve(const Matrix<K>& a, const Vector<K>& b) {
  require(b.size() == a.rows(), ErrorCode::DimensionMismatch, "right-hand side dimension");
  Matrix<K> aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto pivots = reduce_to_rref(aug, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (!aug(r, a.cols()).is_zero()) return std::nullopt;
  Vector<K> x(a.cols(), K(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

template <ExactField K>
std::vector<Vector<K>> nullspace(const Matrix<K>& a) {
  Matrix<K> m = a;
  auto pivots = reduce_to_rref(m, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector<K>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector<K> v(m.cols(), K(0));
    v[f] = K(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <ExactField K>
Vector<K> IncrementalBasis<K>::reduce(Vector<K> v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const K factor = v[pivots_[i]];
    if (factor.is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) v[j] -= factor * rows_[i][j];
  }
  return v;
}

template <ExactField K>
bool IncrementalBasis<K>::try_add(const Vector<K>& v) {
  require(v.size() == dim_, ErrorCode::DimensionMismatch, "vector added to basis");
  Vector<K> r = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && r[p].is_zero()) ++p;
  if (p == dim_) return false;
  const K inv = r[p].inverse();
  for (auto& x : r) x *= inv;
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

template <ExactField K>
bool IncrementalBasis<K>::contains(const Vector<K>& v) const {
  require(v.size() == dim_, ErrorCode::DimensionMismatch, "span membership");
  return is_zero(reduce(v));
}

template <ExactField K>
std::vector<std::size_t> greedy_independent_subset(const std::vector<Vector<K>>& vs) {
  std::vector<std::size_t> kept;
  if (vs.empty()) return kept;
  IncrementalBasis<K> basis(vs.front().size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (basis.try_add(vs[i])) kept.push_back(i);
  return kept;
}

template <ExactField K>
std::optional<Vector<K>> coordinates(const std::vector<Vector<K>>& basis, const Vector<K>& v) {
  if (basis.empty()) {
    if (is_zero(v)) return Vector<K>{};
    return std::nullopt;
  }
  return solve(Matrix<K>::from_columns(basis, v.size()), v);
}

template <ExactField K>
KronVector<K> kron_coeff_vector(const Vector<K>& alpha, const Vector<K>& beta) {
  KronVector<K> out{alpha.size(), beta.size(), {}};
  out.entries.reserve(alpha.size() * beta.size());
  for (const auto& a : alpha)
    for (const auto& b : beta) out.entries.push_back(a * b);
  return out;
}

template <ExactField K>
Vector<K> outer_flatten(const Vector<K>& x, const Vector<K>& f) {
  Vector<K> out;
  out.reserve(x.size() * f.size());
  for (const auto& xi : x)
    for (const auto& fj : f) out.push_back(xi * fj);
  return out;
}

#define KSMOOTH_INSTANTIATE_LINALG(K)                                                         \
  template class Matrix<K>;                                                                   \
  template class IncrementalBasis<K>;                                                         \
  template std::size_t rank<K>(const Matrix<K>&);                                             \
  template std::size_t rank<K>(const std::vector<Vector<K>>&, std::size_t);                   \
  template std::optional<Vector<K>> solve<K>(const Matrix<K>&, const Vector<K>&);             \
  template std::vector<Vector<K>> nullspace<K>(const Matrix<K>&);                             \
  template std::vector<std::size_t> greedy_independent_subset<K>(const std::vector<Vector<K>>&); \
  template std::optional<Vector<K>> coordinates<K>(const std::vector<Vector<K>>&,             \
                                                   const Vector<K>&);                         \
  template KronVector<K> kron_coeff_vector<K>(const Vector<K>&, const Vector<K>&);            \
  template Vector<K> outer_flatten<K>(const Vector<K>&, const Vector<K>&);

KSMOOTH_INSTANTIATE_LINALG(Rational)
KSMOOTH_INSTANTIATE_LINALG(QuadSqrt2)

}  // namespace ksmooth
