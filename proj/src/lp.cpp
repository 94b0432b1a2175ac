#include "ksmooth/lp.hpp"

#include <limits>

namespace ksmooth {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau with the objective row kept as reduced costs
// d_j = c_B B^-1 A_j - c_j; a column may enter while d_j < 0.
template <ExactField K>
struct Tableau {
  std::size_t vars = 0;                // structural + artificial columns
  std::vector<Vector<K>> rows;         // each of size vars + 1, last entry is the rhs
  std::vector<std::size_t> basis;      // basic column per row
  Vector<K> reduced;                   // size vars
  K value{0};

  void pivot(std::size_t r, std::size_t c) {
    const K inv = rows[r][c].inverse();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const K f = rows[i][c];
      for (std::size_t j = 0; j <= vars; ++j) rows[i][j] -= f * rows[r][j];
    }
    if (!reduced[c].is_zero()) {
      const K f = reduced[c];
      for (std::size_t j = 0; j < vars; ++j) reduced[j] -= f * rows[r][j];
      value -= f * rows[r][vars];
    }
    basis[r] = c;
  }

  void set_objective(const Vector<K>& cost) {
    reduced.assign(vars, K(0));
    value = K(0);
    for (std::size_t j = 0; j < vars; ++j) reduced[j] = -cost[j];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const K& cb = cost[basis[r]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < vars; ++j) reduced[j] += cb * rows[r][j];
      value += cb * rows[r][vars];
    }
  }

  // Returns false when the objective is unbounded.
  bool run(std::size_t allowed_cols) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < allowed_cols; ++j)
        if (reduced[j].sign() < 0) {
          enter = j;
          break;
        }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      K best_ratio(0);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][enter].sign() <= 0) continue;
        K ratio = rows[r][vars] / rows[r][enter];
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

template <ExactField K>
LpResult<K> maximize(const Matrix<K>& a, const Vector<K>& b, const Vector<K>& c) {
  require(b.size() == a.rows() && c.size() == a.cols(), ErrorCode::DimensionMismatch,
          "LP data dimensions");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  Tableau<K> t;
  t.vars = n + m;
  for (std::size_t r = 0; r < m; ++r) {
    Vector<K> row(n + m + 1, K(0));
    bool flip = b[r].sign() < 0;
    for (std::size_t j = 0; j < n; ++j) row[j] = flip ? -a(r, j) : a(r, j);
    row[n + r] = K(1);
    row[n + m] = flip ? -b[r] : b[r];
    t.rows.push_back(std::move(row));
    t.basis.push_back(n + r);
  }

  // Phase 1: drive the artificial columns to zero.
  Vector<K> phase1(n + m, K(0));
  for (std::size_t j = n; j < n + m; ++j) phase1[j] = K(-1);
  t.set_objective(phase1);
  t.run(n + m);
  LpResult<K> result;
  if (t.value.sign() < 0) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  for (std::size_t r = 0; r < t.rows.size();) {
    if (t.basis[r] < n) {
      ++r;
      continue;
    }
    std::size_t col = kNone;
    for (std::size_t j = 0; j < n; ++j)
      if (!t.rows[r][j].is_zero()) {
        col = j;
        break;
      }
    if (col == kNone) {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
      continue;
    }
    t.pivot(r, col);
    ++r;
  }

  Vector<K> phase2(n + m, K(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  t.set_objective(phase2);
  if (!t.run(n)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, K(0));
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    if (t.basis[r] < n) result.x[t.basis[r]] = t.rows[r][n + m];
  result.objective = t.value;
  return result;
}

template <ExactField K>
std::optional<Vector<K>> find_feasible(const Matrix<K>& a, const Vector<K>& b) {
  auto r = maximize(a, b, Vector<K>(a.cols(), K(0)));
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.x;
}

template <ExactField K>
std::optional<Vector<K>> convex_combination(const std::vector<Vector<K>>& points,
                                            const Vector<K>& target) {
  if (points.empty()) return std::nullopt;
  const std::size_t d = target.size();
  Matrix<K> a(d + 1, points.size());
  Vector<K> b(d + 1, K(0));
  for (std::size_t j = 0; j < points.size(); ++j) {
    require(points[j].size() == d, ErrorCode::DimensionMismatch, "convex combination point");
    for (std::size_t i = 0; i < d; ++i) a(i, j) = points[j][i];
    a(d, j) = K(1);
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = target[i];
  b[d] = K(1);
  return find_feasible(a, b);
}

#define KSMOOTH_INSTANTIATE_LP(K)                                                          \
  template LpResult<K> maximize<K>(const Matrix<K>&, const Vector<K>&, const Vector<K>&); \
  template std::optional<Vector<K>> find_feasible<K>(const Matrix<K>&, const Vector<K>&); \
  template std::optional<Vector<K>> convex_combination<K>(const std::vector<Vector<K>>&,  \
                                                          const Vector<K>&);

KSMOOTH_INSTANTIATE_LP(Rational)
KSMOOTH_INSTANTIATE_LP(QuadSqrt2)

}  // namespace ksmooth
