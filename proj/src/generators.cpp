#include "ksmooth/generators.hpp"

namespace ksmooth {

template <ExactField K>
Matrix<K> random_invertible_matrix(Rng& rng, std::size_t n) {
  for (;;) {
    Matrix<K> m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = field_cast<K>(rng.rational(3, 2));
    if (rank(m) == n) return m;
  }
}

template <ExactField K>
Vector<K> random_unit_vector(Rng& rng, const PolyhedralSpace<K>& x) {
  for (;;) {
    Vector<K> v(x.dim());
    for (auto& c : v) c = field_cast<K>(rng.rational(4, 3));
    if (!is_zero(v)) return normalize(x, v);
  }
}

namespace {

template <ExactField K>
const Vector<K>& pick(Rng& rng, const std::vector<Vector<K>>& from) {
  return from[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(from.size()) - 1))];
}

}  // namespace

template <ExactField K>
LinearOperator<K> random_unit_operator(Rng& rng, SpacePtr<K> x, SpacePtr<K> y) {
  const std::size_t n = x->dim();
  const std::size_t m = y->dim();
  for (;;) {
    Matrix<K> mat(m, n);
    switch (rng.uniform(0, 2)) {
      case 0:
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < n; ++c) mat(r, c) = field_cast<K>(rng.rational(2, 2));
        break;
      case 1:
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < n; ++c) mat(r, c) = K(rng.uniform(-1, 1));
        break;
      default: {
        // Send a random basis drawn from Ext(B_X) to points of Ext(B_Y) or 0.
        IncrementalBasis<K> span(n);
        std::vector<Vector<K>> basis;
        for (int guard = 0; span.size() < n && guard < 200; ++guard) {
          const auto& v = pick(rng, x->extreme_points());
          if (span.try_add(v)) basis.push_back(v);
        }
        if (span.size() < n) continue;
        std::vector<Vector<K>> images;
        for (std::size_t i = 0; i < n; ++i)
          images.push_back(rng.uniform(0, 3) == 0 ? zero_vector<K>(m)
                                                  : pick(rng, y->extreme_points()));
        const Matrix<K> b = Matrix<K>::from_columns(basis, n);
        std::vector<Vector<K>> inv_cols;
        for (std::size_t k = 0; k < n; ++k) inv_cols.push_back(*solve(b, unit_vector<K>(n, k)));
        mat = Matrix<K>::from_columns(images, m) * Matrix<K>::from_columns(inv_cols, n);
        break;
      }
    }
    bool zero = true;
    for (std::size_t r = 0; r < m && zero; ++r)
      for (std::size_t c = 0; c < n && zero; ++c) zero = mat(r, c).is_zero();
    if (zero) continue;
    return normalized(LinearOperator<K>(x, y, std::move(mat)));
  }
}

template <ExactField K>
LinearOperator<K> random_rank1_operator(Rng& rng, SpacePtr<K> x, SpacePtr<K> y) {
  const std::size_t n = x->dim();
  const std::size_t m = y->dim();
  for (;;) {
    Vector<K> g;
    switch (rng.uniform(0, 2)) {
      case 0:
        g = pick(rng, x->extreme_functionals());
        break;
      case 1: {
        // Mean of the active functionals at a random vertex or edge midpoint.
        const auto& verts = x->extreme_points();
        Vector<K> p = pick(rng, verts);
        if (rng.coin()) {
          const Vector<K>& q = pick(rng, verts);
          if (q != -p) p = K(1) / K(2) * (p + q);
        }
        const auto active = norming_functionals(*x, p);
        g = zero_vector<K>(n);
        for (auto f : active) g = g + x->extreme_functionals()[f];
        break;
      }
      default:
        g = Vector<K>(n);
        for (auto& c : g) c = field_cast<K>(rng.rational(3, 2));
        break;
    }
    if (is_zero(g)) continue;
    Vector<K> u;
    switch (rng.uniform(0, 2)) {
      case 0:
        u = pick(rng, y->extreme_points());
        break;
      case 1: {
        const Vector<K>& a = pick(rng, y->extreme_points());
        const Vector<K>& b = pick(rng, y->extreme_points());
        if (a == -b) continue;
        u = normalize(*y, K(1) / K(2) * (a + b));
        break;
      }
      default:
        u = random_unit_vector(rng, *y);
        break;
    }
    std::vector<Vector<K>> cols;
    for (std::size_t c = 0; c < n; ++c) cols.push_back(g[c] * u);
    return normalized(LinearOperator<K>(x, y, Matrix<K>::from_columns(cols, m)));
  }
}

#define KSMOOTH_INSTANTIATE_GENERATORS(K)                                                  \
  template Matrix<K> random_invertible_matrix<K>(Rng&, std::size_t);                       \
  template Vector<K> random_unit_vector<K>(Rng&, const PolyhedralSpace<K>&);               \
  template LinearOperator<K> random_unit_operator<K>(Rng&, SpacePtr<K>, SpacePtr<K>);      \
  template LinearOperator<K> random_rank1_operator<K>(Rng&, SpacePtr<K>, SpacePtr<K>);

KSMOOTH_INSTANTIATE_GENERATORS(Rational)
KSMOOTH_INSTANTIATE_GENERATORS(QuadSqrt2)

}  // namespace ksmooth
