#include "ksmooth/normed_space.hpp"

#include "ksmooth/random.hpp"

namespace ksmooth {

template <ExactField K>
PolyhedralSpace<K>::PolyhedralSpace(std::string name, Polytope<K> ball)
    : name_(std::move(name)),
      ball_(std::make_shared<const Polytope<K>>(std::move(ball))),
      dual_(std::make_shared<const Polytope<K>>(ball_->polar())) {}

template <ExactField K>
PolyhedralSpace<K> PolyhedralSpace<K>::from_vertices(std::string name,
                                                     const std::vector<Vector<K>>& points,
                                                     const Limits& limits) {
  return PolyhedralSpace(std::move(name), Polytope<K>::from_vertices(points, limits));
}

template <ExactField K>
PolyhedralSpace<K> PolyhedralSpace<K>::from_facets(std::string name,
                                                   const std::vector<Vector<K>>& functionals,
                                                   const Limits& limits) {
  return PolyhedralSpace(std::move(name), Polytope<K>::from_facets(functionals, limits));
}

template <ExactField K>
K norm(const PolyhedralSpace<K>& space, const Vector<K>& x) {
  return space.ball().gauge(x);
}

template <ExactField K>
K dual_norm(const PolyhedralSpace<K>& space, const Vector<K>& f) {
  return space.dual_ball().gauge(f);
}

template <ExactField K>
Vector<K> normalize(const PolyhedralSpace<K>& space, const Vector<K>& x) {
  const K n = norm(space, x);
  require(!n.is_zero(), ErrorCode::DivisionByZero, "cannot normalize the zero vector");
  return n.inverse() * x;
}

template <ExactField K>
std::vector<std::size_t> norming_functionals(const PolyhedralSpace<K>& space,
                                             const Vector<K>& y) {
  const K n = norm(space, y);
  std::vector<std::size_t> out;
  const auto& fs = space.extreme_functionals();
  for (std::size_t f = 0; f < fs.size(); ++f)
    if (dot(fs[f], y) == n) out.push_back(f);
  return out;
}

template <ExactField K>
SupportSet<K> support_set(const PolyhedralSpace<K>& space, const Vector<K>& x) {
  const K n = norm(space, x);
  require(n == K(1), ErrorCode::NotUnitNorm,
          "vector " + to_string(x) + " has norm " + n.to_string() + " in " + space.name());
  SupportSet<K> s;
  s.base_point = x;
  s.facet_indices = norming_functionals(space, x);
  for (auto f : s.facet_indices) s.extreme_functionals.push_back(space.extreme_functionals()[f]);
  s.smoothness_order = rank(s.extreme_functionals, space.dim());
  return s;
}

template <ExactField K>
std::size_t point_smoothness(const PolyhedralSpace<K>& space, const Vector<K>& x) {
  const std::size_t k = support_set(space, x).smoothness_order;
  const FaceDescriptor face = space.ball().minimal_face(x);
  require(k == space.dim() - face.dim, ErrorCode::InternalInconsistency,
          "point " + to_string(x) + ": support functionals have rank " + std::to_string(k) +
              " but the minimal face has dimension " + std::to_string(face.dim) + " in " +
              space.name());
  return k;
}

template <ExactField K>
PolyhedralSpace<K> ell1(std::size_t n) {
  std::vector<Vector<K>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(unit_vector<K>(n, i));
    pts.push_back(-unit_vector<K>(n, i));
  }
  return PolyhedralSpace<K>::from_vertices("ell1:" + std::to_string(n), pts);
}

template <ExactField K>
PolyhedralSpace<K> ellinf(std::size_t n) {
  std::vector<Vector<K>> fs;
  for (std::size_t i = 0; i < n; ++i) {
    fs.push_back(unit_vector<K>(n, i));
    fs.push_back(-unit_vector<K>(n, i));
  }
  return PolyhedralSpace<K>::from_facets("ellinf:" + std::to_string(n), fs);
}

PolyhedralSpace<QuadSqrt2> paper_example_space() {
  using Q = QuadSqrt2;
  const Q h(Rational(0), Rational(1, 2));  // 1/sqrt(2)
  std::vector<Vector<Q>> pairs = {
      {Q(1), Q(0), Q(0)}, {h, h, Q(0)}, {Q(0), Q(1), Q(0)}, {-h, h, Q(0)}, {Q(0), Q(0), Q(1)}};
  std::vector<Vector<Q>> pts;
  for (const auto& p : pairs) {
    pts.push_back(p);
    pts.push_back(-p);
  }
  return PolyhedralSpace<Q>::from_vertices("paper-example", pts);
}

template <ExactField K>
PolyhedralSpace<K> ellinf_sum(const PolyhedralSpace<K>& y, std::size_t copies,
                              const Limits& limits) {
  const std::size_t m = y.dim();
  std::vector<Vector<K>> fs;
  for (std::size_t block = 0; block < copies; ++block)
    for (const auto& g : y.extreme_functionals()) {
      Vector<K> f(m * copies, K(0));
      for (std::size_t j = 0; j < m; ++j) f[block * m + j] = g[j];
      fs.push_back(std::move(f));
    }
  return PolyhedralSpace<K>::from_facets(
      "ellinf-sum(" + y.name() + "," + std::to_string(copies) + ")", fs, limits);
}

template <ExactField K>
PolyhedralSpace<K> random_space(Rng& rng, std::size_t dim, std::size_t points) {
  for (;;) {
    std::vector<Vector<K>> pts;
    for (std::size_t i = 0; i < points; ++i) {
      Vector<K> p(dim);
      for (auto& x : p) x = field_cast<K>(rng.rational(4, 4));
      pts.push_back(p);
      pts.push_back(-p);
    }
    if (rank(pts, dim) < dim) continue;
    return PolyhedralSpace<K>::from_vertices("random:" + std::to_string(dim), pts);
  }
}

template <ExactField K>
PolyhedralSpace<K> random_space(std::uint64_t seed, std::size_t dim, std::size_t points) {
  Rng rng(seed);
  return random_space<K>(rng, dim, points);
}

#define KSMOOTH_INSTANTIATE_SPACE(K)                                                         \
  template class PolyhedralSpace<K>;                                                         \
  template K norm<K>(const PolyhedralSpace<K>&, const Vector<K>&);                           \
  template K dual_norm<K>(const PolyhedralSpace<K>&, const Vector<K>&);                      \
  template Vector<K> normalize<K>(const PolyhedralSpace<K>&, const Vector<K>&);              \
  template std::vector<std::size_t> norming_functionals<K>(const PolyhedralSpace<K>&,        \
                                                           const Vector<K>&);                \
  template SupportSet<K> support_set<K>(const PolyhedralSpace<K>&, const Vector<K>&);        \
  template std::size_t point_smoothness<K>(const PolyhedralSpace<K>&, const Vector<K>&);     \
  template PolyhedralSpace<K> ell1<K>(std::size_t);                                          \
  template PolyhedralSpace<K> ellinf<K>(std::size_t);                                        \
  template PolyhedralSpace<K> ellinf_sum<K>(const PolyhedralSpace<K>&, std::size_t,          \
                                            const Limits&);                                  \
  template PolyhedralSpace<K> random_space<K>(Rng&, std::size_t, std::size_t);              \
  template PolyhedralSpace<K> random_space<K>(std::uint64_t, std::size_t, std::size_t);

KSMOOTH_INSTANTIATE_SPACE(Rational)
KSMOOTH_INSTANTIATE_SPACE(QuadSqrt2)

}  // namespace ksmooth
