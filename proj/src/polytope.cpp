#include "ksmooth/polytope.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

#include "ksmooth/lp.hpp"

namespace ksmooth {

namespace {

std::size_t env_or(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) {
    fail(ErrorCode::InvalidInput, std::string(name) + " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

template <ExactField K>
bool lex_greater(const Vector<K>& a, const Vector<K>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return a[i] > b[i];
  }
  return false;
}

template <ExactField K>
bool contains_point(const std::vector<Vector<K>>& set, const Vector<K>& p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

template <ExactField K>
void require_symmetric(const std::vector<Vector<K>>& set, const char* what) {
  for (const auto& p : set)
    if (!contains_point(set, -p))
      fail(ErrorCode::NotSymmetric, std::string(what) + " " + to_string(p) +
                                        " has no negated counterpart");
}

template <ExactField K>
std::size_t common_dim(const std::vector<Vector<K>>& set, const char* what) {
  require(!set.empty(), ErrorCode::NotFullDimensional, std::string("no ") + what + "s given");
  const std::size_t d = set.front().size();
  require(d > 0, ErrorCode::InvalidInput, "zero-dimensional space");
  for (const auto& p : set)
    require(p.size() == d, ErrorCode::DimensionMismatch,
            std::string(what) + " " + to_string(p) + " does not have dimension " +
                std::to_string(d));
  return d;
}

void check_limits(std::size_t dim, std::size_t count, const Limits& limits, const char* what) {
  require(dim <= limits.max_dim, ErrorCode::LimitExceeded,
          "dimension " + std::to_string(dim) + " exceeds the limit " +
              std::to_string(limits.max_dim) + " (set KSMOOTH_MAX_DIM to override)");
  require(count <= limits.max_vertices, ErrorCode::LimitExceeded,
          std::to_string(count) + " " + what + " exceed the limit " +
              std::to_string(limits.max_vertices) + " (set KSMOOTH_MAX_VERTICES to override)");
}

template <ExactField K>
void normalize_ray(Vector<K>& y) {
  for (const auto& x : y)
    if (!x.is_zero()) {
      const K inv = x.abs().inverse();
      for (auto& v : y) v *= inv;
      return;
    }
}

// Double description: vertices of the bounded polytope {x : a_i . x <= 1}.
// Works on the homogenized cone {(t, x) : t - a_i . x >= 0, t >= 0}; rows are
// inserted in input order so the result is reproducible.
template <ExactField K>
std::vector<Vector<K>> enumerate_vertices(const std::vector<Vector<K>>& a, std::size_t d) {
  using Bitset = boost::dynamic_bitset<>;
  const std::size_t big_d = d + 1;
  const std::size_t m = a.size() + 1;
  std::vector<Vector<K>> rows;
  rows.reserve(m);
  for (const auto& ai : a) {
    Vector<K> g(big_d, K(1));
    for (std::size_t j = 0; j < d; ++j) g[j + 1] = -ai[j];
    rows.push_back(std::move(g));
  }
  rows.push_back(unit_vector<K>(big_d, 0));

  auto initial = greedy_independent_subset(rows);
  require(initial.size() == big_d, ErrorCode::NotFullDimensional,
          "inequalities do not bound a full-dimensional polytope");

  struct Ray {
    Vector<K> y;
    Bitset zero;
  };
  std::vector<Ray> rays;
  {
    std::vector<Vector<K>> basis_rows;
    for (auto i : initial) basis_rows.push_back(rows[i]);
    Matrix<K> sel = Matrix<K>::from_rows(basis_rows, big_d);
    for (std::size_t k = 0; k < big_d; ++k) {
      auto y = solve(sel, unit_vector<K>(big_d, k));
      require(y.has_value(), ErrorCode::InternalInconsistency, "initial cone is singular");
      Ray r{std::move(*y), Bitset(m)};
      for (std::size_t j = 0; j < big_d; ++j)
        if (j != k) r.zero.set(initial[j]);
      normalize_ray(r.y);
      rays.push_back(std::move(r));
    }
  }
  std::vector<bool> processed(m, false);
  for (auto i : initial) processed[i] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (processed[i]) continue;
    processed[i] = true;
    std::vector<K> s;
    s.reserve(rays.size());
    for (const auto& r : rays) s.push_back(dot(rows[i], r.y));

    std::vector<Ray> next;
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      int sg = s[k].sign();
      if (sg > 0) {
        pos.push_back(k);
        next.push_back(rays[k]);
      } else if (sg == 0) {
        next.push_back(rays[k]);
        next.back().zero.set(i);
      } else {
        neg.push_back(k);
      }
    }
    for (auto p : pos)
      for (auto n : neg) {
        Bitset common = rays[p].zero & rays[n].zero;
        if (common.count() + 2 < big_d) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          if (common.is_subset_of(rays[k].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray r{s[p] * rays[n].y - s[n] * rays[p].y, common};
        r.zero.set(i);
        normalize_ray(r.y);
        next.push_back(std::move(r));
      }
    rays = std::move(next);
  }

  std::vector<Vector<K>> out;
  out.reserve(rays.size());
  for (const auto& r : rays) {
    require(r.y[0].sign() > 0, ErrorCode::NotFullDimensional,
            "inequality system is unbounded");
    Vector<K> x(d);
    const K inv = r.y[0].inverse();
    for (std::size_t j = 0; j < d; ++j) x[j] = r.y[j + 1] * inv;
    out.push_back(std::move(x));
  }
  return out;
}

template <ExactField K>
std::vector<Vector<K>> sorted_desc(std::vector<Vector<K>> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return lex_greater(a, b); });
  return v;
}

}  // namespace

Limits Limits::from_env() {
  Limits l;
  l.max_dim = env_or("KSMOOTH_MAX_DIM", l.max_dim);
  l.max_vertices = env_or("KSMOOTH_MAX_VERTICES", l.max_vertices);
  return l;
}

Limits Limits::unlimited() {
  return Limits{static_cast<std::size_t>(-1), static_cast<std::size_t>(-1)};
}

template <ExactField K>
VRep<K> canonicalize(const std::vector<Vector<K>>& points) {
  common_dim(points, "point");
  std::vector<Vector<K>> unique;
  for (const auto& p : points)
    if (!contains_point(unique, p)) unique.push_back(p);
  VRep<K> out;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    std::vector<Vector<K>> others;
    others.reserve(unique.size() - 1);
    for (std::size_t j = 0; j < unique.size(); ++j)
      if (j != i) others.push_back(unique[j]);
    if (!convex_combination(others, unique[i])) out.vertices.push_back(unique[i]);
  }
  require_symmetric(out.vertices, "extreme point");
  return out;
}

template <ExactField K>
HRep<K> v_to_h(const VRep<K>& v, const Limits& limits) {
  const std::size_t d = common_dim(v.vertices, "vertex");
  check_limits(d, v.vertices.size(), limits, "vertices");
  require(rank(v.vertices, d) == d, ErrorCode::NotFullDimensional,
          "vertices span a subspace of dimension " + std::to_string(rank(v.vertices, d)) +
              " < " + std::to_string(d));
  require_symmetric(v.vertices, "vertex");
  HRep<K> h{sorted_desc(enumerate_vertices(v.vertices, d))};
  check_limits(d, h.functionals.size(), limits, "facets");
  return h;
}

template <ExactField K>
VRep<K> h_to_v(const HRep<K>& h, const Limits& limits) {
  const std::size_t d = common_dim(h.functionals, "functional");
  check_limits(d, h.functionals.size(), limits, "facets");
  require(rank(h.functionals, d) == d, ErrorCode::NotFullDimensional,
          "functionals do not bound the ball (rank " +
              std::to_string(rank(h.functionals, d)) + " < " + std::to_string(d) + ")");
  require_symmetric(h.functionals, "functional");
  VRep<K> v{sorted_desc(enumerate_vertices(h.functionals, d))};
  check_limits(d, v.vertices.size(), limits, "vertices");
  return v;
}

template <ExactField K>
Polytope<K>::Polytope(std::size_t dim, std::vector<Vector<K>> vertices,
                      std::vector<Vector<K>> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {
  facet_vertices_.assign(facets_.size(), Bitset(vertices_.size()));
  vertex_facets_.assign(vertices_.size(), Bitset(facets_.size()));
  const K one(1);
  for (std::size_t f = 0; f < facets_.size(); ++f)
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      K val = dot(facets_[f], vertices_[v]);
      require(val <= one, ErrorCode::InternalInconsistency,
              "vertex " + to_string(vertices_[v]) + " violates facet " + to_string(facets_[f]));
      if (val == one) {
        facet_vertices_[f].set(v);
        vertex_facets_[v].set(f);
      }
    }
}

template <ExactField K>
Polytope<K> Polytope<K>::from_vertices(const std::vector<Vector<K>>& points,
                                       const Limits& limits) {
  VRep<K> v = canonicalize(points);
  HRep<K> h = v_to_h(v, limits);
  const std::size_t d = v.vertices.front().size();
  return Polytope(d, std::move(v.vertices), std::move(h.functionals));
}

template <ExactField K>
Polytope<K> Polytope<K>::from_facets(const std::vector<Vector<K>>& functionals,
                                     const Limits& limits) {
  VRep<K> canon = canonicalize(functionals);
  HRep<K> h{std::move(canon.vertices)};
  VRep<K> v = h_to_v(h, limits);
  const std::size_t d = h.functionals.front().size();
  return Polytope(d, std::move(v.vertices), std::move(h.functionals));
}

template <ExactField K>
Polytope<K> Polytope<K>::polar() const {
  return Polytope(dim_, facets_, vertices_);
}

template <ExactField K>
K Polytope<K>::gauge(const Vector<K>& x) const {
  require(x.size() == dim_, ErrorCode::DimensionMismatch,
          "vector " + to_string(x) + " in a space of dimension " + std::to_string(dim_));
  K best = dot(facets_.front(), x);
  for (std::size_t f = 1; f < facets_.size(); ++f) best = std::max(best, dot(facets_[f], x));
  return best;
}

template <ExactField K>
std::size_t Polytope<K>::face_dim(const Bitset& active) const {
  std::vector<Vector<K>> rows;
  for (auto f = active.find_first(); f != Bitset::npos; f = active.find_next(f))
    rows.push_back(facets_[f]);
  return dim_ - rank(rows, dim_);
}

template <ExactField K>
typename Polytope<K>::Bitset Polytope<K>::vertices_of_active(const Bitset& active) const {
  Bitset verts(vertices_.size());
  verts.set();
  for (auto f = active.find_first(); f != Bitset::npos; f = active.find_next(f))
    verts &= facet_vertices_[f];
  return verts;
}

namespace {

std::vector<std::size_t> bits_to_indices(const boost::dynamic_bitset<>& b) {
  std::vector<std::size_t> out;
  for (auto i = b.find_first(); i != boost::dynamic_bitset<>::npos; i = b.find_next(i))
    out.push_back(i);
  return out;
}

}  // namespace

template <ExactField K>
FaceDescriptor Polytope<K>::minimal_face(const Vector<K>& x) const {
  const K g = gauge(x);
  require(g == K(1), ErrorCode::NotOnBoundary,
          "point " + to_string(x) + " has gauge " + g.to_string() + ", not 1");
  Bitset active(facets_.size());
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (dot(facets_[f], x) == K(1)) active.set(f);
  return FaceDescriptor{bits_to_indices(active), face_dim(active), false};
}

template <ExactField K>
FaceDescriptor Polytope<K>::face_from_facets(const std::vector<std::size_t>& active) const {
  if (active.empty()) return FaceDescriptor{{}, dim_, true};
  Bitset a(facets_.size());
  for (auto f : active) {
    require(f < facets_.size(), ErrorCode::InvalidInput,
            "facet index " + std::to_string(f) + " out of range");
    a.set(f);
  }
  Bitset verts = vertices_of_active(a);
  require(verts.any(), ErrorCode::NotProperFace, "the given facets have empty intersection");
  Bitset closed(facets_.size());
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (verts.is_subset_of(facet_vertices_[f])) closed.set(f);
  return FaceDescriptor{bits_to_indices(closed), face_dim(closed), false};
}

template <ExactField K>
std::vector<FaceDescriptor> Polytope<K>::all_faces() const {
  // Every nonempty proper face is an intersection of facets; close each
  // intersection to its maximal active set and deduplicate on that key.
  std::map<Bitset, Bitset> seen;  // active set -> vertex set
  std::vector<Bitset> queue;
  auto visit = [&](const Bitset& verts) {
    Bitset active(facets_.size());
    for (std::size_t f = 0; f < facets_.size(); ++f)
      if (verts.is_subset_of(facet_vertices_[f])) active.set(f);
    if (seen.emplace(active, vertices_of_active(active)).second) queue.push_back(active);
  };
  for (std::size_t f = 0; f < facets_.size(); ++f) visit(facet_vertices_[f]);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Bitset active = queue[head];
    const Bitset verts = seen.at(active);
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (active.test(f)) continue;
      Bitset sub = verts & facet_vertices_[f];
      if (sub.any()) visit(sub);
    }
  }
  std::vector<FaceDescriptor> faces;
  faces.reserve(seen.size());
  for (const auto& [active, verts] : seen)
    faces.push_back(FaceDescriptor{bits_to_indices(active), face_dim(active), false});
  std::sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.active_set < b.active_set;
  });
  return faces;
}

template <ExactField K>
std::vector<FaceDescriptor> Polytope<K>::enumerate_faces(std::size_t dim) const {
  require(dim < dim_, ErrorCode::InvalidInput,
          "face dimension " + std::to_string(dim) + " must be below " + std::to_string(dim_));
  std::vector<FaceDescriptor> out;
  for (auto& f : all_faces())
    if (f.dim == dim) out.push_back(std::move(f));
  return out;
}

template <ExactField K>
std::size_t Polytope<K>::count_faces(std::size_t dim) const {
  return enumerate_faces(dim).size();
}

template <ExactField K>
std::vector<std::size_t> Polytope<K>::face_vertex_indices(const FaceDescriptor& face) const {
  if (face.improper) {
    std::vector<std::size_t> all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  Bitset a(facets_.size());
  for (auto f : face.active_set) a.set(f);
  return bits_to_indices(vertices_of_active(a));
}

template <ExactField K>
long euler_characteristic(const Polytope<K>& p) {
  std::vector<long> counts(p.dim(), 0);
  for (const auto& f : p.all_faces()) ++counts[f.dim];
  long chi = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * counts[i];
  return chi;
}

#define KSMOOTH_INSTANTIATE_POLYTOPE(K)                                       \
  template VRep<K> canonicalize<K>(const std::vector<Vector<K>>&);            \
  template HRep<K> v_to_h<K>(const VRep<K>&, const Limits&);                  \
  template VRep<K> h_to_v<K>(const HRep<K>&, const Limits&);                  \
  template class Polytope<K>;                                                 \
  template long euler_characteristic<K>(const Polytope<K>&);

KSMOOTH_INSTANTIATE_POLYTOPE(Rational)
KSMOOTH_INSTANTIATE_POLYTOPE(QuadSqrt2)

}  // namespace ksmooth
