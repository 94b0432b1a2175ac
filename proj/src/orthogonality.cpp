#include "ksmooth/orthogonality.hpp"

#include <algorithm>

#include "ksmooth/lp.hpp"

namespace ksmooth {

template <ExactField K>
Subspace<K>::Subspace(std::vector<Vector<K>> basis) : basis_(std::move(basis)) {
  require(!basis_.empty(), ErrorCode::NotIndependent, "subspace basis is empty");
  require(rank(basis_, basis_.front().size()) == basis_.size(), ErrorCode::NotIndependent,
          "subspace basis is linearly dependent");
}

namespace {

// Convex weights over `functionals` whose combination vanishes on each
// vector of `annihilated`.
template <ExactField K>
std::optional<BjWitness<K>> annihilating_combination(const PolyhedralSpace<K>& space,
                                                     const std::vector<std::size_t>& facets,
                                                     const std::vector<Vector<K>>& annihilated) {
  const auto& fs = space.extreme_functionals();
  Matrix<K> a(annihilated.size() + 1, facets.size());
  Vector<K> b(annihilated.size() + 1, K(0));
  for (std::size_t j = 0; j < facets.size(); ++j) {
    for (std::size_t i = 0; i < annihilated.size(); ++i) a(i, j) = dot(fs[facets[j]], annihilated[i]);
    a(annihilated.size(), j) = K(1);
  }
  b.back() = K(1);
  auto weights = find_feasible(a, b);
  if (!weights) return std::nullopt;
  BjWitness<K> w{facets, *weights, zero_vector<K>(space.dim())};
  for (std::size_t j = 0; j < facets.size(); ++j)
    if (!(*weights)[j].is_zero()) w.functional = w.functional + (*weights)[j] * fs[facets[j]];
  return w;
}

// A point u of V with g(u) = 1 on the face's active functionals and g(u) < 1
// on all others, or nullopt when relint(face) misses V. Maximizes a common
// slack t <= 1 and tests t > 0.
template <ExactField K>
std::optional<Vector<K>> relint_point(const PolyhedralSpace<K>& space, const FaceDescriptor& face,
                                      const std::vector<Vector<K>>& v_basis) {
  const auto& fs = space.extreme_functionals();
  const std::size_t k = v_basis.size();
  std::vector<bool> active(fs.size(), false);
  for (auto i : face.active_set) active[i] = true;
  std::vector<std::size_t> inactive;
  for (std::size_t j = 0; j < fs.size(); ++j)
    if (!active[j]) inactive.push_back(j);

  // Columns: c+ (k), c- (k), s_j (|inactive|), r_j (|inactive|), t, w.
  const std::size_t ni = inactive.size();
  const std::size_t col_s = 2 * k, col_r = col_s + ni, col_t = col_r + ni, col_w = col_t + 1;
  const std::size_t cols = col_w + 1;
  const std::size_t rows = fs.size() + ni + 1;
  Matrix<K> a(rows, cols);
  Vector<K> b(rows, K(0));
  std::size_t row = 0;
  auto put_g = [&](std::size_t g) {
    for (std::size_t c = 0; c < k; ++c) {
      K gv = dot(fs[g], v_basis[c]);
      a(row, c) = gv;
      a(row, k + c) = -gv;
    }
  };
  for (auto g : face.active_set) {
    put_g(g);
    b[row++] = K(1);
  }
  for (std::size_t j = 0; j < ni; ++j) {
    put_g(inactive[j]);
    a(row, col_s + j) = K(1);
    b[row++] = K(1);
  }
  for (std::size_t j = 0; j < ni; ++j) {
    a(row, col_s + j) = K(1);
    a(row, col_t) = K(-1);
    a(row, col_r + j) = K(-1);
    ++row;
  }
  a(row, col_t) = K(1);
  a(row, col_w) = K(1);
  b[row] = K(1);

  Vector<K> c(cols, K(0));
  c[col_t] = K(1);
  auto res = maximize(a, b, c);
  if (res.status != LpStatus::Optimal || res.objective.sign() <= 0) return std::nullopt;
  Vector<K> u = zero_vector<K>(space.dim());
  for (std::size_t i = 0; i < k; ++i) {
    K coeff = res.x[i] - res.x[k + i];
    if (!coeff.is_zero()) u = u + coeff * v_basis[i];
  }
  return u;
}

template <ExactField K>
SubspaceVerdict<K> subspace_check(const PolyhedralSpace<K>& space,
                                  const std::vector<FaceDescriptor>& faces,
                                  const Subspace<K>& v, const std::vector<Vector<K>>& annihilated) {
  require(v.ambient_dim() == space.dim(), ErrorCode::DimensionMismatch,
          "subspace lives in dimension " + std::to_string(v.ambient_dim()));
  SubspaceVerdict<K> out;
  out.orthogonal = true;
  for (const auto& face : faces) {
    auto u = relint_point(space, face, v.basis());
    if (!u) continue;
    ++out.faces_checked;
    require(space.ball().minimal_face(*u) == face, ErrorCode::InternalInconsistency,
            "relative-interior point " + to_string(*u) + " does not lie in its face");
    auto w = annihilating_combination(space, face.active_set, annihilated);
    if (!w) {
      out.orthogonal = false;
      out.failing_face = face;
      out.failing_point = *u;
      out.witnesses.clear();
      return out;
    }
    verify_witness(space, *u, annihilated, *w);
    out.witnesses.push_back(FaceWitness<K>{face, *u, std::move(*w)});
  }
  return out;
}

}  // namespace

template <ExactField K>
void verify_witness(const PolyhedralSpace<K>& space, const Vector<K>& x,
                    const std::vector<Vector<K>>& annihilated, const BjWitness<K>& w) {
  require(dot(w.functional, x) == K(1), ErrorCode::InternalInconsistency,
          "witness " + to_string(w.functional) + " does not norm " + to_string(x));
  require(dual_norm(space, w.functional) == K(1), ErrorCode::InternalInconsistency,
          "witness " + to_string(w.functional) + " does not have dual norm 1");
  for (const auto& y : annihilated)
    require(dot(w.functional, y).is_zero(), ErrorCode::InternalInconsistency,
            "witness " + to_string(w.functional) + " does not vanish on " + to_string(y));
}

template <ExactField K>
BjVerdict<K> bj_vector_vector(const PolyhedralSpace<K>& space, const Vector<K>& x,
                              const Vector<K>& y) {
  const SupportSet<K> s = support_set(space, x);
  require(y.size() == space.dim(), ErrorCode::DimensionMismatch, "vector " + to_string(y));
  std::vector<K> vals;
  for (const auto& f : s.extreme_functionals) vals.push_back(dot(f, y));
  const auto lo = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  const auto hi = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  BjVerdict<K> out;
  if (vals[lo].sign() > 0 || vals[hi].sign() < 0) return out;

  const auto& fs = space.extreme_functionals();
  BjWitness<K> w;
  if (vals[hi].is_zero() || vals[lo].is_zero()) {
    const std::size_t z = vals[hi].is_zero() ? hi : lo;
    w = BjWitness<K>{{s.facet_indices[z]}, {K(1)}, fs[s.facet_indices[z]]};
  } else {
    // (1 - lambda) vals[hi] + lambda vals[lo] = 0
    const K lambda = vals[hi] / (vals[hi] - vals[lo]);
    const K mu = K(1) - lambda;
    w = BjWitness<K>{{s.facet_indices[hi], s.facet_indices[lo]},
                     {mu, lambda},
                     mu * fs[s.facet_indices[hi]] + lambda * fs[s.facet_indices[lo]]};
  }
  verify_witness(space, x, {y}, w);
  out.orthogonal = true;
  out.witness = std::move(w);
  return out;
}

template <ExactField K>
BjVerdict<K> bj_vector_subspace(const PolyhedralSpace<K>& space, const Vector<K>& x,
                                const Subspace<K>& w) {
  require(w.ambient_dim() == space.dim(), ErrorCode::DimensionMismatch,
          "subspace lives in dimension " + std::to_string(w.ambient_dim()));
  const SupportSet<K> s = support_set(space, x);
  BjVerdict<K> out;
  auto witness = annihilating_combination(space, s.facet_indices, w.basis());
  if (!witness) return out;
  verify_witness(space, x, w.basis(), *witness);
  out.orthogonal = true;
  out.witness = std::move(witness);
  return out;
}

template <ExactField K>
SubspaceVerdict<K> bj_subspace_vector(const PolyhedralSpace<K>& space, const Subspace<K>& v,
                                      const Vector<K>& z) {
  require(z.size() == space.dim(), ErrorCode::DimensionMismatch, "vector " + to_string(z));
  return subspace_check(space, space.ball().all_faces(), v, {z});
}

template <ExactField K>
SubspaceVerdict<K> bj_subspace_subspace(const PolyhedralSpace<K>& space, const Subspace<K>& v,
                                        const Subspace<K>& w) {
  require(w.ambient_dim() == space.dim(), ErrorCode::DimensionMismatch,
          "subspace lives in dimension " + std::to_string(w.ambient_dim()));
  return subspace_check(space, space.ball().all_faces(), v, w.basis());
}

template <ExactField K>
SubspaceVerdict<K> is_best_coapproximation(const PolyhedralSpace<K>& space, const Vector<K>& x,
                                           const Vector<K>& y0, const Subspace<K>& y) {
  require(coordinates(y.basis(), y0).has_value(), ErrorCode::Y0NotInSubspace,
          to_string(y0) + " is not in the subspace");
  return bj_subspace_vector(space, y, x - y0);
}

template <ExactField K>
AuerbachVerdict<K> is_strong_auerbach(const PolyhedralSpace<K>& space,
                                      const std::vector<Vector<K>>& basis) {
  for (const auto& b : basis)
    require(norm(space, b) == K(1), ErrorCode::NotUnitNorm,
            "basis vector " + to_string(b) + " does not have norm 1");
  Subspace<K> whole(basis);  // validates independence
  const std::size_t n = basis.size();
  require(n < 8 * sizeof(unsigned long), ErrorCode::LimitExceeded, "basis too large");
  const auto faces = space.ball().all_faces();
  AuerbachVerdict<K> out;
  out.strong_auerbach = true;
  for (unsigned long mask = 1; mask + 1 < (1UL << n); ++mask) {
    std::vector<Vector<K>> c, rest;
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1UL << i)) {
        c.push_back(basis[i]);
        subset.push_back(i);
      } else {
        rest.push_back(basis[i]);
      }
    }
    ++out.subsets_checked;
    if (!subspace_check(space, faces, Subspace<K>(c), rest).orthogonal) {
      out.strong_auerbach = false;
      out.failing_subset = subset;
      return out;
    }
  }
  return out;
}

#define KSMOOTH_INSTANTIATE_ORTHO(K)                                                          \
  template class Subspace<K>;                                                                 \
  template void verify_witness<K>(const PolyhedralSpace<K>&, const Vector<K>&,                \
                                  const std::vector<Vector<K>>&, const BjWitness<K>&);        \
  template BjVerdict<K> bj_vector_vector<K>(const PolyhedralSpace<K>&, const Vector<K>&,      \
                                            const Vector<K>&);                                \
  template BjVerdict<K> bj_vector_subspace<K>(const PolyhedralSpace<K>&, const Vector<K>&,    \
                                              const Subspace<K>&);                            \
  template SubspaceVerdict<K> bj_subspace_vector<K>(const PolyhedralSpace<K>&,                \
                                                    const Subspace<K>&, const Vector<K>&);    \
  template SubspaceVerdict<K> bj_subspace_subspace<K>(const PolyhedralSpace<K>&,              \
                                                      const Subspace<K>&, const Subspace<K>&); \
  template SubspaceVerdict<K> is_best_coapproximation<K>(                                     \
      const PolyhedralSpace<K>&, const Vector<K>&, const Vector<K>&, const Subspace<K>&);     \
  template AuerbachVerdict<K> is_strong_auerbach<K>(const PolyhedralSpace<K>&,                \
                                                    const std::vector<Vector<K>>&);

KSMOOTH_INSTANTIATE_ORTHO(Rational)
KSMOOTH_INSTANTIATE_ORTHO(QuadSqrt2)

}  // namespace ksmooth
