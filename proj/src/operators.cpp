#include "ksmooth/operators.hpp"

#include <algorithm>

namespace ksmooth {

namespace {

template <ExactField K>
Vector<K> representative(const Vector<K>& v) {
  return leading_sign(v) < 0 ? -v : v;
}

template <ExactField K>
bool contains_up_to_sign(const std::vector<Vector<K>>& set, const Vector<K>& v) {
  const Vector<K> neg = -v;
  return std::any_of(set.begin(), set.end(), [&](const auto& s) { return s == v || s == neg; });
}

template <ExactField K>
void require_unit_operator(const AttainmentSet<K>& a) {
  require(a.operator_norm == K(1), ErrorCode::NotUnitNorm,
          "operator has norm " + a.operator_norm.to_string() + ", expected 1");
}

}  // namespace

template <ExactField K>
LinearOperator<K>::LinearOperator(SpacePtr<K> domain, SpacePtr<K> codomain, Matrix<K> matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  require(domain_ && codomain_, ErrorCode::InvalidInput, "operator needs both spaces");
  require(matrix_.rows() == codomain_->dim() && matrix_.cols() == domain_->dim(),
          ErrorCode::DimensionMismatch,
          "matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
              " but the operator maps dimension " + std::to_string(domain_->dim()) + " to " +
              std::to_string(codomain_->dim()));
}

template <ExactField K>
AttainmentSet<K> operator_norm_and_attainment(const LinearOperator<K>& t) {
  const auto& verts = t.domain().extreme_points();
  std::vector<K> norms;
  norms.reserve(verts.size());
  for (const auto& v : verts) norms.push_back(norm(t.codomain(), t.apply(v)));
  AttainmentSet<K> a;
  a.operator_norm = *std::max_element(norms.begin(), norms.end());
  require(!a.operator_norm.is_zero(), ErrorCode::ZeroOperator, "operator is zero");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (norms[i] != a.operator_norm) continue;
    Vector<K> rep = representative(verts[i]);
    if (std::find(a.attaining_vertices.begin(), a.attaining_vertices.end(), rep) !=
        a.attaining_vertices.end())
      continue;
    auto idx = static_cast<std::size_t>(std::find(verts.begin(), verts.end(), rep) - verts.begin());
    a.attaining_vertices.push_back(std::move(rep));
    a.vertex_indices.push_back(idx);
  }
  a.basis_indices = greedy_independent_subset(a.attaining_vertices);
  return a;
}

template <ExactField K>
LinearOperator<K> normalized(const LinearOperator<K>& t) {
  const K n = operator_norm_and_attainment(t).operator_norm;
  const K inv = n.inverse();
  Matrix<K> m = t.matrix();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) *= inv;
  return LinearOperator<K>(t.domain_ptr(), t.codomain_ptr(), std::move(m));
}

namespace {

// Validates R and returns its members in Ext(B_X), one per +- pair, together
// with the concatenated Ext(J(Tv)) lists.
template <ExactField K>
void collect_members(const LinearOperator<K>& t, const std::vector<Vector<K>>& r,
                     IndexComputation<K>& out) {
  require_unit_operator(operator_norm_and_attainment(t));
  require(!r.empty(), ErrorCode::InvalidInput, "the set R is empty");
  const auto& ext = t.domain().extreme_points();
  for (const auto& v : r) {
    const K n = norm(t.domain(), v);
    require(n == K(1), ErrorCode::NotUnitNorm,
            "element " + to_string(v) + " of R has norm " + n.to_string());
    if (std::find(ext.begin(), ext.end(), v) == ext.end()) continue;
    if (contains_up_to_sign(out.extreme_members, v)) continue;
    out.extreme_members.push_back(v);
    out.member_functionals.push_back(norming_functionals(t.codomain(), t.apply(v)));
  }
  require(!out.extreme_members.empty(), ErrorCode::EmptyExtremeIntersection,
          "no element of R is an extreme point of the unit ball of " + t.domain().name());
}

template <ExactField K>
void fill_generators(const LinearOperator<K>& t, IndexComputation<K>& out) {
  const auto& fs = t.codomain().extreme_functionals();
  for (std::size_t k = 0; k < out.extreme_members.size(); ++k) {
    auto alpha = coordinates(out.domain_basis, out.extreme_members[k]);
    require(alpha.has_value(), ErrorCode::SpanViolation,
            "extreme point " + to_string(out.extreme_members[k]) +
                " is outside the span of the domain basis");
    for (auto f : out.member_functionals[k]) {
      auto beta = coordinates(out.functional_basis, fs[f]);
      require(beta.has_value(), ErrorCode::SpanViolation,
              "support functional " + to_string(fs[f]) +
                  " is outside the span of the functional basis");
      out.z_generators.push_back(kron_coeff_vector(*alpha, *beta));
    }
    out.alphas.push_back(std::move(*alpha));
  }
  std::vector<Vector<K>> z;
  z.reserve(out.z_generators.size());
  for (const auto& g : out.z_generators) z.push_back(g.entries);
  out.index = rank(z, out.domain_basis.size() * out.functional_basis.size());
}

template <ExactField K>
void require_independent(const std::vector<Vector<K>>& basis, const char* what) {
  require(!basis.empty(), ErrorCode::NotIndependent, std::string(what) + " is empty");
  require(rank(basis, basis.front().size()) == basis.size(), ErrorCode::NotIndependent,
          std::string(what) + " is linearly dependent");
}

}  // namespace

template <ExactField K>
IndexComputation<K> index_computation(const LinearOperator<K>& t,
                                      const std::vector<Vector<K>>& r) {
  IndexComputation<K> out;
  collect_members(t, r, out);
  for (auto i : greedy_independent_subset(r)) out.domain_basis.push_back(r[i]);
  std::vector<Vector<K>> all_functionals;
  for (const auto& list : out.member_functionals)
    for (auto f : list) all_functionals.push_back(t.codomain().extreme_functionals()[f]);
  for (auto i : greedy_independent_subset(all_functionals))
    out.functional_basis.push_back(all_functionals[i]);
  fill_generators(t, out);
  return out;
}

template <ExactField K>
IndexComputation<K> index_computation_with_bases(const LinearOperator<K>& t,
                                                 const std::vector<Vector<K>>& r,
                                                 const std::vector<Vector<K>>& domain_basis,
                                                 const std::vector<Vector<K>>& functional_basis) {
  IndexComputation<K> out;
  collect_members(t, r, out);
  require_independent(domain_basis, "domain basis");
  require_independent(functional_basis, "functional basis");
  for (const auto& v : r)
    require(coordinates(domain_basis, v).has_value(), ErrorCode::InvalidInput,
            "domain basis does not span R");
  out.domain_basis = domain_basis;
  out.functional_basis = functional_basis;
  fill_generators(t, out);
  return out;
}

template <ExactField K>
std::size_t index_of_smoothness(const LinearOperator<K>& t, const std::vector<Vector<K>>& r) {
  return index_computation(t, r).index;
}

template <ExactField K>
std::size_t oracle_order_of_smoothness(const LinearOperator<K>& t) {
  const AttainmentSet<K> a = operator_norm_and_attainment(t);
  require_unit_operator(a);
  const auto& fs = t.codomain().extreme_functionals();
  std::vector<Vector<K>> products;
  for (const auto& x : a.attaining_vertices)
    for (auto f : norming_functionals(t.codomain(), t.apply(x)))
      products.push_back(outer_flatten(x, fs[f]));
  return rank(products, t.domain().dim() * t.codomain().dim());
}

template <ExactField K>
SmoothnessReport<K> order_of_smoothness(const LinearOperator<K>& t) {
  SmoothnessReport<K> rep;
  rep.attainment = operator_norm_and_attainment(t);
  require_unit_operator(rep.attainment);
  for (const auto& v : rep.attainment.attaining_vertices)
    rep.image_supports.push_back(support_set(t.codomain(), t.apply(v)));
  rep.computation = index_computation(t, rep.attainment.attaining_vertices);
  rep.index = rep.computation.index;
  rep.oracle_order = oracle_order_of_smoothness(t);
  for (auto i : rep.attainment.basis_indices)
    rep.min_bound += rep.image_supports[i].smoothness_order;
  rep.max_order = t.domain().dim() * t.codomain().dim();
  require(rep.index == rep.oracle_order, ErrorCode::InternalInconsistency,
          "index of smoothness " + std::to_string(rep.index) +
              " disagrees with the outer-product rank " + std::to_string(rep.oracle_order));
  require(rep.min_bound <= rep.index, ErrorCode::InternalInconsistency,
          "index " + std::to_string(rep.index) + " is below the lower bound " +
              std::to_string(rep.min_bound));
  return rep;
}

std::set<std::size_t> rank1_admissible_orders(std::size_t n, std::size_t m) {
  require(n >= 1 && m >= 1, ErrorCode::InvalidInput, "dimensions must be positive");
  std::set<std::size_t> out;
  for (std::size_t p = 1; p <= n; ++p)
    for (std::size_t q = 1; q <= m; ++q) out.insert(p * q);
  return out;
}

std::set<std::size_t> rank1_forbidden_primes(std::size_t n, std::size_t m) {
  const auto admissible = rank1_admissible_orders(n, m);
  const std::size_t top = n * m;
  std::vector<bool> composite(top + 1, false);
  std::set<std::size_t> out;
  for (std::size_t k = 2; k <= top; ++k) {
    if (composite[k]) continue;
    for (std::size_t j = k * k; j <= top; j += k) composite[j] = true;
    if (!admissible.contains(k)) out.insert(k);
  }
  return out;
}

template <ExactField K>
FaceConstruction<K> construct_face_operator(SpacePtr<K> x, const FaceDescriptor& face,
                                            SpacePtr<K> y, const Vector<K>& u) {
  require(x && y, ErrorCode::InvalidInput, "both spaces are required");
  const Polytope<K>& ball = x->ball();
  const std::size_t n = x->dim();
  require(!face.improper && !face.active_set.empty(), ErrorCode::NotProperFace,
          "the improper face cannot carry the construction");
  require(ball.face_from_facets(face.active_set) == face, ErrorCode::NotProperFace,
          "active set is not the maximal active set of a face");
  require(norm(*y, u) == K(1), ErrorCode::NotUnitNorm,
          "u = " + to_string(u) + " does not have norm 1 in " + y->name());

  Vector<K> f = zero_vector<K>(n);
  for (auto i : face.active_set) f = f + ball.facets()[i];
  f = K(static_cast<long>(face.active_set.size())).inverse() * f;

  std::vector<Vector<K>> face_vertices;
  for (auto i : ball.face_vertex_indices(face)) face_vertices.push_back(ball.vertices()[i]);

  FaceConstruction<K> out{LinearOperator<K>(x, y, Matrix<K>(y->dim(), n)), 0, 0, {}, {}, {}};
  IncrementalBasis<K> span(n);
  for (const auto& v : face_vertices)
    if (span.try_add(v)) out.face_basis.push_back(v);
  out.p = out.face_basis.size();
  for (const auto& k : nullspace(Matrix<K>::from_rows({f}, n)))
    if (span.size() < n && span.try_add(k)) out.completion.push_back(k);
  require(span.size() == n, ErrorCode::CompletionFailure,
          "face vertices and ker f do not span the domain");

  std::vector<Vector<K>> cols = out.face_basis;
  cols.insert(cols.end(), out.completion.begin(), out.completion.end());
  const Matrix<K> basis = Matrix<K>::from_columns(cols, n);
  Matrix<K> images(y->dim(), n);
  for (std::size_t j = 0; j < out.p; ++j)
    for (std::size_t r = 0; r < y->dim(); ++r) images(r, j) = u[r];
  std::vector<Vector<K>> inv_cols;
  for (std::size_t k = 0; k < n; ++k) {
    auto c = solve(basis, unit_vector<K>(n, k));
    require(c.has_value(), ErrorCode::CompletionFailure, "completed basis is singular");
    inv_cols.push_back(std::move(*c));
  }
  out.op = LinearOperator<K>(x, y, images * Matrix<K>::from_columns(inv_cols, n));

  out.q = point_smoothness(*y, u);
  out.report = order_of_smoothness(out.op);
  const auto& att = out.report.attainment;
  require(att.attaining_vertices.size() == face_vertices.size(), ErrorCode::InternalInconsistency,
          "M_T has " + std::to_string(att.attaining_vertices.size()) +
              " extreme pairs but the face has " + std::to_string(face_vertices.size()) +
              " vertices");
  const Vector<K> neg_u = -u;
  for (const auto& v : face_vertices) {
    require(contains_up_to_sign(att.attaining_vertices, v), ErrorCode::InternalInconsistency,
            "face vertex " + to_string(v) + " is not norm-attaining");
    const Vector<K> image = out.op.apply(v);
    require(image == u || image == neg_u, ErrorCode::InternalInconsistency,
            "face vertex maps to " + to_string(image) + " instead of u");
  }
  require(out.report.index == out.p * out.q, ErrorCode::InternalInconsistency,
          "constructed operator has order " + std::to_string(out.report.index) + ", expected " +
              std::to_string(out.p) + "*" + std::to_string(out.q));
  return out;
}

#define KSMOOTH_INSTANTIATE_OPERATORS(K)                                                        \
  template class LinearOperator<K>;                                                             \
  template AttainmentSet<K> operator_norm_and_attainment<K>(const LinearOperator<K>&);          \
  template LinearOperator<K> normalized<K>(const LinearOperator<K>&);                           \
  template IndexComputation<K> index_computation<K>(const LinearOperator<K>&,                   \
                                                    const std::vector<Vector<K>>&);             \
  template IndexComputation<K> index_computation_with_bases<K>(                                 \
      const LinearOperator<K>&, const std::vector<Vector<K>>&, const std::vector<Vector<K>>&,   \
      const std::vector<Vector<K>>&);                                                           \
  template std::size_t index_of_smoothness<K>(const LinearOperator<K>&,                         \
                                              const std::vector<Vector<K>>&);                   \
  template std::size_t oracle_order_of_smoothness<K>(const LinearOperator<K>&);                 \
  template SmoothnessReport<K> order_of_smoothness<K>(const LinearOperator<K>&);                \
  template FaceConstruction<K> construct_face_operator<K>(SpacePtr<K>, const FaceDescriptor&,   \
                                                          SpacePtr<K>, const Vector<K>&);

KSMOOTH_INSTANTIATE_OPERATORS(Rational)
KSMOOTH_INSTANTIATE_OPERATORS(QuadSqrt2)

}  // namespace ksmooth
