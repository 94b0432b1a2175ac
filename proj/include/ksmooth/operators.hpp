#pragma once

// Linear operators between polyhedral spaces and their order of smoothness.
//
// Two independent routes compute the order of smoothness of a unit-norm T:
//
//  * the index of smoothness i_{M_T}(T): choose a basis {v_i} of span M_T and
//    a basis {y*_j} of the span of the extreme support functionals of the
//    images Tv, then take the rank of the coefficient tuples
//    ((alpha_i beta_j)) over attaining extreme points v = sum alpha_i v_i and
//    extreme support functionals y* = sum beta_j y*_j of Tv;
//  * the outer-product route: the rank of the flattened functionals
//    S -> y*(S x) over attaining extreme points x and y* in Ext(J(Tx)),
//    in ambient coordinates with no basis choice at all.
//
// order_of_smoothness() runs both and refuses to report if they disagree.

#include <cstddef>
#include <set>
#include <vector>

#include "ksmooth/normed_space.hpp"

namespace ksmooth {

template <ExactField K>
class LinearOperator {
 public:
  /// `matrix` is codomain.dim x domain.dim; column j is the image of e_j.
  LinearOperator(SpacePtr<K> domain, SpacePtr<K> codomain, Matrix<K> matrix);

  const PolyhedralSpace<K>& domain() const { return *domain_; }
  const PolyhedralSpace<K>& codomain() const { return *codomain_; }
  const SpacePtr<K>& domain_ptr() const { return domain_; }
  const SpacePtr<K>& codomain_ptr() const { return codomain_; }
  const Matrix<K>& matrix() const { return matrix_; }

  Vector<K> apply(const Vector<K>& x) const { return matrix_ * x; }

 private:
  SpacePtr<K> domain_;
  SpacePtr<K> codomain_;
  Matrix<K> matrix_;
};

/// M_T intersected with Ext(B_X), one representative per +- pair.
template <ExactField K>
struct AttainmentSet {
  K operator_norm{0};
  std::vector<Vector<K>> attaining_vertices;  // first nonzero coordinate positive
  std::vector<std::size_t> vertex_indices;    // into domain().extreme_points()
  std::vector<std::size_t> basis_indices;     // greedy independent subset of attaining_vertices
};

/// Audit trail of one index-of-smoothness evaluation.
template <ExactField K>
struct IndexComputation {
  std::vector<Vector<K>> domain_basis;                      // v_1..v_n
  std::vector<Vector<K>> extreme_members;                   // R cap Ext(B_X), one per +- pair
  std::vector<Vector<K>> alphas;                            // coordinates of each member
  std::vector<std::vector<std::size_t>> member_functionals;  // Ext(J(Tv)) as codomain facet indices
  std::vector<Vector<K>> functional_basis;                  // y*_1..y*_p
  std::vector<KronVector<K>> z_generators;
  std::size_t index = 0;
};

template <ExactField K>
struct SmoothnessReport {
  AttainmentSet<K> attainment;
  std::vector<SupportSet<K>> image_supports;  // one per attaining vertex
  IndexComputation<K> computation;
  std::size_t index = 0;
  std::size_t oracle_order = 0;
  std::size_t min_bound = 0;   // sum of image smoothness over the greedy attaining basis
  std::size_t max_order = 0;   // dim X * dim Y

  bool extreme_contraction() const { return index == max_order; }
};

template <ExactField K>
AttainmentSet<K> operator_norm_and_attainment(const LinearOperator<K>& t);

/// T / ||T||.
template <ExactField K>
LinearOperator<K> normalized(const LinearOperator<K>& t);

/// i_R(T) with greedy bases in input order.
template <ExactField K>
IndexComputation<K> index_computation(const LinearOperator<K>& t, const std::vector<Vector<K>>& r);

/// i_R(T) with caller-supplied bases of span R and of the span of the
/// collected support functionals.
template <ExactField K>
IndexComputation<K> index_computation_with_bases(const LinearOperator<K>& t,
                                                 const std::vector<Vector<K>>& r,
                                                 const std::vector<Vector<K>>& domain_basis,
                                                 const std::vector<Vector<K>>& functional_basis);

template <ExactField K>
std::size_t index_of_smoothness(const LinearOperator<K>& t, const std::vector<Vector<K>>& r);

template <ExactField K>
std::size_t oracle_order_of_smoothness(const LinearOperator<K>& t);

/// Both routes plus the lower bound; throws INTERNAL_INCONSISTENCY if the index
/// and the oracle disagree or the bound is violated.
template <ExactField K>
SmoothnessReport<K> order_of_smoothness(const LinearOperator<K>& t);

std::set<std::size_t> rank1_admissible_orders(std::size_t n, std::size_t m);

/// Primes in [2, n m] that are not of the form p q with p <= n, q <= m.
std::set<std::size_t> rank1_forbidden_primes(std::size_t n, std::size_t m);

template <ExactField K>
struct FaceConstruction {
  LinearOperator<K> op;
  std::size_t p = 0;                   // independent vertices of the face
  std::size_t q = 0;                   // smoothness order of u
  std::vector<Vector<K>> face_basis;   // x_1..x_p
  std::vector<Vector<K>> completion;   // basis vectors taken from ker f
  SmoothnessReport<K> report;
};

/// Builds T with T x_i = u on independent vertices x_i of the face and T = 0
/// on a complement inside ker f, f being the mean of the face's active
/// functionals; then verifies ||T|| = 1, M_T = +-F, T(M_T) = {+-u} and
/// order = p q.
template <ExactField K>
FaceConstruction<K> construct_face_operator(SpacePtr<K> x, const FaceDescriptor& face,
                                            SpacePtr<K> y, const Vector<K>& u);

}  // namespace ksmooth
