#pragma once

// Birkhoff-James orthogonality in polyhedral spaces, decided exactly.
//
// x is orthogonal to a subspace W iff some f in J(x) vanishes on W. J(x) is
// the convex hull of the extreme functionals active at x, so the question is
// an LP feasibility problem in the convex-combination weights. For a subspace
// V on the left, every unit vector of V lies in the relative interior of
// exactly one proper face F of the ball and J is constant on relint(F); the
// test is run once per face whose relative interior meets V.

#include <optional>
#include <vector>

#include "ksmooth/normed_space.hpp"

namespace ksmooth {

template <ExactField K>
class Subspace {
 public:
  /// Throws NOT_INDEPENDENT unless `basis` is a nonempty independent list.
  explicit Subspace(std::vector<Vector<K>> basis);

  const std::vector<Vector<K>>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient_dim() const { return basis_.front().size(); }

 private:
  std::vector<Vector<K>> basis_;
};

/// A support functional f = sum weights_i * g_i over extreme functionals g_i.
template <ExactField K>
struct BjWitness {
  std::vector<std::size_t> facet_indices;
  Vector<K> weights;
  Vector<K> functional;
};

template <ExactField K>
struct BjVerdict {
  bool orthogonal = false;
  std::optional<BjWitness<K>> witness;  // present iff orthogonal

  explicit operator bool() const { return orthogonal; }
};

template <ExactField K>
struct FaceWitness {
  FaceDescriptor face;
  Vector<K> point;  // unit vector of V in relint(face)
  BjWitness<K> witness;
};

template <ExactField K>
struct SubspaceVerdict {
  bool orthogonal = false;
  std::size_t faces_checked = 0;
  std::vector<FaceWitness<K>> witnesses;  // one per face meeting V
  std::optional<FaceDescriptor> failing_face;
  std::optional<Vector<K>> failing_point;

  explicit operator bool() const { return orthogonal; }
};

/// Re-evaluates a witness: f(x) = 1, ||f||* = 1 and f(w) = 0 for every w.
/// Throws INTERNAL_INCONSISTENCY on failure.
template <ExactField K>
void verify_witness(const PolyhedralSpace<K>& space, const Vector<K>& x,
                    const std::vector<Vector<K>>& annihilated, const BjWitness<K>& w);

/// x _|_B y for unit x.
template <ExactField K>
BjVerdict<K> bj_vector_vector(const PolyhedralSpace<K>& space, const Vector<K>& x,
                              const Vector<K>& y);

/// x _|_B W for unit x.
template <ExactField K>
BjVerdict<K> bj_vector_subspace(const PolyhedralSpace<K>& space, const Vector<K>& x,
                                const Subspace<K>& w);

/// Every unit vector of V is orthogonal to z.
template <ExactField K>
SubspaceVerdict<K> bj_subspace_vector(const PolyhedralSpace<K>& space, const Subspace<K>& v,
                                      const Vector<K>& z);

/// Every unit vector of V is orthogonal to the subspace W.
template <ExactField K>
SubspaceVerdict<K> bj_subspace_subspace(const PolyhedralSpace<K>& space, const Subspace<K>& v,
                                        const Subspace<K>& w);

/// y0 is a best coapproximation to x out of Y iff Y _|_B (x - y0).
template <ExactField K>
SubspaceVerdict<K> is_best_coapproximation(const PolyhedralSpace<K>& space, const Vector<K>& x,
                                           const Vector<K>& y0, const Subspace<K>& y);

template <ExactField K>
struct AuerbachVerdict {
  bool strong_auerbach = false;
  std::optional<std::vector<std::size_t>> failing_subset;  // C with span C not _|_B span(B \ C)
  std::size_t subsets_checked = 0;

  explicit operator bool() const { return strong_auerbach; }
};

/// Checks span C _|_B span(B \ C) for every nonempty proper subset C.
template <ExactField K>
AuerbachVerdict<K> is_strong_auerbach(const PolyhedralSpace<K>& space,
                                      const std::vector<Vector<K>>& basis);

}  // namespace ksmooth
