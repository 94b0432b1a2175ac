#pragma once

// Finite-dimensional polyhedral normed spaces. The unit ball is a symmetric
// polytope; its facet functionals are exactly Ext(B_{X*}).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ksmooth/polytope.hpp"

namespace ksmooth {

class Rng;

template <ExactField K>
class PolyhedralSpace {
 public:
  PolyhedralSpace(std::string name, Polytope<K> ball);

  static PolyhedralSpace from_vertices(std::string name, const std::vector<Vector<K>>& points,
                                       const Limits& limits = Limits::from_env());
  static PolyhedralSpace from_facets(std::string name, const std::vector<Vector<K>>& functionals,
                                     const Limits& limits = Limits::from_env());

  const std::string& name() const { return name_; }
  std::size_t dim() const { return ball_->dim(); }
  static constexpr FieldTag field() { return K::tag; }

  const Polytope<K>& ball() const { return *ball_; }
  const Polytope<K>& dual_ball() const { return *dual_; }

  /// Ext(B_X) and Ext(B_{X*}).
  const std::vector<Vector<K>>& extreme_points() const { return ball_->vertices(); }
  const std::vector<Vector<K>>& extreme_functionals() const { return ball_->facets(); }

 private:
  std::string name_;
  std::shared_ptr<const Polytope<K>> ball_;
  std::shared_ptr<const Polytope<K>> dual_;
};

template <ExactField K>
using SpacePtr = std::shared_ptr<const PolyhedralSpace<K>>;

/// Ext(J(x)) for a unit vector x, with its smoothness order.
template <ExactField K>
struct SupportSet {
  Vector<K> base_point;
  std::vector<std::size_t> facet_indices;       // into extreme_functionals()
  std::vector<Vector<K>> extreme_functionals;
  std::size_t smoothness_order = 0;
};

template <ExactField K>
K norm(const PolyhedralSpace<K>& space, const Vector<K>& x);

/// max over Ext(B_X) of f(v).
template <ExactField K>
K dual_norm(const PolyhedralSpace<K>& space, const Vector<K>& f);

/// x / ||x||. Rejects the zero vector.
template <ExactField K>
Vector<K> normalize(const PolyhedralSpace<K>& space, const Vector<K>& x);

/// Indices of the extreme functionals f with f(y) = ||y||. For y = 0 this is
/// every extreme functional.
template <ExactField K>
std::vector<std::size_t> norming_functionals(const PolyhedralSpace<K>& space, const Vector<K>& y);

/// Throws NOT_UNIT_NORM unless ||x|| = 1.
template <ExactField K>
SupportSet<K> support_set(const PolyhedralSpace<K>& space, const Vector<K>& x);

/// Order of smoothness of a unit vector, cross-checked against the dimension
/// of its minimal face: k = dim X - dim F.
template <ExactField K>
std::size_t point_smoothness(const PolyhedralSpace<K>& space, const Vector<K>& x);

template <ExactField K>
PolyhedralSpace<K> ell1(std::size_t n);

template <ExactField K>
PolyhedralSpace<K> ellinf(std::size_t n);

/// The three-dimensional space whose ball is the convex hull of
/// +-(1,0,0), +-(1/r2,1/r2,0), +-(0,1,0), +-(-1/r2,1/r2,0), +-(0,0,1).
PolyhedralSpace<QuadSqrt2> paper_example_space();

/// The ell-infinity sum of `copies` copies of Y: its ball is the product of
/// the balls, so its facets are the block embeddings of the facets of Y.
template <ExactField K>
PolyhedralSpace<K> ellinf_sum(const PolyhedralSpace<K>& y, std::size_t copies,
                              const Limits& limits = Limits::from_env());

/// Random ball: `points` rational points in [-1,1]^dim, symmetrized by union
/// with their negations and canonicalized. Draws again if the sample is not
/// full-dimensional.
template <ExactField K>
PolyhedralSpace<K> random_space(Rng& rng, std::size_t dim, std::size_t points);

template <ExactField K>
PolyhedralSpace<K> random_space(std::uint64_t seed, std::size_t dim, std::size_t points);

}  // namespace ksmooth
