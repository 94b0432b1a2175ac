#pragma once

// Exact origin-symmetric, full-dimensional polytopes held in both
// representations: a vertex list and a list of facet functionals f, each
// defining the inequality f(x) <= 1.

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ksmooth/linalg.hpp"

namespace ksmooth {

/// Size guard for the double description method, which is exponential in the
/// worst case. KSMOOTH_MAX_DIM and KSMOOTH_MAX_VERTICES override the defaults.
struct Limits {
  std::size_t max_dim = 6;
  std::size_t max_vertices = 64;

  static Limits from_env();
  static Limits unlimited();
};

template <ExactField K>
struct VRep {
  std::vector<Vector<K>> vertices;
};

template <ExactField K>
struct HRep {
  std::vector<Vector<K>> functionals;
};

/// A face keyed by its maximal set of active facets. The improper face (the
/// whole ball) has an empty active set.
struct FaceDescriptor {
  std::vector<std::size_t> active_set;  // sorted ascending
  std::size_t dim = 0;
  bool improper = false;

  friend bool operator==(const FaceDescriptor&, const FaceDescriptor&) = default;
};

/// Drops duplicates and points inside the convex hull of the others. The
/// extreme points must be closed under negation; asymmetry is reported, never
/// repaired.
template <ExactField K>
VRep<K> canonicalize(const std::vector<Vector<K>>& points);

template <ExactField K>
HRep<K> v_to_h(const VRep<K>& v, const Limits& limits = Limits::from_env());

template <ExactField K>
VRep<K> h_to_v(const HRep<K>& h, const Limits& limits = Limits::from_env());

template <ExactField K>
class Polytope {
 public:
  using Bitset = boost::dynamic_bitset<>;

  /// Canonicalizes the points, then computes facets by double description.
  static Polytope from_vertices(const std::vector<Vector<K>>& points,
                                const Limits& limits = Limits::from_env());
  /// Canonicalizes the functionals, then computes vertices by double description.
  static Polytope from_facets(const std::vector<Vector<K>>& functionals,
                              const Limits& limits = Limits::from_env());

  std::size_t dim() const { return dim_; }
  const std::vector<Vector<K>>& vertices() const { return vertices_; }
  const std::vector<Vector<K>>& facets() const { return facets_; }

  /// Vertices lying on facet `f`.
  const Bitset& facet_vertices(std::size_t f) const { return facet_vertices_.at(f); }
  /// Facets containing vertex `v`.
  const Bitset& vertex_facets(std::size_t v) const { return vertex_facets_.at(v); }

  /// The polar polytope: facets and vertices trade places.
  Polytope polar() const;

  /// Max over facet functionals of f(x); the Minkowski gauge of the polytope.
  K gauge(const Vector<K>& x) const;

  /// The face containing boundary point x in its relative interior.
  FaceDescriptor minimal_face(const Vector<K>& x) const;

  /// Builds the descriptor for the face cut out by `active` (closed upward to
  /// the maximal active set).
  FaceDescriptor face_from_facets(const std::vector<std::size_t>& active) const;

  /// All nonempty proper faces, ordered by dimension then active set.
  std::vector<FaceDescriptor> all_faces() const;
  std::vector<FaceDescriptor> enumerate_faces(std::size_t dim) const;
  std::size_t count_faces(std::size_t dim) const;

  std::vector<std::size_t> face_vertex_indices(const FaceDescriptor& face) const;

 private:
  Polytope(std::size_t dim, std::vector<Vector<K>> vertices, std::vector<Vector<K>> facets);

  Bitset vertices_of_active(const Bitset& active) const;
  std::size_t face_dim(const Bitset& active) const;

  std::size_t dim_ = 0;
  std::vector<Vector<K>> vertices_;
  std::vector<Vector<K>> facets_;
  std::vector<Bitset> facet_vertices_;
  std::vector<Bitset> vertex_facets_;
};

/// Sum over i of (-1)^i times the number of i-faces, for 0 <= i < dim.
template <ExactField K>
long euler_characteristic(const Polytope<K>& p);

}  // namespace ksmooth
