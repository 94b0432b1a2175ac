#pragma once

// Seeded generators for property suites.

#include "ksmooth/operators.hpp"
#include "ksmooth/random.hpp"

namespace ksmooth {

/// Invertible n x n matrix with small rational entries.
template <ExactField K>
Matrix<K> random_invertible_matrix(Rng& rng, std::size_t n);

/// Unit vector of X along a random nonzero direction.
template <ExactField K>
Vector<K> random_unit_vector(Rng& rng, const PolyhedralSpace<K>& x);

/// Unit-norm operator. Mixes generic small-entry matrices with operators that
/// send a random basis of extreme points to extreme points of Y, so large
/// attainment sets show up regularly.
template <ExactField K>
LinearOperator<K> random_unit_operator(Rng& rng, SpacePtr<K> x, SpacePtr<K> y);

/// Unit-norm operator of rank one, x -> g(x) u, with g drawn from facet
/// functionals, face means or random vectors.
template <ExactField K>
LinearOperator<K> random_rank1_operator(Rng& rng, SpacePtr<K> x, SpacePtr<K> y);

}  // namespace ksmooth
