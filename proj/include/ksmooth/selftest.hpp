#pragma once

// Seeded property suites over random polyhedral spaces and operators.

#include <cstdint>
#include <string>
#include <vector>

#include "ksmooth/normed_space.hpp"

namespace ksmooth {

struct SelftestOptions {
  std::uint64_t seed = 42;
  std::size_t cases = 200;  // random operators for the order-equivalence suite
};

struct PropertyOutcome {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> counterexamples;  // certificates, in case order

  bool passed() const { return counterexamples.empty(); }
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<PropertyOutcome> properties;

  bool passed() const;
};

SelftestReport run_selftest(const SelftestOptions& options);

/// x _|_B y decided by minimizing the convex piecewise-linear map
/// t -> ||x + t y|| over its breakpoints. Knows nothing about support sets.
template <ExactField K>
bool breakpoint_orthogonal(const PolyhedralSpace<K>& space, const Vector<K>& x,
                           const Vector<K>& y);

}  // namespace ksmooth
