#pragma once

// Exhaustive enumeration of Z^1, B^1 and the locally trivial subspace, kept
// independent of the linear-algebra path so the two can be compared.

#include <cstdint>
#include <vector>

#include "cohomlab/cohom.hpp"

namespace cohomlab {

struct BruteForceResult {
  std::int64_t z1_order = 0;
  std::int64_t b1_order = 0;
  std::int64_t local_order = 0;
  std::vector<std::int64_t> h1;
  std::vector<std::int64_t> h1loc;
};

/// Tries every assignment of values to the group's generators, extends it
/// along the group and keeps the ones satisfying the relation for all pairs.
/// Throws CapExceeded when there are more than 2^24 assignments.
BruteForceResult brute_force_cohomology(const MatGroup& g, const GModule& m, Execution exec = Execution::serial);
BruteForceResult brute_force_cohomology(const MatGroup& g, Execution exec = Execution::serial);

}  // namespace cohomlab
