#pragma once

#include "setdepth/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace setdepth {

enum class DirectionStrategy { kAxes, kGrid2d, kLowDiscrepancy, kRandom };

DirectionStrategy parse_direction_strategy(const std::string& name);
std::string to_string(DirectionStrategy strategy);

/// Deterministic finite direction sets on S^{p-1}.
///   axes    +-e_i (2p directions, m ignored)
///   grid2d  m equispaced angles starting at 0 (p = 2 only)
///   lowdisc m-point Fibonacci sphere (p = 3 only)
///   random  m normalized Gaussian vectors from the seed
/// p = 1 always yields {+1, -1}.
std::vector<UnitDirection> direction_set(int dimension, DirectionStrategy strategy, std::size_t count,
                                         std::uint64_t seed);

// 1024-angle grid for p = 2, 2048-point Fibonacci sphere for p = 3, seeded
// Gaussian directions (count `random_count`) above that.
std::vector<UnitDirection> default_directions(int dimension, std::uint64_t seed = 0,
                                              std::size_t random_count = 4096);

}  // namespace setdepth
