#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace drsit {

/// Trajectory-level fold split for cross-fitting.
struct FoldAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> trajectory_to_fold;

  std::vector<std::size_t> fold_sizes() const;
};

/// Uniformly random balanced split: sizes differ by at most one trajectory.
/// Deterministic in (n_trajectories, k, seed).
FoldAssignment assign_folds(std::size_t n_trajectories, std::size_t k, std::uint64_t seed);

}  // namespace drsit
