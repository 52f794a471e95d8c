#include "drsit/folds.hpp"

#include <numeric>
#include <utility>

#include "drsit/error.hpp"
#include "drsit/rng.hpp"

namespace drsit {

std::vector<std::size_t> FoldAssignment::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t f : trajectory_to_fold) ++sizes[f];
  return sizes;
}

FoldAssignment assign_folds(std::size_t n_trajectories, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorKind::InvalidConfig, "cross-fitting needs at least 2 folds");
  if (n_trajectories < k) {
    throw Error(ErrorKind::TooFewTrajectories, std::to_string(n_trajectories) + " trajectories cannot fill " +
                                                   std::to_string(k) + " folds");
  }
  std::vector<std::size_t> order(n_trajectories);
  std::iota(order.begin(), order.end(), std::size_t{0});
  CounterRng rng(seed, {0xF01D});
  for (std::size_t i = n_trajectories - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }
  FoldAssignment out;
  out.k = k;
  out.trajectory_to_fold.resize(n_trajectories);
  for (std::size_t pos = 0; pos < n_trajectories; ++pos) out.trajectory_to_fold[order[pos]] = pos % k;
  return out;
}

}  // namespace drsit
