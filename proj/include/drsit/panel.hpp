#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace drsit {

/// A set of independent trajectories of a joint time series. Each trajectory
/// is time-major: row t holds every variable at time t. One column is the
/// distinguished target; the rest are candidate causes.
struct Panel {
  std::vector<Eigen::MatrixXd> trajectories;
  std::vector<std::string> variable_names;
  std::size_t target_index = 0;

  std::size_t num_variables() const { return variable_names.size(); }
  std::size_t num_trajectories() const { return trajectories.size(); }
  std::size_t min_length() const;
  std::size_t total_rows() const;

  /// Index of the named variable; throws IndexOutOfRange when absent.
  std::size_t index_of(const std::string& name) const;

  /// Throws InvalidPanel / EmptyPanel when an invariant is violated.
  void validate() const;
};

}  // namespace drsit
