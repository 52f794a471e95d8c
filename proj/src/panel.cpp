#include "drsit/panel.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "drsit/error.hpp"

namespace drsit {

std::size_t Panel::min_length() const {
  std::size_t out = std::numeric_limits<std::size_t>::max();
  for (const auto& t : trajectories) out = std::min(out, static_cast<std::size_t>(t.rows()));
  return trajectories.empty() ? 0 : out;
}

std::size_t Panel::total_rows() const {
  std::size_t out = 0;
  for (const auto& t : trajectories) out += static_cast<std::size_t>(t.rows());
  return out;
}

std::size_t Panel::index_of(const std::string& name) const {
  auto it = std::find(variable_names.begin(), variable_names.end(), name);
  if (it == variable_names.end()) throw Error(ErrorKind::IndexOutOfRange, "no variable named '" + name + "'");
  return static_cast<std::size_t>(it - variable_names.begin());
}

void Panel::validate() const {
  if (trajectories.empty()) throw Error(ErrorKind::EmptyPanel, "panel has no trajectories");
  const std::size_t width = variable_names.size();
  if (width < 2) throw Error(ErrorKind::InvalidPanel, "a panel needs a target and at least one covariate");
  if (target_index >= width) throw Error(ErrorKind::IndexOutOfRange, "target index out of range");
  if (std::set<std::string>(variable_names.begin(), variable_names.end()).size() != width) {
    throw Error(ErrorKind::InvalidPanel, "variable names must be unique");
  }
  for (std::size_t r = 0; r < trajectories.size(); ++r) {
    const auto& t = trajectories[r];
    if (static_cast<std::size_t>(t.cols()) != width) {
      throw Error(ErrorKind::InvalidPanel, "trajectory " + std::to_string(r) + " has " +
                                               std::to_string(t.cols()) + " columns, expected " +
                                               std::to_string(width));
    }
    if (t.rows() < 2) throw Error(ErrorKind::InvalidPanel, "trajectory " + std::to_string(r) + " is shorter than 2");
    if (!t.allFinite()) throw Error(ErrorKind::InvalidPanel, "trajectory " + std::to_string(r) + " has non-finite values");
  }
}

}  // namespace drsit
