#include <array>
#include <sstream>

#include "drsit/error.hpp"
#include "drsit/io.hpp"
#include "text_util.hpp"

namespace drsit {

std::string format_truth(const AdjacencyTensor& s, const std::vector<std::string>& names) {
  if (names.size() != s.m + 1) throw Error(ErrorKind::ShapeMismatch, "truth needs m + 1 variable names");
  std::ostringstream out;
  out << "# drsit truth v1\n";
  out << "# 'k i j': X<i> at lag k causes X<j>; 'Y k j': X<j> at lag k causes the target\n";
  out << "variables";
  for (const auto& n : names) out << ' ' << n;
  out << "\ntarget " << names[0] << "\n";
  out << "delta " << s.delta << "\n";
  for (std::size_t k = 0; k < s.delta; ++k)
    for (std::size_t i = 0; i < s.m; ++i)
      for (std::size_t j = 0; j < s.m; ++j)
        if (s.at(k, i, j)) out << (k + 1) << ' ' << (i + 1) << ' ' << (j + 1) << "\n";
  for (std::size_t k = 0; k < s.delta; ++k)
    for (std::size_t j = 0; j < s.m; ++j)
      if (s.at_y(k, j)) out << "Y " << (k + 1) << ' ' << (j + 1) << "\n";
  return out.str();
}

GroundTruth parse_truth(const std::string& text, const std::string& source) {
  GroundTruth g;
  std::optional<std::size_t> delta;
  std::vector<std::array<std::size_t, 3>> cov_edges;
  std::vector<std::array<std::size_t, 2>> y_edges;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = source + ":" + std::to_string(i + 1);
    const auto line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto f = detail::split_ws(line);
    auto idx = [&](std::string_view s) {
      const auto v = detail::parse_index(s);
      if (!v || *v < 1) throw Error(ErrorKind::ParseError, where + ": expected a positive index");
      return static_cast<std::size_t>(*v);
    };
    if (f[0] == "variables") {
      for (std::size_t c = 1; c < f.size(); ++c) g.variable_names.emplace_back(f[c]);
    } else if (f[0] == "target" && f.size() == 2) {
      g.target_name = std::string(f[1]);
    } else if (f[0] == "delta" && f.size() == 2) {
      delta = idx(f[1]);
    } else if (f[0] == "Y" && f.size() == 3) {
      y_edges.push_back({idx(f[1]), idx(f[2])});
    } else if (f.size() == 3) {
      cov_edges.push_back({idx(f[0]), idx(f[1]), idx(f[2])});
    } else {
      throw Error(ErrorKind::ParseError, where + ": unrecognized truth line");
    }
  }
  if (g.variable_names.size() < 2) throw Error(ErrorKind::ParseError, source + ": missing 'variables' line");
  if (g.target_name.empty()) g.target_name = g.variable_names[0];
  if (g.target_name != g.variable_names[0]) {
    throw Error(ErrorKind::ParseError, source + ": the target must be the first listed variable");
  }
  const std::size_t m = g.variable_names.size() - 1;
  std::size_t max_lag = delta.value_or(1);
  for (const auto& e : cov_edges) max_lag = std::max(max_lag, e[0]);
  for (const auto& e : y_edges) max_lag = std::max(max_lag, e[0]);
  if (delta && max_lag > *delta) throw Error(ErrorKind::ParseError, source + ": edge lag exceeds delta");
  g.structure = AdjacencyTensor(max_lag, m);
  for (const auto& e : cov_edges) {
    if (e[1] > m || e[2] > m) throw Error(ErrorKind::ParseError, source + ": covariate index out of range");
    g.structure.at(e[0] - 1, e[1] - 1, e[2] - 1) = 1;
  }
  for (const auto& e : y_edges) {
    if (e[1] > m) throw Error(ErrorKind::ParseError, source + ": covariate index out of range");
    g.structure.at_y(e[0] - 1, e[1] - 1) = 1;
  }
  return g;
}

std::vector<std::vector<bool>> GroundTruth::summary_matrix() const {
  const std::size_t m = structure.m;
  std::vector<std::vector<bool>> out(m + 1, std::vector<bool>(m + 1, false));
  const auto parents = structure.target_parents();
  for (std::size_t j = 0; j < m; ++j) out[j + 1][0] = parents[j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) out[i + 1][j + 1] = structure.covariate_edge(i, j);
  return out;
}

void write_truth(const AdjacencyTensor& structure, const std::vector<std::string>& names,
                 const std::filesystem::path& path) {
  write_text_file(path, format_truth(structure, names));
}

GroundTruth read_truth(const std::filesystem::path& path) { return parse_truth(read_text_file(path), path.string()); }

}  // namespace drsit
