#include <cmath>
#include <set>

#include "drsit/error.hpp"
#include "drsit/io.hpp"
#include "text_util.hpp"

namespace drsit {

namespace {

std::string unquote(std::string_view s) {
  s = detail::trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  return line.find('\t') != std::string_view::npos ? detail::split(line, '\t') : detail::split_ws(line);
}

}  // namespace

std::vector<std::vector<bool>> Dream3Bundle::gold_matrix() const {
  std::vector<std::vector<bool>> out(genes.size(), std::vector<bool>(genes.size(), false));
  for (const auto& e : gold) out[e.from][e.to] = e.present;
  return out;
}

Panel parse_dream3_expression(const std::string& text, const std::string& source,
                              std::optional<std::size_t> traj_len) {
  const auto lines = detail::split_lines(text);
  auto fail = [&](ErrorKind kind, std::size_t line, const std::string& msg) {
    return Error(kind, source + ":" + std::to_string(line) + ": " + msg);
  };
  std::size_t first = 0;
  while (first < lines.size() && detail::trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw fail(ErrorKind::ParseError, 1, "empty expression file");

  const auto header = split_fields(lines[first]);
  if (header.size() < 3) throw fail(ErrorKind::ParseError, first + 1, "header needs a time column and >= 2 genes");
  Panel panel;
  for (std::size_t c = 1; c < header.size(); ++c) panel.variable_names.push_back(unquote(header[c]));
  const std::size_t width = panel.variable_names.size();

  std::vector<std::vector<double>> block;
  auto flush = [&] {
    if (block.empty()) return;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(block.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < block.size(); ++r)
      for (std::size_t c = 0; c < width; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = block[r][c];
    panel.trajectories.push_back(std::move(m));
    block.clear();
  };

  double last_time = -INFINITY;
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (detail::trim(lines[i]).empty()) {
      if (!traj_len) flush();
      last_time = -INFINITY;
      continue;
    }
    const auto fields = split_fields(lines[i]);
    if (fields.size() != width + 1) {
      throw fail(ErrorKind::ParseError, lineno,
                 "expected " + std::to_string(width + 1) + " fields, found " + std::to_string(fields.size()));
    }
    const auto time = detail::parse_double(fields[0]);
    if (!time || !std::isfinite(*time)) throw fail(ErrorKind::ParseError, lineno, "bad time value");
    if (!traj_len && *time <= last_time) flush();
    last_time = *time;
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      const auto v = detail::parse_double(fields[c + 1]);
      if (!v || !std::isfinite(*v)) throw fail(ErrorKind::ParseError, lineno, "bad expression value");
      row[c] = *v;
    }
    block.push_back(std::move(row));
    if (traj_len && block.size() == *traj_len) flush();
  }
  if (traj_len && !block.empty()) {
    throw Error(ErrorKind::UnevenTrajectories, source + ": trailing block of " + std::to_string(block.size()) +
                                                   " rows does not fill --traj-len " + std::to_string(*traj_len));
  }
  flush();
  if (panel.trajectories.empty()) throw Error(ErrorKind::ParseError, source + ": no expression rows");
  const auto len = panel.trajectories.front().rows();
  for (std::size_t r = 0; r < panel.trajectories.size(); ++r) {
    if (panel.trajectories[r].rows() != len) {
      throw Error(ErrorKind::UnevenTrajectories, source + ": trajectory " + std::to_string(r) + " has " +
                                                     std::to_string(panel.trajectories[r].rows()) + " rows, expected " +
                                                     std::to_string(len));
    }
  }
  if (std::set<std::string>(panel.variable_names.begin(), panel.variable_names.end()).size() != width) {
    throw Error(ErrorKind::ParseError, source + ": duplicate gene names in header");
  }
  panel.target_index = 0;
  return panel;
}

std::vector<GoldEdge> parse_dream3_gold(const std::string& text, const std::vector<std::string>& genes,
                                        const std::string& source) {
  std::vector<GoldEdge> out;
  const auto lines = detail::split_lines(text);
  auto index_of = [&](const std::string& name, std::size_t lineno) -> std::size_t {
    for (std::size_t g = 0; g < genes.size(); ++g)
      if (genes[g] == name) return g;
    throw Error(ErrorKind::UnknownGene, source + ":" + std::to_string(lineno) + ": unknown gene '" + name + "'");
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (detail::trim(lines[i]).empty()) continue;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 3) throw Error(ErrorKind::ParseError, source + ":" + std::to_string(lineno) + ": expected 3 fields");
    const std::size_t from = index_of(unquote(fields[0]), lineno);
    const std::size_t to = index_of(unquote(fields[1]), lineno);
    const auto label = detail::trim(fields[2]);
    if (label != "0" && label != "1") {
      throw Error(ErrorKind::ParseError, source + ":" + std::to_string(lineno) + ": label must be 0 or 1");
    }
    if (from == to) throw Error(ErrorKind::ParseError, source + ":" + std::to_string(lineno) + ": self-edge in gold standard");
    out.push_back({from, to, label == "1"});
  }
  return out;
}

Dream3Bundle read_dream3(const std::filesystem::path& expression_path, const std::filesystem::path& gold_path,
                         std::optional<std::size_t> traj_len) {
  Dream3Bundle b;
  b.panel = parse_dream3_expression(read_text_file(expression_path), expression_path.string(), traj_len);
  b.genes = b.panel.variable_names;
  b.gold = parse_dream3_gold(read_text_file(gold_path), b.genes, gold_path.string());
  return b;
}

}  // namespace drsit
