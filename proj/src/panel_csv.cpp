#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "drsit/error.hpp"
#include "drsit/io.hpp"
#include "text_util.hpp"

namespace drsit {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

Panel parse_panel_csv(const std::string& text, const std::string& source) {
  const auto lines = detail::split_lines(text);
  auto fail = [&](std::size_t line, const std::string& msg) -> Error {
    return Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ": " + msg);
  };
  if (lines.empty()) throw fail(1, "empty file");
  const auto header = detail::split(lines[0], ',');
  if (header.size() < 4 || detail::trim(header[0]) != "traj" || detail::trim(header[1]) != "time") {
    throw fail(1, "header must be 'traj,time,<target>,<covariate>,...'");
  }
  Panel panel;
  for (std::size_t c = 2; c < header.size(); ++c) panel.variable_names.push_back(std::string(detail::trim(header[c])));
  const std::size_t width = panel.variable_names.size();

  std::vector<std::vector<double>> rows;
  long current_traj = -1;
  long last_time = -1;
  auto flush = [&] {
    if (rows.empty()) return;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < width; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    panel.trajectories.push_back(std::move(m));
    rows.clear();
  };

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (detail::trim(lines[i]).empty()) continue;
    const auto fields = detail::split(lines[i], ',');
    if (fields.size() != width + 2) {
      throw Error(ErrorKind::InconsistentSchema, source + ":" + std::to_string(lineno) + ": expected " +
                                                     std::to_string(width + 2) + " fields, found " +
                                                     std::to_string(fields.size()));
    }
    const auto traj = detail::parse_index(fields[0]);
    const auto time = detail::parse_index(fields[1]);
    if (!traj || !time) throw fail(lineno, "traj and time must be non-negative integers");
    if (*traj < current_traj) throw fail(lineno, "rows must be sorted by trajectory");
    if (*traj != current_traj) {
      flush();
      current_traj = *traj;
      last_time = -1;
    }
    if (*time <= last_time) throw fail(lineno, "time must strictly increase within a trajectory");
    last_time = *time;
    std::vector<double> values(width);
    for (std::size_t c = 0; c < width; ++c) {
      const auto v = detail::parse_double(fields[c + 2]);
      if (!v || !std::isfinite(*v)) throw fail(lineno, "bad value in column '" + panel.variable_names[c] + "'");
      values[c] = *v;
    }
    rows.push_back(std::move(values));
  }
  flush();
  if (panel.trajectories.empty()) throw Error(ErrorKind::EmptyPanel, source + ": no data rows");
  try {
    panel.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::InconsistentSchema, source + ": " + e.what());
  }
  return panel;
}

Panel read_panel_csv(const std::filesystem::path& path) {
  return parse_panel_csv(read_text_file(path), path.string());
}

std::string format_panel_csv(const Panel& panel) {
  std::string out = "traj,time";
  for (const auto& n : panel.variable_names) out += "," + n;
  out += "\n";
  for (std::size_t r = 0; r < panel.trajectories.size(); ++r) {
    const auto& t = panel.trajectories[r];
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      out += std::to_string(r) + "," + std::to_string(i);
      for (Eigen::Index c = 0; c < t.cols(); ++c) out += "," + detail::format_double(t(i, c));
      out += "\n";
    }
  }
  return out;
}

void write_panel_csv(const Panel& panel, const std::filesystem::path& path) {
  write_text_file(path, format_panel_csv(panel));
}

}  // namespace drsit
