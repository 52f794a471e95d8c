#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "drsit/dml.hpp"
#include "drsit/panel.hpp"
#include "drsit/synth.hpp"

namespace drsit {

// Panel CSV (long format):
//   traj,time,<name0>,<name1>,...
//   0,0,1.5,-0.25,...
// Rows sorted by (traj, time); times strictly increase within a trajectory.
// The first named column is the target unless the caller overrides it.
Panel read_panel_csv(const std::filesystem::path& path);
Panel parse_panel_csv(const std::string& text, const std::string& source = "<string>");
void write_panel_csv(const Panel& panel, const std::filesystem::path& path);
std::string format_panel_csv(const Panel& panel);

struct GoldEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  bool present = false;
};

struct Dream3Bundle {
  Panel panel;
  std::vector<std::string> genes;
  std::vector<GoldEdge> gold;

  /// labels[from][to]; pairs absent from the gold file are 0.
  std::vector<std::vector<bool>> gold_matrix() const;
};

/// Expression file: tab-separated, header "Time<TAB>G1<TAB>G2...". A new
/// trajectory starts at a blank line or where time does not increase.
/// `traj_len` forces fixed-length blocks instead.
/// Gold file: "<gene_i><TAB><gene_j><TAB><0|1>" for a directed edge i -> j.
Dream3Bundle read_dream3(const std::filesystem::path& expression_path,
                         const std::filesystem::path& gold_path,
                         std::optional<std::size_t> traj_len = std::nullopt);
Panel parse_dream3_expression(const std::string& text, const std::string& source,
                              std::optional<std::size_t> traj_len = std::nullopt);
std::vector<GoldEdge> parse_dream3_gold(const std::string& text, const std::vector<std::string>& genes,
                                        const std::string& source);

// Ground truth:
//   # drsit truth v1
//   variables Y X1 X2 ...
//   target Y
//   k i j     covariate Xi at lag k causes Xj (1-based k, i, j)
//   Y k j     covariate Xj at lag k causes the target
struct GroundTruth {
  std::vector<std::string> variable_names;  // target first, then X1..Xm
  std::string target_name;
  AdjacencyTensor structure;

  /// labels[cause][effect] over panel column indices.
  std::vector<std::vector<bool>> summary_matrix() const;
};

std::string format_truth(const AdjacencyTensor& structure, const std::vector<std::string>& variable_names);
GroundTruth parse_truth(const std::string& text, const std::string& source = "<string>");
void write_truth(const AdjacencyTensor& structure, const std::vector<std::string>& variable_names,
                 const std::filesystem::path& path);
GroundTruth read_truth(const std::filesystem::path& path);

inline constexpr int kReportSchemaVersion = 1;

/// JSON document {"schema_version", "reports": [...]} with fixed key order.
/// Wall-clock fields are written only when `include_timing` is set so that
/// identical runs produce identical bytes.
std::string format_reports(const std::vector<DrSitReport>& reports, bool include_timing = false);
std::vector<DrSitReport> parse_reports(const std::string& text, const std::string& source = "<string>");
void write_report(const std::vector<DrSitReport>& reports, const std::filesystem::path& path,
                  bool include_timing = false);
std::vector<DrSitReport> read_report(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace drsit
