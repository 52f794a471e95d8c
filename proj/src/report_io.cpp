#include <cmath>

#include <json.hpp>

#include "drsit/error.hpp"
#include "drsit/io.hpp"

namespace drsit {

namespace {

using Json = nlohmann::ordered_json;

// JSON has no infinities; they appear for zero-variance differences with a
// nonzero mean.
Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double to_number(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    throw Error(ErrorKind::ParseError, "bad numeric string '" + s + "'");
  }
  return j.get<double>();
}

Json config_json(const DrSitConfig& c) {
  Json r;
  r["kind"] = to_string(c.regressor.kind);
  r["kernel_degree"] = c.regressor.kernel_degree;
  r["kernel_coef0"] = c.regressor.kernel_coef0;
  r["ridge_lambda"] = c.regressor.ridge_lambda;
  r["kernel_gamma"] = c.regressor.kernel_gamma ? Json(*c.regressor.kernel_gamma) : Json("auto");
  r["mlp_hidden"] = c.regressor.mlp_hidden;
  r["mlp_epochs"] = c.regressor.mlp_epochs;
  r["mlp_learning_rate"] = c.regressor.mlp_learning_rate;
  r["mlp_seed"] = c.regressor.mlp_seed;

  Json j;
  j["lag"] = c.lag;
  j["k_folds"] = c.k_folds;
  j["significance_alpha"] = c.significance_alpha;
  j["masking_mode"] = to_string(c.masking_mode);
  j["ranking_metric"] = to_string(c.ranking_metric);
  j["seed"] = c.seed;
  j["standardize"] = c.standardize;
  j["regressor"] = std::move(r);
  return j;
}

DrSitConfig config_from_json(const Json& j) {
  DrSitConfig c;
  c.lag = j.at("lag").get<std::size_t>();
  c.k_folds = j.at("k_folds").get<std::size_t>();
  c.significance_alpha = j.at("significance_alpha").get<double>();
  c.masking_mode = masking_mode_from_string(j.at("masking_mode").get<std::string>());
  c.ranking_metric = ranking_metric_from_string(j.at("ranking_metric").get<std::string>());
  c.seed = j.at("seed").get<std::uint64_t>();
  c.standardize = j.at("standardize").get<bool>();
  const Json& r = j.at("regressor");
  c.regressor.kind = regressor_kind_from_string(r.at("kind").get<std::string>());
  c.regressor.kernel_degree = r.at("kernel_degree").get<int>();
  c.regressor.kernel_coef0 = r.at("kernel_coef0").get<double>();
  c.regressor.ridge_lambda = r.at("ridge_lambda").get<double>();
  if (r.at("kernel_gamma").is_number()) c.regressor.kernel_gamma = r.at("kernel_gamma").get<double>();
  c.regressor.mlp_hidden = r.at("mlp_hidden").get<std::size_t>();
  c.regressor.mlp_epochs = r.at("mlp_epochs").get<std::size_t>();
  c.regressor.mlp_learning_rate = r.at("mlp_learning_rate").get<double>();
  c.regressor.mlp_seed = r.at("mlp_seed").get<std::uint64_t>();
  return c;
}

Json report_json(const DrSitReport& rep, bool include_timing) {
  Json j;
  j["target_index"] = rep.target_index;
  j["target_name"] = rep.target_name;
  j["variable_names"] = rep.variable_names;
  j["config"] = config_json(rep.config);
  Json echo = Json::array();
  for (const auto& [k, v] : rep.run_echo) echo.push_back(Json::array({k, v}));
  j["run_echo"] = std::move(echo);
  // z = psi_full - psi_masked, so positive mean_z means the candidate's past
  // raised the fitted moment.
  j["z_convention"] = "psi_full - psi_masked";
  Json edges = Json::array();
  for (const auto& e : rep.edges) {
    Json x;
    x["candidate"] = e.candidate;
    x["candidate_name"] = e.candidate_name;
    x["n"] = e.n;
    x["theta_full"] = number(e.theta_full);
    x["theta_masked"] = number(e.theta_masked);
    x["mean_z"] = number(e.mean_z);
    x["std_z"] = number(e.std_z);
    x["t_stat"] = number(e.t_stat);
    x["p_value"] = number(e.p_value);
    x["ranking_score"] = number(e.ranking_score);
    x["selected"] = e.selected;
    x["degenerate"] = e.degenerate;
    edges.push_back(std::move(x));
  }
  j["edges"] = std::move(edges);
  Json folds = Json::array();
  for (const auto& f : rep.folds) {
    Json x;
    x["fold"] = f.fold;
    x["train_rows"] = f.train_rows;
    x["held_out_rows"] = f.held_out_rows;
    x["held_out_rmse"] = number(f.held_out_rmse);
    folds.push_back(std::move(x));
  }
  j["folds"] = std::move(folds);
  if (include_timing) j["elapsed_seconds"] = rep.elapsed_seconds;
  return j;
}

DrSitReport report_from_json(const Json& j) {
  DrSitReport rep;
  rep.target_index = j.at("target_index").get<std::size_t>();
  rep.target_name = j.at("target_name").get<std::string>();
  rep.variable_names = j.at("variable_names").get<std::vector<std::string>>();
  rep.config = config_from_json(j.at("config"));
  for (const auto& kv : j.at("run_echo")) rep.run_echo.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
  for (const auto& x : j.at("edges")) {
    EdgeStatistics e;
    e.candidate = x.at("candidate").get<std::size_t>();
    e.candidate_name = x.at("candidate_name").get<std::string>();
    e.n = x.at("n").get<std::size_t>();
    e.theta_full = to_number(x.at("theta_full"));
    e.theta_masked = to_number(x.at("theta_masked"));
    e.mean_z = to_number(x.at("mean_z"));
    e.std_z = to_number(x.at("std_z"));
    e.t_stat = to_number(x.at("t_stat"));
    e.p_value = to_number(x.at("p_value"));
    e.ranking_score = to_number(x.at("ranking_score"));
    e.selected = x.at("selected").get<bool>();
    e.degenerate = x.at("degenerate").get<bool>();
    rep.edges.push_back(std::move(e));
  }
  for (const auto& x : j.at("folds")) {
    FoldDiagnostics f;
    f.fold = x.at("fold").get<std::size_t>();
    f.train_rows = x.at("train_rows").get<std::size_t>();
    f.held_out_rows = x.at("held_out_rows").get<std::size_t>();
    f.held_out_rmse = to_number(x.at("held_out_rmse"));
    rep.folds.push_back(f);
  }
  if (j.contains("elapsed_seconds")) rep.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  return rep;
}

}  // namespace

std::string format_reports(const std::vector<DrSitReport>& reports, bool include_timing) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(report_json(r, include_timing));
  doc["reports"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::vector<DrSitReport> parse_reports(const std::string& text, const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, source + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kReportSchemaVersion) {
      throw Error(ErrorKind::SchemaVersionMismatch, source + ": schema version " + std::to_string(version) +
                                                        ", reader expects " + std::to_string(kReportSchemaVersion));
    }
    std::vector<DrSitReport> out;
    for (const auto& r : doc.at("reports")) out.push_back(report_from_json(r));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, source + ": " + e.what());
  }
}

void write_report(const std::vector<DrSitReport>& reports, const std::filesystem::path& path, bool include_timing) {
  write_text_file(path, format_reports(reports, include_timing));
}

std::vector<DrSitReport> read_report(const std::filesystem::path& path) {
  return parse_reports(read_text_file(path), path.string());
}

}  // namespace drsit
