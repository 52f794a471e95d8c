#include "cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "drsit/dml.hpp"
#include "drsit/error.hpp"
#include "drsit/io.hpp"
#include "drsit/metrics.hpp"
#include "drsit/rng.hpp"
#include "drsit/synth.hpp"

namespace drsit::cli {

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::LagTooLarge:
    case ErrorKind::TooFewTrajectories:
      return kConfigError;
    case ErrorKind::IoError:
    case ErrorKind::ParseError:
    case ErrorKind::InconsistentSchema:
    case ErrorKind::UnevenTrajectories:
    case ErrorKind::UnknownGene:
    case ErrorKind::SchemaVersionMismatch:
      return kIoError;
    default:
      return kDegenerateData;
  }
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("DRSIT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 1;
}

struct DrSitOptions {
  std::size_t lag = 2;
  std::size_t folds = 5;
  double alpha = 0.05;
  std::string masking = "surrogate_zero_mask";
  std::string regressor = "kernel_ridge_poly";
  int degree = 3;
  double coef0 = 1.0;
  double lambda = 1.0;
  std::string gamma = "auto";
  std::string ranking = "std_z";
  std::uint64_t seed = 0;
  bool no_standardize = false;
  std::size_t threads = default_threads();
  std::size_t mlp_hidden = 64;
  std::size_t mlp_epochs = 2000;
  double mlp_learning_rate = 0.05;
};

void add_drsit_options(CLI::App* cmd, DrSitOptions& o, bool with_lag = true) {
  if (with_lag) cmd->add_option("--lag", o.lag, "Number of past steps used as features")->capture_default_str();
  cmd->add_option("--folds", o.folds, "Cross-fitting folds (trajectory-level)")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Significance level of the paired t-test")->capture_default_str();
  cmd->add_option("--masking", o.masking, "surrogate_zero_mask | refit")->capture_default_str();
  cmd->add_option("--regressor", o.regressor, "kernel_ridge_poly | mlp")->capture_default_str();
  cmd->add_option("--degree", o.degree, "Polynomial kernel degree")->capture_default_str();
  cmd->add_option("--coef0", o.coef0, "Polynomial kernel offset")->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "Ridge penalty")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "Kernel scale, or 'auto' for 1/feature-count")->capture_default_str();
  cmd->add_option("--ranking", o.ranking, "Edge ranking score: std_z | abs_t")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Seed for fold assignment and the MLP")->capture_default_str();
  cmd->add_flag("--no-standardize", o.no_standardize, "Use raw features (masking then substitutes raw zeros)");
  cmd->add_option("--threads", o.threads, "Fold-level worker threads (default: $DRSIT_THREADS or 1; 0 = all cores)")
      ->capture_default_str();
  cmd->add_option("--mlp-hidden", o.mlp_hidden, "MLP hidden units")->capture_default_str();
  cmd->add_option("--mlp-epochs", o.mlp_epochs, "MLP full-batch epochs")->capture_default_str();
  cmd->add_option("--mlp-lr", o.mlp_learning_rate, "MLP learning rate")->capture_default_str();
}

DrSitConfig to_config(const DrSitOptions& o) {
  DrSitConfig c;
  c.lag = o.lag;
  c.k_folds = o.folds;
  c.significance_alpha = o.alpha;
  c.masking_mode = masking_mode_from_string(o.masking);
  c.ranking_metric = ranking_metric_from_string(o.ranking);
  c.seed = o.seed;
  c.standardize = !o.no_standardize;
  c.threads = o.threads;
  c.regressor.kind = regressor_kind_from_string(o.regressor);
  c.regressor.kernel_degree = o.degree;
  c.regressor.kernel_coef0 = o.coef0;
  c.regressor.ridge_lambda = o.lambda;
  if (o.gamma != "auto") {
    char* end = nullptr;
    const double g = std::strtod(o.gamma.c_str(), &end);
    if (end == o.gamma.c_str() || *end != '\0') throw Error(ErrorKind::InvalidConfig, "gamma must be a number or 'auto'");
    c.regressor.kernel_gamma = g;
  }
  c.regressor.mlp_hidden = o.mlp_hidden;
  c.regressor.mlp_epochs = o.mlp_epochs;
  c.regressor.mlp_learning_rate = o.mlp_learning_rate;
  c.regressor.mlp_seed = o.seed;
  c.validate();
  return c;
}

struct SynthOptions {
  std::size_t m = 10;
  std::size_t delta = 2;
  std::size_t timesteps = 500;
  std::size_t trajectories = 5;
  double nsr = 0.1;
  double edge_prob = 0.5;
  std::size_t hidden = 200;
  double signal_scale = 10.0;
};

void add_synth_options(CLI::App* cmd, SynthOptions& o, bool with_m_nsr) {
  if (with_m_nsr) {
    cmd->add_option("--m", o.m, "Number of candidate covariates")->capture_default_str();
    cmd->add_option("--nsr", o.nsr, "Target noise std as a fraction of the signal scale")->capture_default_str();
  }
  cmd->add_option("--delta", o.delta, "Maximum causal lag")->capture_default_str();
  cmd->add_option("--timesteps", o.timesteps, "Steps per trajectory")->capture_default_str();
  cmd->add_option("--trajectories", o.trajectories, "Number of trajectories")->capture_default_str();
  cmd->add_option("--edge-prob", o.edge_prob, "Bernoulli probability of each lagged edge")->capture_default_str();
  cmd->add_option("--hidden", o.hidden, "Hidden units of each structural MLP")->capture_default_str();
  cmd->add_option("--signal-scale", o.signal_scale, "Bound of the structural functions")->capture_default_str();
}

SynthConfig to_synth(const SynthOptions& o, std::uint64_t seed) {
  SynthConfig c;
  c.m = o.m;
  c.delta = o.delta;
  c.timesteps = o.timesteps;
  c.n_traj = o.trajectories;
  c.nsr = o.nsr;
  c.edge_prob = o.edge_prob;
  c.hidden_units = o.hidden;
  c.signal_scale = o.signal_scale;
  c.seed = seed;
  c.validate();
  return c;
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  SynthOptions synth;
  std::uint64_t seed = 0;
  std::string out;
  std::string truth;
};

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  const SynthConfig config = to_synth(o.synth, o.seed);
  const SynthDataset ds = simulate_panel(config);
  write_panel_csv(ds.panel, o.out);
  write_truth(ds.truth, ds.panel.variable_names, o.truth);
  out << "generated m=" << config.m << " delta=" << config.delta << " T=" << config.timesteps
      << " n_traj=" << config.n_traj << " nsr=" << config.nsr << " seed=" << config.seed << "\n";
  return kOk;
}

// ---------------------------------------------------------------- discover

struct DiscoverOptions {
  DrSitOptions dml;
  std::string panel;
  std::string target;
  bool all_targets = false;
  std::string dream3;
  std::string gold;
  std::size_t traj_len = 0;
  std::string out;
  bool timing = false;
};

void print_table(const DrSitReport& r, std::ostream& out) {
  out << "target " << r.target_name << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "  %-16s %12s %12s %10s %11s %10s %s\n", "candidate", "theta_full", "theta_masked",
                "t", "p", "score", "selected");
  out << line;
  for (const auto& e : r.edges) {
    std::snprintf(line, sizeof line, "  %-16s %12.5g %12.5g %10.4g %11.4g %10.4g %s\n", e.candidate_name.c_str(),
                  e.theta_full, e.theta_masked, e.t_stat, e.p_value, e.ranking_score,
                  e.degenerate ? "degenerate" : (e.selected ? "yes" : "no"));
    out << line;
  }
}

/// Scores and labels over every (cause, effect) pair covered by `reports`.
struct EdgeTable {
  std::vector<double> scores;
  std::vector<bool> selected;
  std::vector<bool> labels;
};

EdgeTable collect_edges(const std::vector<DrSitReport>& reports, const std::vector<std::vector<bool>>& labels) {
  EdgeTable t;
  for (const auto& r : reports) {
    for (const auto& e : r.edges) {
      t.scores.push_back(e.ranking_score);
      t.selected.push_back(e.selected);
      t.labels.push_back(labels.at(e.candidate).at(r.target_index));
    }
  }
  return t;
}

std::optional<double> try_auroc(const EdgeTable& t) {
  const auto pos = std::count(t.labels.begin(), t.labels.end(), true);
  if (pos == 0 || pos == static_cast<long>(t.labels.size())) return std::nullopt;
  std::vector<char> lab(t.labels.begin(), t.labels.end());
  return auroc(t.scores, std::span<const bool>(reinterpret_cast<const bool*>(lab.data()), lab.size()));
}

ConfusionMetrics confusion_of(const EdgeTable& t) {
  std::vector<char> s(t.selected.begin(), t.selected.end());
  std::vector<char> l(t.labels.begin(), t.labels.end());
  return confusion_metrics(std::span<const bool>(reinterpret_cast<const bool*>(s.data()), s.size()),
                           std::span<const bool>(reinterpret_cast<const bool*>(l.data()), l.size()));
}

int cmd_discover(const DiscoverOptions& o, std::ostream& out) {
  const DrSitConfig config = to_config(o.dml);
  std::vector<std::pair<std::string, std::string>> echo;
  echo.emplace_back("command", "discover");

  if (!o.dream3.empty()) {
    if (o.gold.empty()) throw Error(ErrorKind::InvalidConfig, "--dream3 needs --gold");
    const auto bundle = read_dream3(o.dream3, o.gold,
                                    o.traj_len ? std::optional<std::size_t>(o.traj_len) : std::nullopt);
    echo.emplace_back("dream3", o.dream3);
    echo.emplace_back("gold", o.gold);
    echo.emplace_back("traj_len", std::to_string(o.traj_len));
    echo.emplace_back("all_targets", "true");
    out << "dream3: " << bundle.panel.num_trajectories() << " trajectories x " << bundle.panel.min_length()
        << " steps x " << bundle.genes.size() << " genes\n";
    const auto start = std::chrono::steady_clock::now();
    auto reports = discover_all(bundle.panel, config);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : reports) r.run_echo = echo;
    const EdgeTable table = collect_edges(reports, bundle.gold_matrix());
    const auto score = try_auroc(table);
    out << "AUROC " << (score ? fmt("%.4f", *score) : std::string("nan")) << "\n";
    out << "elapsed " << fmt("%.2f", secs) << " s\n";
    if (!o.out.empty()) write_report(reports, o.out, o.timing);
    return kOk;
  }

  if (o.panel.empty()) throw Error(ErrorKind::InvalidConfig, "discover needs --panel or --dream3");
  Panel panel = read_panel_csv(o.panel);
  echo.emplace_back("panel", o.panel);
  echo.emplace_back("target", o.target);
  echo.emplace_back("all_targets", o.all_targets ? "true" : "false");
  if (!o.target.empty()) panel.target_index = panel.index_of(o.target);

  std::vector<DrSitReport> reports;
  if (o.all_targets) {
    reports = discover_all(panel, config);
  } else {
    reports.push_back(dr_sit(panel, panel.target_index, config));
  }
  for (auto& r : reports) {
    r.run_echo = echo;
    print_table(r, out);
  }
  if (!o.out.empty()) write_report(reports, o.out, o.timing);
  return kOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string report;
  std::string truth;
  std::string gold;
  std::string out;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
  const auto reports = read_report(o.report);
  if (reports.empty()) throw Error(ErrorKind::InvalidConfig, "report contains no targets");
  const auto& names = reports.front().variable_names;
  for (const auto& r : reports) {
    if (r.variable_names != names) throw Error(ErrorKind::InvalidConfig, "reports disagree on variable names");
  }

  std::vector<std::vector<bool>> labels;
  if (!o.truth.empty()) {
    const GroundTruth truth = read_truth(o.truth);
    if (truth.variable_names != names) {
      throw Error(ErrorKind::InvalidConfig, "variable names in the report do not match the truth file");
    }
    labels = truth.summary_matrix();
  } else if (!o.gold.empty()) {
    Dream3Bundle b;
    b.genes = names;
    b.gold = parse_dream3_gold(read_text_file(o.gold), names, o.gold);
    labels = b.gold_matrix();
  } else {
    throw Error(ErrorKind::InvalidConfig, "evaluate needs --truth or --gold");
  }

  const EdgeTable table = collect_edges(reports, labels);
  const ConfusionMetrics cm = confusion_of(table);
  const auto score = try_auroc(table);
  const std::string auroc_text = score ? fmt("%.6f", *score) : std::string("nan");
  out << "edges " << table.labels.size() << " tp " << cm.tp << " fp " << cm.fp << " tn " << cm.tn << " fn " << cm.fn
      << "\n";
  out << "accuracy " << fmt("%.6f", cm.accuracy) << "\nf1 " << fmt("%.6f", cm.f1) << "\ncsi " << fmt("%.6f", cm.csi)
      << "\nauroc " << auroc_text << "\n";
  if (!o.out.empty()) {
    std::ostringstream csv;
    csv << "accuracy,f1,csi,auroc,tp,fp,tn,fn\n"
        << fmt("%.6f", cm.accuracy) << "," << fmt("%.6f", cm.f1) << "," << fmt("%.6f", cm.csi) << "," << auroc_text
        << "," << cm.tp << "," << cm.fp << "," << cm.tn << "," << cm.fn << "\n";
    write_text_file(o.out, csv.str());
  }
  return kOk;
}

// ---------------------------------------------------------------- benchmark

struct BenchmarkOptions {
  SynthOptions synth;
  DrSitOptions dml;
  std::vector<std::size_t> m_list{10};
  std::vector<double> nsr_list{0.1};
  std::size_t seeds = 5;
  std::uint64_t master_seed = 0;
  std::size_t lag = 0;  // 0: use --delta
  std::string out;
  bool resume = false;
};

std::string nsr_key(double nsr) { return fmt("%g", nsr); }

std::string cell_key(std::size_t m, const std::string& nsr, std::size_t replicate) {
  return std::to_string(m) + "|" + nsr + "|" + std::to_string(replicate);
}

/// Stable per-cell seed: independent of sweep order, so resumed sweeps match.
std::uint64_t cell_seed(std::uint64_t master, std::size_t m, double nsr, std::size_t replicate) {
  return hash_combine(master, {static_cast<std::uint64_t>(m), std::bit_cast<std::uint64_t>(nsr),
                               static_cast<std::uint64_t>(replicate)});
}

constexpr const char* kBenchmarkHeader = "m,nsr,replicate,seed,accuracy,f1,csi,auroc,seconds";

int cmd_benchmark(const BenchmarkOptions& o, std::ostream& out) {
  if (o.seeds == 0) throw Error(ErrorKind::InvalidConfig, "seeds must be >= 1");
  if (o.m_list.empty() || o.nsr_list.empty()) throw Error(ErrorKind::InvalidConfig, "m and nsr grids must be non-empty");
  DrSitOptions dml = o.dml;
  dml.lag = o.lag == 0 ? o.synth.delta : o.lag;
  const DrSitConfig base = to_config(dml);
  for (std::size_t m : o.m_list) {
    SynthOptions s = o.synth;
    s.m = m;
    for (double nsr : o.nsr_list) {
      s.nsr = nsr;
      to_synth(s, 0);
    }
  }

  std::set<std::string> done;
  const bool exists = std::filesystem::exists(o.out);
  if (o.resume && exists) {
    std::istringstream in(read_text_file(o.out));
    std::string line;
    std::getline(in, line);
    if (line != kBenchmarkHeader) throw Error(ErrorKind::ParseError, o.out + ": unexpected header, cannot resume");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::string m, nsr, rep;
      std::getline(fields, m, ',');
      std::getline(fields, nsr, ',');
      std::getline(fields, rep, ',');
      done.insert(m + "|" + nsr + "|" + rep);
    }
  }

  std::ofstream csv(o.out, (o.resume && exists) ? std::ios::app : std::ios::trunc);
  if (!csv) throw Error(ErrorKind::IoError, "cannot open '" + o.out + "' for writing");
  if (!(o.resume && exists)) csv << kBenchmarkHeader << "\n" << std::flush;

  std::size_t ran = 0;
  for (std::size_t m : o.m_list) {
    for (double nsr : o.nsr_list) {
      for (std::size_t rep = 0; rep < o.seeds; ++rep) {
        if (done.count(cell_key(m, nsr_key(nsr), rep))) continue;
        const std::uint64_t seed = cell_seed(o.master_seed, m, nsr, rep);
        SynthOptions s = o.synth;
        s.m = m;
        s.nsr = nsr;
        const auto start = std::chrono::steady_clock::now();
        const SynthDataset ds = simulate_panel(to_synth(s, seed));
        DrSitConfig config = base;
        config.seed = seed;
        config.regressor.mlp_seed = seed;
        const DrSitReport report = dr_sit(ds.panel, 0, config);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        std::vector<std::vector<bool>> labels(m + 1, std::vector<bool>(m + 1, false));
        const auto parents = ds.truth.target_parents();
        for (std::size_t j = 0; j < m; ++j) labels[j + 1][0] = parents[j];
        const EdgeTable table = collect_edges({report}, labels);
        const ConfusionMetrics cm = confusion_of(table);
        const auto score = try_auroc(table);
        csv << m << "," << nsr_key(nsr) << "," << rep << "," << seed << "," << fmt("%.6f", cm.accuracy) << ","
            << fmt("%.6f", cm.f1) << "," << fmt("%.6f", cm.csi) << ","
            << (score ? fmt("%.6f", *score) : std::string("nan")) << "," << fmt("%.3f", secs) << "\n"
            << std::flush;
        out << "m=" << m << " nsr=" << nsr_key(nsr) << " rep=" << rep << " accuracy=" << fmt("%.3f", cm.accuracy)
            << " f1=" << fmt("%.3f", cm.f1) << " csi=" << fmt("%.3f", cm.csi) << " (" << fmt("%.1f", secs) << " s)\n";
        ++ran;
      }
    }
  }
  out << "benchmark: " << ran << " cells run, " << done.size() << " already present\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Granger-causal discovery with cross-fitted doubly-robust tests"};
  app.set_config("--config", "", "TOML file with one [section] per subcommand; flags override it");
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Simulate a synthetic panel and its ground-truth structure");
  add_synth_options(generate, gen.synth, true);
  generate->add_option("--seed", gen.seed, "Simulation seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Panel CSV (traj,time,Y,X1,...)")->required();
  generate->add_option("--truth", gen.truth, "Ground-truth edge list")->required();

  DiscoverOptions disc;
  auto* discover = app.add_subcommand("discover", "Test every candidate as a Granger cause of the target");
  add_drsit_options(discover, disc.dml);
  discover->add_option("--panel", disc.panel, "Panel CSV: traj,time,<target>,<covariates...>");
  discover->add_option("--target", disc.target, "Target column name (default: first variable)");
  discover->add_flag("--all-targets", disc.all_targets, "Run once per variable (full summary graph)");
  discover->add_option("--dream3", disc.dream3, "DREAM3 expression TSV (implies --all-targets)");
  discover->add_option("--gold", disc.gold, "DREAM3 gold standard: gene_i<TAB>gene_j<TAB>0|1");
  discover->add_option("--traj-len", disc.traj_len, "Force fixed-length DREAM3 trajectories");
  discover->add_option("--out", disc.out, "Report file (JSON)");
  discover->add_flag("--timing", disc.timing, "Record wall-clock time in the report (breaks byte-reproducibility)");

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "Score a report against ground truth");
  evaluate->add_option("--report", eval.report, "Report file from discover")->required();
  evaluate->add_option("--truth", eval.truth, "Ground truth from generate");
  evaluate->add_option("--gold", eval.gold, "DREAM3 gold standard");
  evaluate->add_option("--out", eval.out, "Metrics CSV");

  BenchmarkOptions bench;
  auto* benchmark = app.add_subcommand("benchmark", "Sweep synthetic cells over (m, nsr, replicate)");
  add_synth_options(benchmark, bench.synth, false);
  add_drsit_options(benchmark, bench.dml, false);
  benchmark->add_option("--m-list", bench.m_list, "Covariate counts")->delimiter(',')->capture_default_str();
  benchmark->add_option("--nsr-list", bench.nsr_list, "Noise-to-signal ratios")->delimiter(',')->capture_default_str();
  benchmark->add_option("--seeds", bench.seeds, "Replicates per cell")->capture_default_str();
  benchmark->add_option("--master-seed", bench.master_seed, "Seed from which per-cell seeds are hashed")
      ->capture_default_str();
  benchmark->add_option("--lag", bench.lag, "Design lag (default: --delta)");
  benchmark->add_option("--out", bench.out, "Results CSV")->required();
  benchmark->add_flag("--resume", bench.resume, "Skip cells already present in --out");

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (discover->parsed()) return cmd_discover(disc, out);
    if (evaluate->parsed()) return cmd_evaluate(eval, out);
    if (benchmark->parsed()) return cmd_benchmark(bench, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kConfigError;
}

}  // namespace drsit::cli
