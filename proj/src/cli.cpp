#include "qlp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qlp/evolution.hpp"
#include "qlp/report_io.hpp"
#include "qlp/sampler.hpp"

namespace qlp::cli {

using ojson = nlohmann::ordered_json;

namespace {

// Bad option values detected after CLI11 parsing; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_number(std::string_view s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + std::string(s) + "' in grid");
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

class Run {
 public:
  Run(RunConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

  int execute() {
    std::filesystem::create_directories(cfg_.out_dir);
    if (cfg_.subcommand == "stats") stats();
    else if (cfg_.subcommand == "score") score_cmd();
    else if (cfg_.subcommand == "sample") sample();
    else if (cfg_.subcommand == "crossval") crossval();
    else if (cfg_.subcommand == "tune") tune();
    else if (cfg_.subcommand == "screens") screens();
    write_manifest();
    return 0;
  }

 private:
  Graph load(const std::string& path) {
    auto loaded = load_edge_list_file(path);
    if (loaded.duplicates_dropped || loaded.self_loops_dropped) {
      err_ << "note: " << path << ": dropped " << loaded.duplicates_dropped << " duplicate edge(s), "
           << loaded.self_loops_dropped << " self-loop(s)\n";
    }
    return std::move(loaded.graph);
  }

  void emit(const std::string& name, const std::string& text) {
    write_text_file(cfg_.out_dir / name, text);
    outputs_.push_back(name);
  }

  std::uint64_t seed() const {
    if (!cfg_.seed) throw UsageError("--seed is required for " + cfg_.subcommand);
    return *cfg_.seed;
  }

  std::vector<double> grid() const {
    if (cfg_.grid.empty()) throw UsageError("--grid is required with --tune");
    try {
      return parse_grid(cfg_.grid);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  TuneObjective objective() const {
    try {
      return parse_objective(cfg_.objective);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  void check_spec() const {
    try {
      cfg_.spec.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  void stats() {
    const Graph g = load(cfg_.inputs.at(0));
    const std::string text = to_json(compute_stats(g)).dump(2) + "\n";
    emit("stats.json", text);
    out_ << text;
  }

  void score_cmd() {
    check_spec();
    const Graph g = load(cfg_.inputs.at(0));
    const ScoreMatrix s = score(g, cfg_.spec);
    const auto ranked = rank_predictions(s, g, cfg_.top.value_or(kNoCutoff));
    std::ostringstream csv;
    write_ranked_csv(csv, g, ranked);
    emit("scores.csv", csv.str());
    out_ << ranked.entries.size() << " candidate pair(s) written\n";
  }

  void sample() {
    const Graph g = load(cfg_.inputs.at(0));
    SamplerConfig sc;
    if (cfg_.shots_mode == "uniform") {
      sc = SamplerConfig::uniform(g.node_count(), cfg_.shots, seed());
    } else if (cfg_.shots_mode == "degree") {
      sc = SamplerConfig::degree_proportional(g, cfg_.shots, seed());
    } else {
      throw UsageError("--shots-mode must be uniform or degree");
    }
    sc.keep_even = cfg_.parity == "even" || cfg_.parity == "both";
    sc.keep_odd = cfg_.parity == "odd" || cfg_.parity == "both";
    if (!sc.keep_even && !sc.keep_odd) throw UsageError("--parity must be even, odd or both");
    if (cfg_.shots == 0) throw UsageError("--shots must be positive");
    if (!std::isfinite(cfg_.spec.time)) throw UsageError("--t must be finite");

    const auto u = evolution_operator(g, cfg_.spec.time);
    const auto samples = draw_samples(g, u, sc);
    std::ostringstream csv;
    write_samples_csv(csv, g, samples);
    emit("samples.csv", csv.str());

    const auto counts = count_dispositions(samples);
    out_ << "shots " << counts.total() << ", kept " << counts.kept << ", self " << counts.discarded_self
         << ", existing " << counts.discarded_existing_link << ", parity " << counts.discarded_parity << '\n';

    for (Parity p : {Parity::even, Parity::odd}) {
      if ((p == Parity::even && !sc.keep_even) || (p == Parity::odd && !sc.keep_odd)) continue;
      const auto est = estimate_scores(samples, p, g.node_count());
      if (est.empty()) err_ << "warning: no kept " << to_string(p) << " samples; empirical scores are all zero\n";
      std::ostringstream scores_csv;
      write_ranked_csv(scores_csv, g, rank_predictions(est.scores, g, cfg_.top.value_or(kNoCutoff)));
      emit("scores_" + std::string(to_string(p)) + ".csv", scores_csv.str());
    }
  }

  void crossval() {
    const Graph g = load(cfg_.inputs.at(0));
    const std::uint64_t s = seed();
    const std::size_t cutoff = cfg_.cutoff.value_or(standard_cutoff(g));
    if (cfg_.folds < 2) throw UsageError("--folds must be at least 2");
    MethodSpec spec = cfg_.spec;
    std::optional<TuningResult> tuning;
    if (cfg_.tune) {
      if (!has_parameter(spec.method)) throw UsageError("--tune needs a method with a parameter");
      tuning = tune_hyperparameter(g, spec, grid(), s, objective(), cfg_.folds);
      spec = spec.with_parameter(tuning->best);
    }
    cfg_.spec = spec;
    check_spec();
    const FoldPlan plan = kfold_split(g, cfg_.folds, s);
    EvalReport report = cross_validate(g, spec, plan, cutoff);
    report.tuning = tuning;

    emit("report.json", to_json(report).dump(2) + "\n");
    std::ostringstream precision, auc;
    write_precision_csv(precision, report.precision_mean, report.precision_std);
    emit("precision.csv", precision.str());
    write_auc_csv(auc, report);
    emit("auc.csv", auc.str());
    out_ << to_string(spec.method) << ": AUC-ROC " << format_double(report.auc_roc_mean) << " +- "
         << format_double(report.auc_roc_std) << ", AUC-PR " << format_double(report.auc_pr_mean)
         << " +- " << format_double(report.auc_pr_std) << '\n';
  }

  void tune() {
    const Graph g = load(cfg_.inputs.at(0));
    if (!has_parameter(cfg_.spec.method)) throw UsageError("method has no tunable parameter");
    if (cfg_.folds < 2) throw UsageError("--folds must be at least 2");
    const auto result = tune_hyperparameter(g, cfg_.spec, grid(), seed(), objective(), cfg_.folds);
    emit("report.json", to_json(result).dump(2) + "\n");
    out_ << "best " << format_double(result.best) << '\n';
  }

  void screens() {
    if (cfg_.inputs.size() < 2) throw UsageError("screens needs a training file and at least one test file");
    const Graph train = load(cfg_.inputs[0]);
    std::vector<std::pair<std::string, std::string>> test_pairs;
    for (std::size_t f = 1; f < cfg_.inputs.size(); ++f) {
      const Graph test = load(cfg_.inputs[f]);
      for (const Edge& e : test.edges()) test_pairs.emplace_back(test.label(e.u), test.label(e.v));
    }
    std::optional<HeldoutTuning> tuning;
    if (cfg_.tune) {
      if (!has_parameter(cfg_.spec.method)) throw UsageError("--tune needs a method with a parameter");
      tuning = HeldoutTuning{grid(), seed(), 0.5};
    } else {
      seed();
    }
    check_spec();
    const auto result = heldout_validate(train, test_pairs, cfg_.spec, cfg_.top_n, tuning);
    cfg_.spec = result.spec;
    emit("report.json", to_json(result).dump(2) + "\n");
    std::ostringstream csv;
    csv << "rank,precision\n";
    for (std::size_t r = 0; r < result.precision.size(); ++r) {
      csv << r << ',' << format_double(result.precision[r]) << '\n';
    }
    emit("precision.csv", csv.str());
    if (result.test_edges_dropped) {
      err_ << "note: dropped " << result.test_edges_dropped << " test edge(s) with labels unknown to the training graph\n";
    }
    out_ << "test edges used " << result.test_edges_used << ", curve length " << result.precision.size() << '\n';
  }

  void write_manifest() {
    ojson config{{"subcommand", cfg_.subcommand},
                 {"spec", to_json(cfg_.spec)},
                 {"folds", cfg_.folds},
                 {"seed", cfg_.seed ? ojson(*cfg_.seed) : ojson(nullptr)},
                 {"cutoff", cfg_.cutoff ? ojson(*cfg_.cutoff) : ojson(nullptr)},
                 {"shots", cfg_.shots},
                 {"shots_mode", cfg_.shots_mode},
                 {"parity", cfg_.parity},
                 {"tune", cfg_.tune},
                 {"grid", cfg_.grid},
                 {"objective", cfg_.objective},
                 {"top_n", cfg_.top_n},
                 {"top", cfg_.top ? ojson(*cfg_.top) : ojson(nullptr)}};
    ojson inputs = ojson::array();
    for (const auto& path : cfg_.inputs) {
      inputs.push_back({{"path", path}, {"sha256", sha256_file(path)}});
    }
    ojson manifest{{"config", config}, {"inputs", inputs}, {"outputs", outputs_}};
    write_text_file(cfg_.out_dir / "manifest.json", manifest.dump(2) + "\n");
  }

  RunConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::string> outputs_;
};

void add_method_options(CLI::App* cmd, RunConfig& cfg, std::string& method) {
  cmd->add_option("--method", method, "qlp-even|qlp-odd|ra-l2|ch-l2|l3|ch-l3|lo")->required();
  cmd->add_option("--t", cfg.spec.time, "QLP walk time");
  cmd->add_option("--alpha", cfg.spec.alpha, "LO regularizer");
}

void add_tuning_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_flag("--tune", cfg.tune, "choose the parameter on a holdout before evaluating");
  cmd->add_option("--grid", cfg.grid, "a,b,c | lin:lo:hi:n | log:lo:hi:n");
  cmd->add_option("--objective", cfg.objective, "precision-area|auc-roc|auc-pr");
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> grid;
  if (text.starts_with("lin:") || text.starts_with("log:")) {
    const auto parts = split(text.substr(4), ':');
    if (parts.size() != 3) throw std::invalid_argument("range grid needs lo:hi:n");
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const double count = parse_number(parts[2]);
    if (count < 1 || count != std::floor(count)) throw std::invalid_argument("grid point count must be a positive integer");
    const bool log_scale = text.starts_with("log:");
    if (log_scale && (lo <= 0 || hi <= 0)) throw std::invalid_argument("log grid bounds must be positive");
    const auto n = static_cast<std::size_t>(count);
    for (std::size_t i = 0; i < n; ++i) {
      const double frac = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      if (i == 0) grid.push_back(lo);
      else if (i + 1 == n) grid.push_back(hi);
      else grid.push_back(log_scale ? std::exp(std::log(lo) + frac * (std::log(hi) - std::log(lo)))
                                    : lo + frac * (hi - lo));
    }
  } else {
    for (const auto& part : split(text, ',')) grid.push_back(parse_number(part));
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-walk and path-based link prediction"};
  app.name("qlp");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string method = "qlp-odd";
  std::string out_dir = ".";
  std::string graph_path;
  std::vector<std::string> test_paths;
  std::uint64_t seed_value = 0;
  std::size_t cutoff_value = 0;
  std::size_t top_value = 0;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "output directory");
  };
  auto with_seed = [&](CLI::App* cmd) {
    return cmd->add_option("--seed", seed_value, "RNG seed");
  };

  auto* stats = app.add_subcommand("stats", "network statistics as JSON");
  stats->add_option("graph", graph_path, "edge list")->required();
  common(stats);

  auto* score = app.add_subcommand("score", "ranked candidate scores as CSV");
  score->add_option("graph", graph_path, "edge list")->required();
  add_method_options(score, cfg, method);
  auto* score_top = score->add_option("--top", top_value, "keep the top N candidates");
  common(score);

  auto* sample = app.add_subcommand("sample", "simulate QLP measurement shots");
  sample->add_option("graph", graph_path, "edge list")->required();
  sample->add_option("--t", cfg.spec.time, "QLP walk time")->required();
  sample->add_option("--shots", cfg.shots, "shots per node (mean shots for --shots-mode degree)");
  sample->add_option("--shots-mode", cfg.shots_mode, "uniform|degree");
  sample->add_option("--parity", cfg.parity, "even|odd|both");
  auto* sample_top = sample->add_option("--top", top_value, "keep the top N empirical pairs");
  auto* sample_seed = with_seed(sample)->required();
  common(sample);

  auto* crossval = app.add_subcommand("crossval", "k-fold cross-validation report");
  crossval->add_option("graph", graph_path, "edge list")->required();
  add_method_options(crossval, cfg, method);
  add_tuning_options(crossval, cfg);
  crossval->add_option("--folds", cfg.folds, "fold count");
  auto* crossval_cutoff = crossval->add_option("--cutoff", cutoff_value, "precision curve length");
  auto* crossval_seed = with_seed(crossval)->required();
  common(crossval);

  auto* tune = app.add_subcommand("tune", "pick t or alpha on an inner holdout");
  tune->add_option("graph", graph_path, "edge list")->required();
  add_method_options(tune, cfg, method);
  tune->add_option("--grid", cfg.grid, "a,b,c | lin:lo:hi:n | log:lo:hi:n")->required();
  tune->add_option("--objective", cfg.objective, "precision-area|auc-roc|auc-pr");
  tune->add_option("--folds", cfg.folds, "fold count of the outer split");
  auto* tune_seed = with_seed(tune)->required();
  common(tune);

  auto* screens = app.add_subcommand("screens", "validate predictions against held-out screens");
  screens->add_option("train", graph_path, "training edge list")->required();
  screens->add_option("tests", test_paths, "held-out edge lists")->required();
  add_method_options(screens, cfg, method);
  add_tuning_options(screens, cfg);
  screens->add_option("--top-n", cfg.top_n, "precision curve length");
  auto* screens_seed = with_seed(screens)->required();
  common(screens);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  cfg.inputs.push_back(graph_path);
  cfg.inputs.insert(cfg.inputs.end(), test_paths.begin(), test_paths.end());
  cfg.out_dir = out_dir;
  for (auto* opt : {sample_seed, crossval_seed, tune_seed, screens_seed}) {
    if (opt->count() > 0) cfg.seed = seed_value;
  }
  if (crossval_cutoff->count() > 0) cfg.cutoff = cutoff_value;
  if (score_top->count() > 0 || sample_top->count() > 0) cfg.top = top_value;
  if (cfg.subcommand == "sample") {
    cfg.spec.method = cfg.parity == "even" ? Method::qlp_even : Method::qlp_odd;
  } else if (cfg.subcommand != "stats") {
    try {
      cfg.spec.method = parse_method(method);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }

  try {
    return Run(cfg, out, err).execute();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qlp::cli
