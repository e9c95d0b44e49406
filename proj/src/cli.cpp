#include "cecp/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "cecp/error.hpp"
#include "cecp/pipeline.hpp"

namespace cecp {

namespace {

struct OrdinalFlags {
  int dim = 4;
  int tau = 1;
};

void add_ordinal(CLI::App* cmd, OrdinalFlags& f) {
  cmd->add_option("--dim", f.dim, "Embedding dimension D")->capture_default_str();
  cmd->add_option("--tau", f.tau, "Embedding delay")->capture_default_str();
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw Error(Errc::invalid_argument, "unknown output format '" + s + "'");
}

// Writes one table to `<out>/<stem>.<ext>` or, without --out, to stdout
// preceded by a "# stem" line when several tables are printed.
class Sink {
 public:
  Sink(std::ostream& out, std::string dir, OutputFormat format, bool label)
      : out_(out), dir_(std::move(dir)), format_(format), label_(label) {}

  void emit(std::string_view stem, const CsvTable& table) {
    if (!dir_.empty()) {
      write_table(dir_, stem, table, format_);
      return;
    }
    if (label_) out_ << "# " << stem << '\n';
    if (format_ == OutputFormat::csv) {
      write_csv(out_, table);
    } else {
      out_ << table_to_json_text(table);
    }
  }

 private:
  std::ostream& out_;
  std::string dir_;
  OutputFormat format_;
  bool label_;
};

void warn_undersampled(std::ostream& err, const OrdinalConfig& ordinal, std::size_t window) {
  const auto per_window = ordinal.sample_count(window);
  if (per_window < 5 * ordinal.pattern_count()) {
    err << "warning: " << per_window << " embedding vectors per window for " << ordinal.pattern_count()
        << " patterns; histogram is undersampled (< 5 per pattern)\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation entropy and statistical complexity analysis of price series", "cecp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Rolling CECP analysis of a multi-asset CSV dataset");
  std::string input;
  std::string out_dir;
  std::vector<std::string> assets;
  OrdinalFlags ordinal_flags;
  std::size_t window = 360;
  std::size_t step = 60;
  bool log_ret = false;
  bool ffill = false;
  std::string baseline;
  std::string metric_path;
  std::vector<double> hurst;
  std::size_t sims = 500;
  std::size_t fbm_length = 0;
  std::uint64_t seed = 42;
  std::size_t resolution = 2000;
  std::string format = "csv";
  unsigned threads = 0;
  std::string config_path;
  analyze->add_option("--input", input, "Input CSV (timestamp column + one column per asset)");
  analyze->add_option("--assets", assets, "Comma-separated asset columns (default: all)")->delimiter(',');
  add_ordinal(analyze, ordinal_flags);
  analyze->add_option("--window", window, "Window size N")->capture_default_str();
  analyze->add_option("--step", step, "Window step")->capture_default_str();
  analyze->add_flag("--log-returns", log_ret, "Analyze log returns instead of price levels");
  analyze->add_flag("--forward-fill", ffill, "Carry the previous value into missing cells");
  analyze->add_option("--baseline", baseline, "Baseline asset for pairwise ANOVA");
  analyze->add_option("--metric", metric_path, "CSV of per-asset size metrics for Spearman tests");
  analyze->add_option("--fbm-hurst", hurst, "Hurst exponents of fBm reference clouds")->delimiter(',');
  analyze->add_option("--fbm-sims", sims, "Simulations per fBm cloud")->capture_default_str();
  analyze->add_option("--fbm-length", fbm_length, "fBm path length (default: window size)");
  analyze->add_option("--seed", seed, "Seed for all random draws")->capture_default_str();
  analyze->add_option("--resolution", resolution, "Bound curve resolution")->capture_default_str();
  analyze->add_option("--format", format, "Output format: csv or json")->capture_default_str();
  analyze->add_option("--threads", threads, "Worker threads (0 = all cores)");
  analyze->add_option("--config", config_path, "Rerun with the configuration stored in a manifest.json");
  analyze->add_option("--out", out_dir, "Output directory")->required();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Lower and upper complexity bounds as CSV (H, C_lower, C_upper)");
  OrdinalFlags bounds_flags;
  std::size_t bounds_resolution = 2000;
  std::string bounds_out;
  bounds->add_option("--dim", bounds_flags.dim, "Embedding dimension D (M = D!)")->capture_default_str();
  bounds->add_option("--resolution", bounds_resolution, "Number of entropy bins")->capture_default_str();
  bounds->add_option("--out", bounds_out, "Output directory (default: stdout)");

  // fbm
  auto* fbm = app.add_subcommand("fbm", "CECP mean and spread of simulated fBm paths");
  std::vector<double> fbm_hurst{0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t fbm_sims = 500;
  std::size_t fbm_len = 360;
  std::uint64_t fbm_seed = 42;
  OrdinalFlags fbm_flags;
  std::string fbm_format = "csv";
  std::string fbm_out;
  unsigned fbm_threads = 0;
  fbm->add_option("--hurst", fbm_hurst, "Comma-separated Hurst exponents")->delimiter(',');
  fbm->add_option("--sims", fbm_sims, "Simulations per exponent")->capture_default_str();
  fbm->add_option("--length", fbm_len, "Path length")->capture_default_str();
  fbm->add_option("--seed", fbm_seed, "Seed")->capture_default_str();
  add_ordinal(fbm, fbm_flags);
  fbm->add_option("--format", fbm_format, "Output format: csv or json")->capture_default_str();
  fbm->add_option("--threads", fbm_threads, "Worker threads (0 = all cores)");
  fbm->add_option("--out", fbm_out, "Output directory (default: stdout)");

  // rank / anova / spearman over rolling output
  std::string stats_input;
  std::string stats_out;
  std::string stats_format = "csv";
  auto* rank = app.add_subcommand("rank", "Efficiency ranking from rolling output");
  auto* anova = app.add_subcommand("anova", "All-asset and pairwise ANOVA from rolling output");
  auto* spearman = app.add_subcommand("spearman", "Spearman correlation of efficiency distance with size metrics");
  std::string anova_baseline;
  std::string spearman_metric;
  for (auto* cmd : {rank, anova, spearman}) {
    cmd->add_option("--input", stats_input, "rolling.csv produced by analyze")->required();
    cmd->add_option("--out", stats_out, "Output directory (default: stdout)");
    cmd->add_option("--format", stats_format, "Output format: csv or json")->capture_default_str();
  }
  anova->add_option("--baseline", anova_baseline, "Baseline asset for pairwise tests");
  spearman->add_option("--metric", spearman_metric, "CSV with an asset column and one column per metric")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Write the deterministic synthetic 12-asset fixture dataset");
  std::size_t synth_rows = 16031;
  std::uint64_t synth_seed = 42;
  std::string synth_out;
  synth->add_option("--rows", synth_rows, "Number of observations")->capture_default_str();
  synth->add_option("--seed", synth_seed, "Seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output CSV path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*analyze) {
      RunConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw Error(Errc::io_error, "cannot open configuration '" + config_path + "'");
        std::stringstream text;
        text << in.rdbuf();
        config = config_from_json(text.str());
        if (input.empty()) {
          const auto manifest = nlohmann::json::parse(text.str(), nullptr, false);
          if (!manifest.is_discarded() && manifest.contains("input")) {
            input = manifest["input"].value("path", std::string{});
          }
        }
      } else {
        config.ordinal = OrdinalConfig(ordinal_flags.dim, ordinal_flags.tau);
        config.window = {window, step};
        config.assets = assets;
        config.log_returns = log_ret;
        config.forward_fill = ffill;
        config.seed = seed;
        if (!baseline.empty()) config.baseline = baseline;
        config.bound_resolution = resolution;
        config.fbm_hurst = hurst;
        config.fbm_sims = sims;
        config.fbm_length = fbm_length;
        if (!metric_path.empty()) config.metrics = read_metrics(metric_path);
        config.format = parse_format(format);
      }
      config.threads = threads;
      if (input.empty()) throw Error(Errc::invalid_argument, "--input is required");
      const auto data = load_dataset(input, {config.assets, config.forward_fill});
      const auto bundle = run_pipeline(config, data);
      for (const auto& w : bundle.warnings) err << "warning: " << w << '\n';
      if (data.fill_count() > 0) err << "forward-filled " << data.fill_count() << " cell(s)\n";
      write_bundle(bundle, out_dir, {input, file_digest(input), data.fills});
      return 0;
    }
    if (*bounds) {
      const OrdinalConfig ordinal(bounds_flags.dim, 1);
      const auto states = ordinal.pattern_count();
      const auto table = bounds_table(lower_bound_curve(states, bounds_resolution),
                                      upper_bound_curve(states, bounds_resolution), bounds_resolution);
      Sink(out, bounds_out, OutputFormat::csv, false).emit("bounds", table);
      return 0;
    }
    if (*fbm) {
      const OrdinalConfig ordinal(fbm_flags.dim, fbm_flags.tau);
      warn_undersampled(err, ordinal, fbm_len);
      std::vector<BaselineCloud> clouds;
      for (const double h : fbm_hurst) {
        clouds.push_back(baseline_cloud(h, fbm_sims, fbm_len, ordinal, fbm_seed, fbm_threads));
      }
      Sink(out, fbm_out, parse_format(fbm_format), false).emit("fbm_clouds", cloud_table(clouds));
      return 0;
    }
    if (*rank || *anova || *spearman) {
      const auto rolling = read_rolling(stats_input);
      std::vector<AssetSummary> summaries;
      for (const auto& r : rolling) summaries.push_back(summarize(r));
      const auto ranking = rank_assets(summaries);
      if (*rank) {
        Sink(out, stats_out, parse_format(stats_format), false).emit("ranking", ranking_table(ranking));
      } else if (*anova) {
        Sink sink(out, stats_out, parse_format(stats_format), true);
        sink.emit("anova_entropy", anova_table(all_asset_anova(rolling, Quantity::entropy)));
        sink.emit("anova_complexity", anova_table(all_asset_anova(rolling, Quantity::complexity)));
        if (!anova_baseline.empty()) {
          sink.emit("pairwise_anova", pairwise_table(pairwise_anova_vs_baseline(rolling, anova_baseline)));
        }
      } else {
        const auto results = spearman_against_metrics(ranking, read_metrics(spearman_metric));
        Sink(out, stats_out, parse_format(stats_format), false).emit("spearman", spearman_table(results));
      }
      return 0;
    }
    if (*synth) {
      write_dataset(synth_out, synthetic_dataset(default_synthetic_assets(), synth_rows, synth_seed));
      return 0;
    }
  } catch (const Error& e) {
    err << nlohmann::json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << nlohmann::json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace cecp
