#include "cecp/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>

#include "cecp/error.hpp"

namespace cecp {

namespace {

using nlohmann::json;

constexpr std::array kCaveats = {
    "Overlapping sliding windows make window-level observations serially dependent; ANOVA "
    "p-values assume independent observations and are reported as computed.",
    "Pairwise ANOVA against the baseline applies no multiple-comparison correction.",
};

std::string timestamp_text(const std::optional<std::int64_t>& ts, bool iso) {
  if (!ts) return {};
  return iso ? format_iso8601(*ts) : std::to_string(*ts);
}

std::string flag(bool b) { return b ? "1" : "0"; }

std::vector<double> pick(const RollingResult& r, Quantity q) {
  std::vector<double> out;
  out.reserve(r.points.size());
  for (const auto& p : r.points) out.push_back(q == Quantity::entropy ? p.entropy : p.complexity);
  return out;
}

json cell_to_json(const std::string& cell) {
  if (cell.empty()) return nullptr;
  try {
    return parse_double(cell);
  } catch (const Error&) {
    return cell;
  }
}

json table_to_json(const CsvTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t c = 0; c < table.header.size(); ++c) obj[table.header[c]] = cell_to_json(row[c]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

json config_json(const RunConfig& c) {
  json j;
  j["dim"] = c.ordinal.dim();
  j["delay"] = c.ordinal.delay();
  j["window"] = c.window.size;
  j["step"] = c.window.step;
  j["assets"] = c.assets;
  j["log_returns"] = c.log_returns;
  j["forward_fill"] = c.forward_fill;
  j["seed"] = c.seed;
  j["baseline"] = c.baseline ? json(*c.baseline) : json(nullptr);
  j["bound_resolution"] = c.bound_resolution;
  j["fbm"] = {{"hurst", c.fbm_hurst}, {"sims", c.fbm_sims}, {"length", c.fbm_length}};
  j["metrics"] = c.metrics;
  j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
  return j;
}

}  // namespace

void RunConfig::validate() const {
  window.validate(ordinal);
  if (bound_resolution < 2) throw Error(Errc::invalid_config, "bound resolution must be >= 2");
  for (const double h : fbm_hurst) {
    if (!(h > 0.0 && h < 1.0)) throw Error(Errc::invalid_config, "Hurst exponents must lie in (0, 1)");
  }
  if (!fbm_hurst.empty()) {
    if (fbm_sims < 1) throw Error(Errc::invalid_config, "fBm simulations must be >= 1");
    const std::size_t len = fbm_length == 0 ? window.size : fbm_length;
    if (ordinal.sample_count(len) == 0) throw Error(Errc::invalid_config, "fBm length too short for the ordinal configuration");
  }
  std::set<std::string> unique(assets.begin(), assets.end());
  if (unique.size() != assets.size()) throw Error(Errc::duplicate_label, "asset selection contains duplicates");
}

Outcome<AnovaResult> all_asset_anova(const std::vector<RollingResult>& rolling, Quantity quantity) {
  Outcome<AnovaResult> out;
  if (rolling.size() < 2) {
    out.status = "insufficient groups";
    return out;
  }
  std::vector<LabeledSample> groups;
  groups.reserve(rolling.size());
  for (const auto& r : rolling) groups.push_back({r.asset, pick(r, quantity)});
  try {
    out.result = one_way_anova(groups);
  } catch (const Error& e) {
    if (e.code() != Errc::insufficient_data) throw;
    out.status = e.what();
  }
  return out;
}

std::vector<SpearmanOutcome> spearman_against_metrics(
    const std::vector<RankingEntry>& ranking,
    const std::map<std::string, std::map<std::string, double>>& metrics) {
  std::vector<RankingEntry> by_asset = ranking;
  std::sort(by_asset.begin(), by_asset.end(),
            [](const RankingEntry& a, const RankingEntry& b) { return a.asset < b.asset; });
  std::vector<SpearmanOutcome> out;
  for (const auto& [metric, values] : metrics) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& entry : by_asset) {
      const auto it = values.find(entry.asset);
      if (it == values.end()) {
        throw Error(Errc::missing_label, "metric '" + metric + "' has no value for asset '" + entry.asset + "'");
      }
      x.push_back(entry.distance);
      y.push_back(it->second);
    }
    SpearmanOutcome s{metric, {}};
    try {
      s.outcome.result = spearman_rho(x, y);
    } catch (const Error& e) {
      if (e.code() != Errc::insufficient_data) throw;
      s.outcome.status = e.what();
    }
    out.push_back(std::move(s));
  }
  return out;
}

Bundle run_pipeline(const RunConfig& config, const Dataset& data) {
  config.validate();
  Bundle b;
  b.config = config;
  b.iso_timestamps = data.time_format == TimeFormat::iso8601;

  const auto assets = config.assets.empty() ? data.assets : config.assets;
  if (assets.empty()) throw Error(Errc::insufficient_data, "no assets selected");

  const std::size_t per_window = config.ordinal.sample_count(config.window.size);
  if (per_window < 5 * config.ordinal.pattern_count()) {
    b.warnings.push_back("undersampled histogram: " + std::to_string(per_window) +
                         " embedding vectors per window for " + std::to_string(config.ordinal.pattern_count()) +
                         " patterns (fewer than 5 per pattern)");
  }

  for (const auto& asset : assets) {
    const auto it = data.series.find(asset);
    if (it == data.series.end()) throw Error(Errc::missing_label, "asset '" + asset + "' not in dataset");
    try {
      const TimeSeries series = config.log_returns ? log_returns(it->second) : it->second;
      b.rolling.push_back(rolling_quantifiers(series, config.window, config.ordinal, asset, config.threads));
    } catch (const Error& e) {
      throw Error(e.code(), "asset '" + asset + "': " + e.what());
    }
  }
  for (const auto& r : b.rolling) b.summaries.push_back(summarize(r));
  b.ranking = rank_assets(b.summaries);
  b.anova_entropy = all_asset_anova(b.rolling, Quantity::entropy);
  b.anova_complexity = all_asset_anova(b.rolling, Quantity::complexity);
  if (config.baseline) b.pairwise = pairwise_anova_vs_baseline(b.rolling, *config.baseline);
  if (!config.metrics.empty()) b.spearman = spearman_against_metrics(b.ranking, config.metrics);

  const auto states = config.ordinal.pattern_count();
  b.lower = lower_bound_curve(states, config.bound_resolution);
  b.upper = upper_bound_curve(states, config.bound_resolution);

  const std::size_t fbm_length = config.fbm_length == 0 ? config.window.size : config.fbm_length;
  for (const double h : config.fbm_hurst) {
    b.clouds.push_back(baseline_cloud(h, config.fbm_sims, fbm_length, config.ordinal, config.seed, config.threads));
  }
  return b;
}

CsvTable summary_table(const std::vector<AssetSummary>& summaries) {
  CsvTable t;
  t.header = {"asset", "mean_entropy", "mean_complexity", "std_entropy", "std_complexity", "window_count"};
  for (const auto& s : summaries) {
    t.rows.push_back({s.asset, format_double(s.mean_entropy), format_double(s.mean_complexity),
                      format_double(s.std_entropy), format_double(s.std_complexity),
                      std::to_string(s.window_count)});
  }
  return t;
}

CsvTable ranking_table(const std::vector<RankingEntry>& ranking) {
  CsvTable t;
  t.header = {"position", "rank", "asset", "distance", "tied"};
  for (const auto& r : ranking) {
    t.rows.push_back({std::to_string(r.position), format_double(r.rank), r.asset, format_double(r.distance),
                      flag(r.tied)});
  }
  return t;
}

CsvTable anova_table(const Outcome<AnovaResult>& anova) {
  CsvTable t;
  t.header = {"source", "ss", "df", "ms", "f", "p_value", "status", "degenerate"};
  if (!anova.result) {
    t.rows.push_back({"", "", "", "", "", "", anova.status, ""});
    return t;
  }
  const auto& a = *anova.result;
  t.rows.push_back({"between", format_double(a.ss_between), std::to_string(a.df_between),
                    format_double(a.ms_between), format_double(a.f_stat), format_double(a.p_value),
                    anova.status, flag(a.degenerate)});
  t.rows.push_back({"within", format_double(a.ss_within), std::to_string(a.df_within),
                    format_double(a.ms_within), "", "", anova.status, flag(a.degenerate)});
  t.rows.push_back({"total", format_double(a.ss_total), std::to_string(a.df_total), "", "", "",
                    anova.status, flag(a.degenerate)});
  return t;
}

CsvTable pairwise_table(const std::vector<PairwiseComparison>& pairwise) {
  CsvTable t;
  t.header = {"asset", "quantity", "mean_difference", "ss_between", "ss_within", "df_between", "df_within",
              "f", "p_value", "significant_1pct", "significant_5pct"};
  for (const auto& c : pairwise) {
    t.rows.push_back({c.asset, std::string(to_string(c.quantity)), format_double(c.mean_difference),
                      format_double(c.anova.ss_between), format_double(c.anova.ss_within),
                      std::to_string(c.anova.df_between), std::to_string(c.anova.df_within),
                      format_double(c.anova.f_stat), format_double(c.anova.p_value),
                      flag(c.significant_1pct), flag(c.significant_5pct)});
  }
  return t;
}

CsvTable spearman_table(const std::vector<SpearmanOutcome>& spearman) {
  CsvTable t;
  t.header = {"metric", "rho", "p_value", "n", "status"};
  for (const auto& s : spearman) {
    if (s.outcome.result) {
      const auto& r = *s.outcome.result;
      t.rows.push_back({s.metric, format_double(r.rho), format_double(r.p_value), std::to_string(r.n),
                        s.outcome.status});
    } else {
      t.rows.push_back({s.metric, "", "", "", s.outcome.status});
    }
  }
  return t;
}

CsvTable bounds_table(const BoundCurve& lower, const BoundCurve& upper, std::size_t resolution) {
  CsvTable t;
  t.header = {"H", "C_lower", "C_upper"};
  for (std::size_t i = 0; i <= resolution; ++i) {
    const double h = static_cast<double>(i) / static_cast<double>(resolution);
    t.rows.push_back({format_double(h), format_double(lower.complexity_at(h)), format_double(upper.complexity_at(h))});
  }
  return t;
}

CsvTable cloud_table(const std::vector<BaselineCloud>& clouds) {
  CsvTable t;
  t.header = {"hurst", "mean_H", "mean_C", "std_H", "std_C", "sims"};
  for (const auto& c : clouds) {
    t.rows.push_back({format_double(c.hurst), format_double(c.mean_point.entropy),
                      format_double(c.mean_point.complexity), format_double(c.std_entropy),
                      format_double(c.std_complexity), std::to_string(c.sims)});
  }
  return t;
}

PlotKind parse_plot_kind(std::string_view name) {
  for (const auto k : {PlotKind::entropy_evolution, PlotKind::cecp_scatter, PlotKind::cecp_means,
                       PlotKind::anova_intervals}) {
    if (to_string(k) == name) return k;
  }
  throw Error(Errc::invalid_argument, "unknown plot kind '" + std::string(name) + "'");
}

std::string_view to_string(PlotKind kind) noexcept {
  switch (kind) {
    case PlotKind::entropy_evolution: return "entropy-evolution";
    case PlotKind::cecp_scatter: return "cecp-scatter";
    case PlotKind::cecp_means: return "cecp-means";
    case PlotKind::anova_intervals: return "anova-intervals";
  }
  return "unknown";
}

CsvTable plot_data(const Bundle& bundle, PlotKind kind) {
  CsvTable t;
  switch (kind) {
    case PlotKind::entropy_evolution:
      t.header = {"asset", "window_index", "end_timestamp", "H"};
      for (const auto& r : bundle.rolling) {
        for (std::size_t k = 0; k < r.points.size(); ++k) {
          t.rows.push_back({r.asset, std::to_string(k), timestamp_text(r.end_timestamps[k], bundle.iso_timestamps),
                            format_double(r.points[k].entropy)});
        }
      }
      break;
    case PlotKind::cecp_scatter:
      t.header = {"asset", "window_index", "H", "C"};
      for (const auto& r : bundle.rolling) {
        for (std::size_t k = 0; k < r.points.size(); ++k) {
          t.rows.push_back({r.asset, std::to_string(k), format_double(r.points[k].entropy),
                            format_double(r.points[k].complexity)});
        }
      }
      break;
    case PlotKind::cecp_means:
      t.header = {"asset", "mean_H", "mean_C", "std_H", "std_C"};
      for (const auto& s : bundle.summaries) {
        t.rows.push_back({s.asset, format_double(s.mean_entropy), format_double(s.mean_complexity),
                          format_double(s.std_entropy), format_double(s.std_complexity)});
      }
      break;
    case PlotKind::anova_intervals:
      if (!bundle.config.baseline) {
        throw Error(Errc::insufficient_data, "anova-intervals needs pairwise ANOVA results (set a baseline)");
      }
      t.header = {"asset", "baseline", "quantity", "mean_difference", "f", "p_value", "significant_1pct",
                  "significant_5pct"};
      for (const auto& c : bundle.pairwise) {
        t.rows.push_back({c.asset, *bundle.config.baseline, std::string(to_string(c.quantity)),
                          format_double(c.mean_difference), format_double(c.anova.f_stat),
                          format_double(c.anova.p_value), flag(c.significant_1pct), flag(c.significant_5pct)});
      }
      break;
  }
  return t;
}

std::string table_to_json_text(const CsvTable& table) { return table_to_json(table).dump(2) + "\n"; }

std::filesystem::path write_table(const std::filesystem::path& dir, std::string_view stem,
                                  const CsvTable& table, OutputFormat format) {
  std::filesystem::create_directories(dir);
  if (format == OutputFormat::csv) {
    const auto path = dir / (std::string(stem) + ".csv");
    write_csv(path, table);
    return path;
  }
  const auto path = dir / (std::string(stem) + ".json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
  out << table_to_json_text(table);
  return path;
}

void write_bundle(const Bundle& bundle, const std::filesystem::path& dir, const ManifestInfo& info) {
  const auto fmt = bundle.config.format;
  std::vector<std::string> outputs;
  const auto emit = [&](std::string_view stem, const CsvTable& table) {
    outputs.push_back(write_table(dir, stem, table, fmt).filename().string());
  };
  emit("rolling", rolling_table(bundle.rolling, bundle.iso_timestamps));
  emit("summary", summary_table(bundle.summaries));
  emit("ranking", ranking_table(bundle.ranking));
  emit("anova_entropy", anova_table(bundle.anova_entropy));
  emit("anova_complexity", anova_table(bundle.anova_complexity));
  if (bundle.config.baseline) emit("pairwise_anova", pairwise_table(bundle.pairwise));
  if (!bundle.spearman.empty()) emit("spearman", spearman_table(bundle.spearman));
  emit("bounds", bounds_table(bundle.lower, bundle.upper, bundle.config.bound_resolution));
  if (!bundle.clouds.empty()) emit("fbm_clouds", cloud_table(bundle.clouds));
  for (const auto kind : {PlotKind::entropy_evolution, PlotKind::cecp_scatter, PlotKind::cecp_means,
                          PlotKind::anova_intervals}) {
    if (kind == PlotKind::anova_intervals && !bundle.config.baseline) continue;
    std::string stem = "plot_" + std::string(to_string(kind));
    std::replace(stem.begin(), stem.end(), '-', '_');
    emit(stem, plot_data(bundle, kind));
  }

  json manifest;
  manifest["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  manifest["input"] = {{"path", info.input_path}, {"sha256", info.input_digest}};
  manifest["input"]["forward_fills"] = info.forward_fills;
  manifest["config"] = config_json(bundle.config);
  manifest["outputs"] = outputs;
  manifest["caveats"] = kCaveats;
  manifest["warnings"] = bundle.warnings;
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write manifest");
  out << manifest.dump(2) << '\n';
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::io_error, "SHA-256 initialisation failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4U];
    hex += kHex[md[i] & 0xFU];
  }
  return hex;
}

std::string config_to_json(const RunConfig& config) { return config_json(config).dump(2); }

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("invalid configuration JSON: ") + e.what());
  }
  if (j.contains("config")) j = j["config"];
  try {
    RunConfig c;
    c.ordinal = OrdinalConfig(j.value("dim", 4), j.value("delay", 1));
    c.window = {j.value<std::size_t>("window", 360), j.value<std::size_t>("step", 60)};
    c.assets = j.value("assets", std::vector<std::string>{});
    c.log_returns = j.value("log_returns", false);
    c.forward_fill = j.value("forward_fill", false);
    c.seed = j.value<std::uint64_t>("seed", 42);
    if (j.contains("baseline") && !j["baseline"].is_null()) c.baseline = j["baseline"].get<std::string>();
    c.bound_resolution = j.value<std::size_t>("bound_resolution", 2000);
    if (j.contains("fbm")) {
      const auto& f = j["fbm"];
      c.fbm_hurst = f.value("hurst", std::vector<double>{});
      c.fbm_sims = f.value<std::size_t>("sims", 500);
      c.fbm_length = f.value<std::size_t>("length", 0);
    }
    c.metrics = j.value("metrics", std::map<std::string, std::map<std::string, double>>{});
    c.format = j.value("format", std::string("csv")) == "json" ? OutputFormat::json : OutputFormat::csv;
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("invalid configuration: ") + e.what());
  }
}

}  // namespace cecp
