// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cecp/bounds.hpp"
#include "cecp/cli.hpp"
#include "cecp/fbm.hpp"
#include "cecp/ordinal.hpp"
#include "cecp/quantifiers.hpp"
#include "cecp/rolling.hpp"
#include "cecp/special.hpp"
#include "cecp/stats.hpp"
#include "support/oracles.hpp"

using namespace cecp;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<std::string(Check&)>& body) {
  Check check;
  const auto t0 = std::chrono::steady_clock::now();
  std::string summary;
  try {
    summary = body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream time;
  time.precision(2);
  time << std::fixed << secs;
  check.require(secs < budget_s, "runtime " + time.str() + " s over budget");
  if (!check.ok) ++failures;
  std::cout << (check.ok ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << time.str() << " s) "
            << summary;
  if (!check.ok) std::cout << " -- " << check.detail.str();
  std::cout << std::endl;
}

std::string sci(double x) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << x;
  return s.str();
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << x;
  return s.str();
}

// Reference efficiency table: asset, distance, ranking position, market cap
// and daily volume (USD millions).
struct ReferenceRow {
  const char* asset;
  double distance;
  int position;
  double cap;
  double volume;
};

const ReferenceRow kTable[] = {
    {"BCH", 0.1477, 7, 22931, 678},  {"BTC", 0.1409, 3, 165007, 9128}, {"DASH", 0.1306, 2, 5355, 151},
    {"ETC", 0.1688, 12, 3384, 765},  {"ETH", 0.1660, 11, 90727, 3143}, {"IOT", 0.1480, 8, 5698, 68},
    {"LTC", 0.1438, 6, 12580, 2731}, {"NEO", 0.1481, 9, 7913, 265},    {"XEM", 0.1244, 1, 5049, 79},
    {"XMR", 0.1431, 5, 4356, 123},   {"XRP", 0.1431, 4, 44039, 1702},  {"ZEC", 0.1482, 10, 1566, 104},
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

}  // namespace

int main() {
  criterion(1, "Spearman rho of efficiency distance vs size", 1.0, [](Check& c) {
    std::vector<double> d;
    std::vector<double> cap;
    std::vector<double> vol;
    for (const auto& row : kTable) {
      d.push_back(row.distance);
      cap.push_back(row.cap);
      vol.push_back(row.volume);
    }
    const auto rc = spearman_rho(d, cap);
    const auto rv = spearman_rho(d, vol);
    c.require(std::fabs(rc.rho - 0.1748) <= 1e-3, "cap rho " + fmt(rc.rho) + " vs 0.1748");
    c.require(std::fabs(rc.p_value - 0.5868) <= 5e-3, "cap p " + fmt(rc.p_value) + " vs 0.5868");
    c.require(std::fabs(rv.rho - 0.1225) <= 1e-3, "volume rho " + fmt(rv.rho) + " vs 0.1225");
    c.require(std::fabs(rv.p_value - 0.7042) <= 5e-3, "volume p " + fmt(rv.p_value) + " vs 0.7042");
    return "cap rho=" + fmt(rc.rho) + " p=" + fmt(rc.p_value) + ", volume rho=" + fmt(rv.rho) +
           " p=" + fmt(rv.p_value);
  });

  criterion(2, "efficiency ranking order", 1.0, [](Check& c) {
    std::vector<LabeledDistance> in;
    std::map<std::string, int> expected;
    for (const auto& row : kTable) {
      in.push_back({row.asset, row.distance});
      expected[row.asset] = row.position;
    }
    const auto ranking = rank_assets(in);
    std::string order;
    for (const auto& e : ranking) {
      order += e.asset + (e.tied ? "*" : "") + " ";
      const int want = expected.at(e.asset);
      if (e.tied) {
        // Equal reference distances: the average rank must equal the mean of
        // the reference positions of the tied group.
        double mean = 0.0;
        int n = 0;
        for (const auto& other : ranking) {
          if (other.distance == e.distance) {
            mean += expected.at(other.asset);
            ++n;
          }
        }
        c.require(e.rank == mean / n, e.asset + " tied rank " + fmt(e.rank, 1));
        c.require(std::fabs(static_cast<double>(e.position) - e.rank) < n, e.asset + " outside tie block");
      } else {
        c.require(e.rank == want && static_cast<int>(e.position) == want,
                  e.asset + " rank " + fmt(e.rank, 1) + " vs " + std::to_string(want));
      }
    }
    return "order " + order + "(* = tied)";
  });

  criterion(3, "fast pattern counting equals naive oracle", 30.0, [](Check& c) {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> len(50, 2000);
    std::size_t series = 0;
    std::size_t compared = 0;
    for (int trial = 0; trial < 120; ++trial) {
      const TimeSeries s(oracle::random_series(rng, len(rng), trial % 3 != 0));
      ++series;
      for (int dim : {3, 4, 5}) {
        for (int tau : {1, 2, 3}) {
          const OrdinalConfig cfg(dim, tau);
          if (cfg.sample_count(s.size()) == 0) continue;
          ++compared;
          c.require(extract_pattern_distribution(s, cfg) == oracle::naive_pattern_oracle(s, cfg),
                    "mismatch at trial " + std::to_string(trial));
        }
      }
    }
    return std::to_string(series) + " series, " + std::to_string(compared) + " histograms compared";
  });

  criterion(4, "quantifier limits", 10.0, [](Check& c) {
    std::vector<double> up(5000);
    for (std::size_t i = 0; i < up.size(); ++i) up[i] = std::log1p(static_cast<double>(i));
    const auto mono = cecp_point(TimeSeries(up), OrdinalConfig(4, 1));
    c.require(mono.entropy == 0.0 && mono.complexity == 0.0, "monotone series not at (0, 0)");
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u;
    std::vector<double> noise(100000);
    for (auto& x : noise) x = u(rng);
    const auto p = cecp_point(TimeSeries(noise), OrdinalConfig(4, 1));
    c.require(p.entropy >= 0.995, "noise H " + fmt(p.entropy));
    c.require(p.complexity <= 0.01, "noise C " + fmt(p.complexity));
    return "monotone (" + fmt(mono.entropy) + ", " + fmt(mono.complexity) + "), noise (" + fmt(p.entropy) +
           ", " + fmt(p.complexity) + ")";
  });

  criterion(5, "pattern distributions invariant under monotone maps", 10.0, [](Check& c) {
    const std::vector<std::pair<std::string, std::function<double(double)>>> maps = {
        {"affine", [](double x) { return 3.0 * x - 7.0; }},
        {"exponential", [](double x) { return std::exp(x); }},
        {"cubic", [](double x) { return x * x * x + x; }},
        {"logistic", [](double x) { return 1.0 / (1.0 + std::exp(-x)); }},
        {"piecewise", [](double x) { return x < 0.0 ? 0.5 * x : 2.0 * x; }},
    };
    std::mt19937_64 rng(55);
    std::size_t checks = 0;
    for (int i = 0; i < 20; ++i) {
      const auto v = oracle::random_series(rng, 1500, i % 2 == 1);
      for (const auto& [name, f] : maps) {
        std::vector<double> w(v.size());
        std::transform(v.begin(), v.end(), w.begin(), f);
        for (int dim : {3, 4, 5}) {
          const OrdinalConfig cfg(dim, 1 + i % 3);
          ++checks;
          c.require(extract_pattern_distribution(TimeSeries(v), cfg) ==
                        extract_pattern_distribution(TimeSeries(w), cfg),
                    name + " changed series " + std::to_string(i));
        }
      }
    }
    return std::to_string(checks) + " comparisons";
  });

  criterion(6, "bounds contain random simplex points", 60.0, [](Check& c) {
    const auto lower = lower_bound_curve(24, 2000);
    const auto upper = upper_bound_curve(24, 2000);
    for (const auto* curve : {&lower, &upper}) {
      const auto& f = curve->points.front();
      const auto& b = curve->points.back();
      c.require(std::fabs(f.entropy) <= 1e-9 && std::fabs(f.complexity) <= 1e-9, "curve does not start at (0,0)");
      c.require(std::fabs(b.entropy - 1.0) <= 1e-9 && std::fabs(b.complexity) <= 1e-9, "curve does not end at (1,0)");
    }
    std::mt19937_64 rng(66);
    std::size_t outside = 0;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double alpha = std::array{1.0, 0.3, 0.05, 3.0}[static_cast<std::size_t>(i % 4)];
      const auto p = cecp_point(ProbabilityVector(oracle::random_simplex(rng, 24, alpha)));
      const double below = lower.complexity_at(p.entropy) - p.complexity;
      const double above = p.complexity - upper.complexity_at(p.entropy);
      worst = std::max({worst, below, above});
      if (below > 1e-9 || above > 1e-9) ++outside;
    }
    c.require(outside == 0, std::to_string(outside) + " points outside");
    return "10000 points, worst excursion " + sci(worst);
  });

  criterion(7, "fBm baseline ordering and fGn autocovariance", 300.0, [](Check& c) {
    const OrdinalConfig cfg(4, 1);
    std::string summary;
    double prev_h = 2.0;
    double prev_c = -1.0;
    for (double h : {0.5, 0.6, 0.7, 0.8, 0.9}) {
      const auto cloud = baseline_cloud(h, 500, 360, cfg, 42);
      c.require(cloud.mean_point.entropy < prev_h, "entropy not decreasing at H=" + fmt(h, 1));
      c.require(cloud.mean_point.complexity > prev_c, "complexity not increasing at H=" + fmt(h, 1));
      prev_h = cloud.mean_point.entropy;
      prev_c = cloud.mean_point.complexity;
      summary += "H" + fmt(h, 1) + ":(" + fmt(cloud.mean_point.entropy) + "," + fmt(cloud.mean_point.complexity) + ") ";
    }
    // 100 independent paths of 10^4 samples; the per-path lag products give
    // the standard error of the pooled estimate.
    double worst_z = 0.0;
    for (double h : {0.5, 0.6, 0.7, 0.8, 0.9}) {
      const FgnGenerator gen(h, 10000);
      std::vector<std::vector<double>> est(6);
      for (std::uint64_t r = 0; r < 100; ++r) {
        const auto x = gen.sample(4242, r);
        for (std::size_t k = 0; k <= 5; ++k) {
          double s = 0.0;
          for (std::size_t t = 0; t + k < x.size(); ++t) s += x[t] * x[t + k];
          est[k].push_back(s / static_cast<double>(x.size() - k));
        }
      }
      for (std::size_t k = 0; k <= 5; ++k) {
        double m = 0.0;
        for (double e : est[k]) m += e;
        m /= 100.0;
        double ss = 0.0;
        for (double e : est[k]) ss += (e - m) * (e - m);
        const double se = std::sqrt(ss / 99.0) / 10.0;
        const double z = std::fabs(m - fgn_autocovariance(h, k)) / se;
        worst_z = std::max(worst_z, z);
        c.require(z <= 3.0, "autocovariance H=" + fmt(h, 1) + " lag " + std::to_string(k) + " off by " + fmt(z, 2) + " SE");
      }
    }
    return summary + "| worst autocovariance deviation " + fmt(worst_z, 2) + " SE";
  });

  criterion(8, "ANOVA correctness and calibration", 120.0, [](Check& c) {
    const std::vector<LabeledSample> hand = {{"a", {1, 2, 3}}, {"b", {2, 3, 4}}};
    const auto r = one_way_anova(hand);
    c.require(std::fabs(r.f_stat - 1.5) <= 1e-12 && std::fabs(r.ss_between - 1.5) <= 1e-12 &&
                  std::fabs(r.ss_within - 4.0) <= 1e-12 && r.df_between == 1 && r.df_within == 4,
              "hand example");

    std::mt19937_64 rng(88);
    std::normal_distribution<double> n;
    double worst_ss = 0.0;
    for (int t = 0; t < 100; ++t) {
      std::vector<LabeledSample> g(2 + static_cast<std::size_t>(t % 9));
      for (std::size_t i = 0; i < g.size(); ++i) {
        g[i].label = std::to_string(i);
        const std::size_t size = 2 + (static_cast<std::size_t>(t) * 7 + i * 13) % 50;
        const double mu = 10.0 * n(rng);
        for (std::size_t k = 0; k < size; ++k) g[i].values.push_back(mu + n(rng));
      }
      const auto a = one_way_anova(g);
      worst_ss = std::max(worst_ss, std::fabs(a.ss_between + a.ss_within - a.ss_total) / a.ss_total);
    }
    c.require(worst_ss <= 1e-9, "SS identity off by " + sci(worst_ss));

    using Wide = boost::multiprecision::cpp_bin_float_50;
    double worst_cdf = 0.0;
    const double probes[20][3] = {
        {0.05, 1, 4}, {0.5, 1, 4},   {1.5, 1, 4},     {7.7, 1, 4},     {0.2, 2, 10},
        {1.0, 2, 10}, {4.1, 2, 10},  {12.0, 3, 30},   {0.9, 5, 5},     {2.5, 5, 50},
        {1.2, 11, 3132}, {1.8, 11, 3132}, {3.0, 11, 3132}, {0.7, 1, 522}, {3.86, 1, 522},
        {6.7, 1, 522}, {0.01, 20, 20}, {2.0, 20, 200}, {1.05, 100, 100}, {25.0, 4, 8},
    };
    for (const auto& p : probes) {
      const Wide x = Wide(p[1]) * Wide(p[0]) / (Wide(p[1]) * Wide(p[0]) + Wide(p[2]));
      const double want = static_cast<double>(boost::math::ibeta(Wide(p[1]) / 2, Wide(p[2]) / 2, x));
      worst_cdf = std::max(worst_cdf, std::fabs(f_cdf(p[0], p[1], p[2]) - want));
    }
    c.require(worst_cdf <= 1e-8, "F-CDF off by " + sci(worst_cdf));

    // Two independent noise assets, 262 non-overlapping windows each.
    const WindowParams w{360, 360};
    const OrdinalConfig cfg(4, 1);
    int rejections_h = 0;
    int rejections_c = 0;
    const int trials = 500;
    std::mt19937_64 noise(99);
    for (int t = 0; t < trials; ++t) {
      std::vector<RollingResult> assets;
      for (const char* label : {"A", "B"}) {
        std::vector<double> v(262 * 360);
        for (auto& x : v) x = n(noise);
        assets.push_back(rolling_quantifiers(TimeSeries(std::move(v)), w, cfg, label, 1));
      }
      for (const auto& cmp : pairwise_anova_vs_baseline(assets, "A")) {
        if (!cmp.significant_5pct) continue;
        (cmp.quantity == Quantity::entropy ? rejections_h : rejections_c)++;
      }
    }
    const double rate_h = static_cast<double>(rejections_h) / trials;
    const double rate_c = static_cast<double>(rejections_c) / trials;
    c.require(rate_h >= 0.02 && rate_h <= 0.08, "entropy false-positive rate " + fmt(rate_h, 3));
    c.require(rate_c >= 0.02 && rate_c <= 0.08, "complexity false-positive rate " + fmt(rate_c, 3));
    return "F=" + fmt(r.f_stat, 6) + ", SS identity " + sci(worst_ss) + ", F-CDF " + sci(worst_cdf) + ", false positives H " + fmt(rate_h, 3) + " C " + fmt(rate_c, 3);
  });

  criterion(9, "end-to-end determinism", 300.0, [](Check& c) {
    const fs::path base = fs::temp_directory_path() / "cecp_acceptance_e2e";
    fs::remove_all(base);
    // Both passes run in the same working directory (the manifest records
    // input paths) and are then moved aside for comparison.
    for (const char* tag : {"first", "second"}) {
      const fs::path dir = base / "work";
      fs::create_directories(dir);
      const auto data = (dir / "prices.csv").string();
      c.require(run({"synth", "--rows", "16031", "--seed", "42", "--out", data}) == 0, "synth failed");
      c.require(run({"analyze", "--input", data, "--dim", "4", "--tau", "1", "--window", "360", "--step", "60",
                     "--baseline", "BTC", "--seed", "42", "--out", (dir / "analysis").string()}) == 0,
                "analyze failed");
      c.require(run({"fbm", "--hurst", "0.5,0.6,0.7,0.8,0.9", "--sims", "500", "--length", "360", "--seed", "42",
                     "--out", (dir / "fbm").string()}) == 0,
                "fbm failed");
      const auto rolling = (dir / "analysis" / "rolling.csv").string();
      c.require(run({"rank", "--input", rolling, "--out", (dir / "rank").string()}) == 0, "rank failed");
      c.require(run({"anova", "--input", rolling, "--baseline", "BTC", "--out", (dir / "anova").string()}) == 0,
                "anova failed");
      fs::rename(dir, base / tag);
    }
    std::size_t files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(base / "first")) {
      if (!entry.is_regular_file()) continue;
      ++files;
      const auto rel = fs::relative(entry.path(), base / "first");
      const auto other = base / "second" / rel;
      c.require(fs::exists(other) && slurp(entry.path()) == slurp(other), rel.string() + " differs");
    }
    std::size_t second_files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(base / "second")) {
      if (entry.is_regular_file()) ++second_files;
    }
    c.require(files == second_files, "file sets differ");
    std::size_t windows = 0;
    {
      std::ifstream in(base / "first" / "analysis" / "rolling.csv");
      std::string line;
      std::getline(in, line);
      while (std::getline(in, line)) {
        if (line.rfind("BTC,", 0) == 0) ++windows;
      }
    }
    c.require(windows == 262, std::to_string(windows) + " BTC windows");
    fs::remove_all(base);
    return std::to_string(files) + " files byte-identical, " + std::to_string(windows) + " windows per asset";
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
