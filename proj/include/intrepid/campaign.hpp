// SPDX-License-Identifier: Apache-2.0
//! \file campaign.hpp  Experiment harness: config parsing, seeded multi-chain
//! campaigns over (beta, length) sweeps, CSV/manifest output, quantile
//! summaries.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "intrepid/oracle.hpp"

namespace intrepid {

inline constexpr const char* version_string = "0.1.0";

struct CampaignConfig {
  std::string target_name = "gauss-planes";
  std::vector<double> betas{0.0, 0.1};
  std::size_t chain_count = 20;
  std::vector<std::size_t> chain_lengths{100000};
  std::size_t burn_in = 10000;

  std::string angular_kind = "uniform";  // or "truncated-normal"
  std::vector<double> angular_sigmas;    // optional; defaults pi/2.., last pi
  std::string radial_kind = "uniform";   // or "power-law"
  double gamma0 = 2.0;
  double radial_k = 0.0;
  double cmh_sigma = 1.0;

  std::optional<Point> anchor_override;
  std::optional<Point> start_override;  // fixed x0 for every chain
  std::uint64_t master_seed = 1;
  std::string output_dir = "campaign_out";

  std::string reference_path;         // load when set...
  std::size_t reference_n = 100000;   // ...generate otherwise
  std::uint64_t reference_seed = 7;

  std::size_t workers = 0;  // 0 = hardware concurrency
  std::size_t tvd_bins = 100;
};

// ---------------------------------------------------------------------------
// Config <-> JSON
// ---------------------------------------------------------------------------

inline nlohmann::json config_to_json(const CampaignConfig& c) {
  nlohmann::json j{{"target", c.target_name},
                   {"betas", c.betas},
                   {"chains", c.chain_count},
                   {"lengths", c.chain_lengths},
                   {"burn_in", c.burn_in},
                   {"seed", c.master_seed},
                   {"output_dir", c.output_dir},
                   {"workers", c.workers},
                   {"tvd_bins", c.tvd_bins}};
  nlohmann::json p{{"angular_kind", c.angular_kind},
                   {"radial_kind", c.radial_kind},
                   {"gamma0", c.gamma0},
                   {"radial_k", c.radial_k},
                   {"cmh_sigma", c.cmh_sigma}};
  if (!c.angular_sigmas.empty()) p["angular_sigmas"] = c.angular_sigmas;
  j["proposals"] = p;
  if (c.anchor_override) j["anchor"] = *c.anchor_override;
  if (c.start_override) j["start"] = *c.start_override;
  if (!c.reference_path.empty())
    j["reference"] = nlohmann::json{{"path", c.reference_path}};
  else
    j["reference"] =
        nlohmann::json{{"n", c.reference_n}, {"seed", c.reference_seed}};
  return j;
}

inline CampaignConfig config_from_json(const nlohmann::json& j) {
  CampaignConfig c;
  try {
    c.target_name = j.at("target").get<std::string>();
    if (j.contains("betas")) c.betas = j.at("betas").get<std::vector<double>>();
    if (j.contains("chains")) c.chain_count = j.at("chains").get<std::size_t>();
    if (j.contains("lengths"))
      c.chain_lengths = j.at("lengths").get<std::vector<std::size_t>>();
    if (j.contains("burn_in")) c.burn_in = j.at("burn_in").get<std::size_t>();
    if (j.contains("seed")) c.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir"))
      c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("workers")) c.workers = j.at("workers").get<std::size_t>();
    if (j.contains("tvd_bins"))
      c.tvd_bins = j.at("tvd_bins").get<std::size_t>();
    if (j.contains("proposals")) {
      const auto& p = j.at("proposals");
      if (p.contains("angular_kind"))
        c.angular_kind = p.at("angular_kind").get<std::string>();
      if (p.contains("angular_sigmas"))
        c.angular_sigmas = p.at("angular_sigmas").get<std::vector<double>>();
      if (p.contains("radial_kind"))
        c.radial_kind = p.at("radial_kind").get<std::string>();
      if (p.contains("gamma0")) c.gamma0 = p.at("gamma0").get<double>();
      if (p.contains("radial_k")) c.radial_k = p.at("radial_k").get<double>();
      if (p.contains("cmh_sigma"))
        c.cmh_sigma = p.at("cmh_sigma").get<double>();
    }
    if (j.contains("anchor")) c.anchor_override = j.at("anchor").get<Point>();
    if (j.contains("start")) c.start_override = j.at("start").get<Point>();
    if (j.contains("reference")) {
      const auto& r = j.at("reference");
      if (r.contains("path")) c.reference_path = r.at("path").get<std::string>();
      if (r.contains("n")) c.reference_n = r.at("n").get<std::size_t>();
      if (r.contains("seed"))
        c.reference_seed = r.at("seed").get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  return c;
}

inline CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  // a manifest can be re-run directly; its config sits under "config"
  if (j.contains("config") && j.at("config").is_object())
    return config_from_json(j.at("config"));
  return config_from_json(j);
}

inline void validate_config(const CampaignConfig& c) {
  if (c.chain_count < 1) throw ConfigError("chains: must be >= 1");
  if (c.chain_lengths.empty()) throw ConfigError("lengths: must be nonempty");
  for (std::size_t l : c.chain_lengths)
    if (l == 0) throw ConfigError("lengths: entries must be positive");
  if (c.betas.empty()) throw ConfigError("betas: must be nonempty");
  for (double b : c.betas)
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("betas: entries in [0,1]");
  if (c.angular_kind != "uniform" && c.angular_kind != "truncated-normal")
    throw ConfigError("proposals.angular_kind: unknown kind " +
                      c.angular_kind);
  if (c.radial_kind != "uniform" && c.radial_kind != "power-law")
    throw ConfigError("proposals.radial_kind: unknown kind " + c.radial_kind);
  if (!(c.gamma0 > 1.0)) throw ConfigError("proposals.gamma0: must exceed 1");
  if (!(c.cmh_sigma > 0.0))
    throw ConfigError("proposals.cmh_sigma: must be positive");
  if (c.tvd_bins < 2) throw ConfigError("tvd_bins: must be >= 2");
  target_by_name(c.target_name);  // throws on unknown targets
}

/// Output directory, honoring the INTREPID_OUTPUT_DIR environment override.
inline std::string resolve_output_dir(const CampaignConfig& c) {
  if (const char* env = std::getenv("INTREPID_OUTPUT_DIR"); env && *env)
    return env;
  return c.output_dir;
}

// ---------------------------------------------------------------------------
// Campaign execution
// ---------------------------------------------------------------------------

struct ChainRow {
  std::string target;
  double beta = 0.0;
  std::size_t chain_id = 0;
  std::size_t length = 0;
  DiagnosticsReport report;
  double wall_seconds = 0.0;
  bool failed = false;
  std::string error;
};

struct CampaignResult {
  std::vector<ChainRow> rows;
  std::string csv_path;
  std::string manifest_path;
};

inline KernelConfig kernel_config_from(const CampaignConfig& c,
                                       const ParentModel& parent,
                                       double beta) {
  const std::size_t d = parent.dimension();
  const RadialProposal radial =
      c.radial_kind == "uniform"
          ? RadialProposal::uniform_symmetric(c.gamma0)
          : RadialProposal::power_law(c.gamma0, c.radial_k);
  const AngularKind ak = c.angular_kind == "uniform"
                             ? AngularKind::uniform
                             : AngularKind::truncated_normal;
  Point anchor = c.anchor_override ? *c.anchor_override : parent.anchor();
  KernelConfig cfg = make_kernel_config(d, std::move(anchor), beta, ak, radial,
                                        c.cmh_sigma);
  if (!c.angular_sigmas.empty()) {
    if (c.angular_sigmas.size() != d - 1)
      throw ConfigError("proposals.angular_sigmas: need d-1 entries");
    cfg.angular.clear();
    for (std::size_t j = 0; j + 1 < d; ++j) {
      const double range = (j + 2 == d) ? 2.0 * pi : pi;
      cfg.angular.push_back(
          ak == AngularKind::uniform
              ? AngularProposal::uniform_range(range)
              : AngularProposal::truncated_normal(c.angular_sigmas[j], range));
    }
    cfg.angular_symmetric = true;
    for (const auto& q : cfg.angular)
      cfg.angular_symmetric =
          cfg.angular_symmetric && verify_angular_symmetry(q);
  }
  return cfg;
}

inline std::string csv_header() {
  return "target,beta,chain_id,length,tvd,mean_error,cov_error,"
         "acceptance_total,acceptance_intrepid,acceptance_local,target_evals,"
         "wall_time";
}

inline std::string csv_row(const ChainRow& r) {
  std::ostringstream os;
  os << r.target << ',' << format_metric(r.beta) << ',' << r.chain_id << ','
     << r.length << ',' << format_metric(r.report.tvd) << ','
     << format_metric(r.report.mean_error) << ','
     << format_metric(r.report.cov_error) << ','
     << format_metric(r.report.acceptance_total) << ','
     << format_metric(r.report.acceptance_intrepid) << ','
     << format_metric(r.report.acceptance_local) << ','
     << r.report.target_evals << ',' << format_metric(r.wall_seconds);
  return os.str();
}

inline CampaignResult run_campaign(const CampaignConfig& cfg) {
  validate_config(cfg);
  const std::string out_dir = resolve_output_dir(cfg);
  std::filesystem::create_directories(out_dir);

  const TargetModel target = target_by_name(cfg.target_name);
  const std::size_t d = target.dimension();

  // reference set: load or generate-and-persist (generation is deterministic
  // in (target, n, seed), so a manifest re-run reproduces it bit-exactly)
  ReferenceSet reference;
  if (!cfg.reference_path.empty()) {
    reference = load_reference(cfg.reference_path);
  } else {
    reference = make_reference(target, cfg.reference_n, cfg.reference_seed);
    save_reference(reference, out_dir + "/reference.bin");
  }
  const ReferenceMoments moments = reference_moments(reference);

  std::vector<BinnedDistribution> reference_bins;
  for (auto [a, b] : tvd_dimension_pairs(d))
    reference_bins.push_back(bin_samples(
        make_reference_grid(reference.samples, a, b, cfg.tvd_bins),
        reference.samples));

  struct Job {
    std::size_t beta_idx, length_idx, chain_idx;
  };
  std::vector<Job> jobs;
  for (std::size_t b = 0; b < cfg.betas.size(); ++b)
    for (std::size_t l = 0; l < cfg.chain_lengths.size(); ++l)
      for (std::size_t ci = 0; ci < cfg.chain_count; ++ci)
        jobs.push_back({b, l, ci});

  std::vector<ChainRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= jobs.size()) return;
      const Job job = jobs[idx];
      ChainRow& row = rows[idx];
      row.target = cfg.target_name;
      row.beta = cfg.betas[job.beta_idx];
      row.chain_id = job.chain_idx;
      row.length = cfg.chain_lengths[job.length_idx];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        // chain seeds are pure functions of (master seed, beta index,
        // chain index, length index)
        RandomStream rng(derive_seed(
            cfg.master_seed, {job.beta_idx, job.chain_idx, job.length_idx}));
        const TargetModel chain_target = target.fork();
        const KernelConfig kcfg =
            kernel_config_from(cfg, chain_target.parent(), row.beta);
        Point x0 = cfg.start_override
                       ? *cfg.start_override
                       : reference.samples[std::size_t(
                             rng.uniform() * double(reference.samples.size()))];
        const ChainRecord rec =
            run_chain(kcfg, chain_target.parent(), chain_target, x0,
                      row.length, cfg.burn_in, rng);

        DiagnosticsReport rep;
        double worst = 0.0;
        for (const auto& rb : reference_bins)
          worst = std::max(worst, tvd(bin_samples(rb.grid, rec.states), rb));
        rep.tvd = worst;
        MomentAccumulator acc(d);
        for (const Point& x : rec.states) acc.add(x);
        rep.mean_error = mean_error(acc.mean(), moments.mean,
                                    moments.covariance);
        rep.cov_error =
            cov_error_from_matrix(acc.covariance(), moments.covariance);
        rep.acceptance_total = rec.acceptance_overall();
        rep.acceptance_intrepid = rec.acceptance_intrepid();
        rep.acceptance_local = rec.acceptance_local();
        rep.target_evals = rec.target_evals;
        row.report = rep;
      } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
      }
      row.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(
      1, cfg.workers ? cfg.workers : std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w + 1 < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CampaignResult result;
  result.rows = std::move(rows);
  result.csv_path = out_dir + "/results.csv";
  result.manifest_path = out_dir + "/manifest.json";

  std::ofstream csv(result.csv_path);
  csv << csv_header() << "\n";
  nlohmann::json failures = nlohmann::json::array();
  for (const ChainRow& r : result.rows) {
    if (r.failed) {
      failures.push_back({{"target", r.target},
                          {"beta", r.beta},
                          {"chain_id", r.chain_id},
                          {"length", r.length},
                          {"error", r.error}});
      continue;  // failed chains are recorded in the manifest, not the CSV
    }
    csv << csv_row(r) << "\n";
  }

  nlohmann::json manifest{{"version", version_string},
                          {"config", config_to_json(cfg)},
                          {"reference",
                           {{"target", reference.target_name},
                            {"n", reference.samples.size()},
                            {"seed", reference.seed},
                            {"proposals", reference.proposals}}},
                          {"failures", failures}};
  std::ofstream mf(result.manifest_path);
  mf << manifest.dump(2) << "\n";
  return result;
}

// ---------------------------------------------------------------------------
// Quantile summaries
// ---------------------------------------------------------------------------

struct QuantileRow {
  std::string target;
  double beta = 0.0;
  std::size_t length = 0;
  std::string metric;
  double qmin = 0, q05 = 0, q25 = 0, q50 = 0, q75 = 0, q95 = 0, qmax = 0;
};

/// Linearly interpolated quantile of a sorted vector.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * double(sorted.size() - 1);
  const std::size_t i = std::size_t(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - double(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

inline std::vector<QuantileRow> summarize(const std::vector<ChainRow>& rows) {
  if (rows.empty()) throw EmptySample("no chain results to summarize");
  static const char* metric_names[] = {
      "tvd",  "mean_error", "cov_error", "acceptance_total",
      "acceptance_intrepid", "acceptance_local", "target_evals", "wall_time"};
  std::map<std::tuple<std::string, double, std::size_t>,
           std::map<std::string, std::vector<double>>>
      groups;
  for (const ChainRow& r : rows) {
    if (r.failed) continue;
    auto& g = groups[{r.target, r.beta, r.length}];
    g["tvd"].push_back(r.report.tvd);
    g["mean_error"].push_back(r.report.mean_error);
    g["cov_error"].push_back(r.report.cov_error);
    g["acceptance_total"].push_back(r.report.acceptance_total);
    g["acceptance_intrepid"].push_back(r.report.acceptance_intrepid);
    g["acceptance_local"].push_back(r.report.acceptance_local);
    g["target_evals"].push_back(double(r.report.target_evals));
    g["wall_time"].push_back(r.wall_seconds);
  }
  std::vector<QuantileRow> out;
  for (auto& [key, metrics] : groups) {
    for (const char* m : metric_names) {
      auto& v = metrics[m];
      if (v.empty()) continue;
      std::sort(v.begin(), v.end());
      QuantileRow q;
      q.target = std::get<0>(key);
      q.beta = std::get<1>(key);
      q.length = std::get<2>(key);
      q.metric = m;
      q.qmin = v.front();
      q.q05 = quantile_sorted(v, 0.05);
      q.q25 = quantile_sorted(v, 0.25);
      q.q50 = quantile_sorted(v, 0.50);
      q.q75 = quantile_sorted(v, 0.75);
      q.q95 = quantile_sorted(v, 0.95);
      q.qmax = v.back();
      out.push_back(q);
    }
  }
  return out;
}

/// Parses a campaign results CSV back into rows (metric columns only).
inline std::vector<ChainRow> parse_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(path + " is empty");
  if (line != csv_header())
    throw Error(path + " does not look like a campaign results file");
  std::vector<ChainRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    ChainRow r;
    std::getline(ls, r.target, ',');
    auto next_double = [&]() {
      std::getline(ls, field, ',');
      return std::stod(field);
    };
    r.beta = next_double();
    std::getline(ls, field, ',');
    r.chain_id = std::stoul(field);
    std::getline(ls, field, ',');
    r.length = std::stoul(field);
    r.report.tvd = next_double();
    r.report.mean_error = next_double();
    r.report.cov_error = next_double();
    r.report.acceptance_total = next_double();
    r.report.acceptance_intrepid = next_double();
    r.report.acceptance_local = next_double();
    std::getline(ls, field, ',');
    r.report.target_evals = std::stoull(field);
    r.wall_seconds = next_double();
    rows.push_back(std::move(r));
  }
  return rows;
}

inline void write_summary_csv(const std::vector<QuantileRow>& rows,
                              std::ostream& out) {
  out << "target,beta,length,metric,min,p05,p25,p50,p75,p95,max\n";
  for (const QuantileRow& q : rows) {
    out << q.target << ',' << format_metric(q.beta) << ',' << q.length << ','
        << q.metric << ',' << format_metric(q.qmin) << ','
        << format_metric(q.q05) << ',' << format_metric(q.q25) << ','
        << format_metric(q.q50) << ',' << format_metric(q.q75) << ','
        << format_metric(q.q95) << ',' << format_metric(q.qmax) << "\n";
  }
}

}  // namespace intrepid
