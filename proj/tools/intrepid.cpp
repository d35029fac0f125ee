// SPDX-License-Identifier: Apache-2.0
// Command-line harness: run campaigns, build reference sets, summarize
// results, validate configs.
//
// Exit codes: 0 success, 2 config error, 3 runtime error, 4 reference/
// oracle integrity failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "intrepid/intrepid.hpp"

namespace {

int run_subcommand(const std::string& config_path) {
  const intrepid::CampaignConfig cfg = intrepid::load_config(config_path);
  const intrepid::CampaignResult result = intrepid::run_campaign(cfg);
  std::size_t failed = 0;
  for (const auto& row : result.rows) failed += row.failed ? 1 : 0;
  std::cout << "wrote " << result.csv_path << " ("
            << result.rows.size() - failed << " chains";
  if (failed) std::cout << ", " << failed << " failed";
  std::cout << ")\nmanifest: " << result.manifest_path << "\n";
  return 0;
}

int reference_subcommand(const std::string& target_name, std::size_t n,
                         std::uint64_t seed, const std::string& out_path) {
  const intrepid::TargetModel target = intrepid::target_by_name(target_name);
  const intrepid::ReferenceSet set = intrepid::make_reference(target, n, seed);
  intrepid::save_reference(set, out_path);
  std::cout << "wrote " << out_path << " (" << set.samples.size()
            << " samples, " << set.proposals << " proposals)\n";
  return 0;
}

int summarize_subcommand(const std::string& csv_path,
                         const std::string& out_path) {
  const auto rows = intrepid::parse_results_csv(csv_path);
  const auto summary = intrepid::summarize(rows);
  if (out_path.empty()) {
    intrepid::write_summary_csv(summary, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw intrepid::Error("cannot open " + out_path);
    intrepid::write_summary_csv(summary, out);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int validate_subcommand(const std::string& config_path) {
  intrepid::validate_config(intrepid::load_config(config_path));
  std::cout << config_path << ": ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixture-kernel MCMC benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, target_name, csv_path, out_path;
  std::size_t n = 100000;
  std::uint64_t seed = 7;

  auto* run = app.add_subcommand("run", "run a campaign from a config file");
  run->add_option("config", config_path, "campaign config (JSON)")->required();

  auto* ref = app.add_subcommand("reference",
                                 "generate a rejection-sampled reference set");
  ref->add_option("target", target_name, "target name")->required();
  ref->add_option("--n", n, "number of samples");
  ref->add_option("--seed", seed, "rejection sampler seed");
  ref->add_option("--out", out_path, "output path")->required();

  auto* sum = app.add_subcommand("summarize",
                                 "quantile summary of a results CSV");
  sum->add_option("csv", csv_path, "campaign results CSV")->required();
  sum->add_option("--out", out_path, "summary output path (default stdout)");

  auto* val = app.add_subcommand("validate", "validate a campaign config");
  val->add_option("config", config_path, "campaign config (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_subcommand(config_path);
    if (ref->parsed()) return reference_subcommand(target_name, n, seed,
                                                   out_path);
    if (sum->parsed()) return summarize_subcommand(csv_path, out_path);
    if (val->parsed()) return validate_subcommand(config_path);
  } catch (const intrepid::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const intrepid::BoundViolation& e) {
    std::cerr << "oracle integrity error: " << e.what() << "\n";
    return 4;
  } catch (const intrepid::NonterminatingWarning& e) {
    std::cerr << "oracle integrity error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
