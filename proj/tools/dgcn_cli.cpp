// dgcn: batch front end for the combat-network cascade simulator.
//
//   dgcn generate [--config FILE] [--set k=v]... --seed N --out FILE
//   dgcn run      [--config FILE] [--set k=v]... --mode IDA --f 0.2 --seed N [--network FILE] [-v]
//   dgcn sweep    [--config FILE] [--set k=v]... [--reps N] [--seed BASE] --out FILE.csv
//   dgcn report   FILE.csv --out TABLE.csv [--svg CHART.svg]
//
// Worker threads for sweeps come from DGCN_WORKERS (default: all cores).

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dgcn/dgcn.h"

namespace {

// Exit codes besides CLI11's own usage errors.
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 3;
constexpr int kExitData = 4;

struct ConfigDeleter {
  void operator()(dgcn_config* c) const { dgcn_config_free(c); }
};
struct NetworkDeleter {
  void operator()(dgcn_network* n) const { dgcn_network_free(n); }
};
using ConfigPtr = std::unique_ptr<dgcn_config, ConfigDeleter>;
using NetworkPtr = std::unique_ptr<dgcn_network, NetworkDeleter>;

int report_error(dgcn_status status) {
  std::fprintf(stderr, "dgcn: %s: %s\n", dgcn_status_name(status), dgcn_last_error());
  switch (status) {
    case DGCN_ERR_CONFIG:
    case DGCN_ERR_INVALID_ARGUMENT: return kExitConfig;
    case DGCN_ERR_FORMAT:
    case DGCN_ERR_STRUCTURE:
    case DGCN_ERR_IO: return kExitData;
    default: return kExitFailure;
  }
}

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--set", opts.overrides, "override a configuration key, e.g. cascade.tau=0.4");
}

dgcn_status load_config(const CommonOptions& opts, ConfigPtr& out) {
  dgcn_config* raw = nullptr;
  const auto st = opts.config_path.empty() ? dgcn_config_new(&raw) : dgcn_config_load(opts.config_path.c_str(), &raw);
  if (st != DGCN_OK) return st;
  out.reset(raw);
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "dgcn: --set expects key=value, got '%s'\n", kv.c_str());
      return DGCN_ERR_INVALID_ARGUMENT;
    }
    const auto key = kv.substr(0, eq);
    const auto value = kv.substr(eq + 1);
    if (auto s = dgcn_config_set(out.get(), key.c_str(), value.c_str()); s != DGCN_OK) return s;
  }
  return DGCN_OK;
}

unsigned worker_count() {
  const char* env = std::getenv("DGCN_WORKERS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  return (end && *end == '\0') ? static_cast<unsigned>(v) : 0;
}

void print_failure(uint32_t round, uint32_t node, const char* cause, void*) {
  std::fprintf(stderr, "%u\t%u\t%s\n", round, node, cause);
}

std::string summary_path_for(const std::string& csv) {
  const std::string ext = ".csv";
  if (csv.size() > ext.size() && csv.compare(csv.size() - ext.size(), ext.size(), ext) == 0) {
    return csv.substr(0, csv.size() - ext.size()) + ".summary.csv";
  }
  return csv + ".summary.csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascading-failure simulator for double-layer group-dependent combat networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dgcn_version()));

  CommonOptions gen_opts;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "generate one network and write it in the text format");
  add_common(gen, gen_opts);
  gen->add_option("--seed", gen_seed, "master seed")->required();
  gen->add_option("-o,--out", gen_out, "output network file")->required();

  CommonOptions run_opts;
  std::string run_mode;
  double run_f = 0.0;
  std::uint64_t run_seed = 1;
  std::string run_network;
  bool run_verbose = false;
  auto* run = app.add_subcommand("run", "attack one network, print the scored CSV row");
  add_common(run, run_opts);
  run->add_option("-m,--mode", run_mode, "attack mode")
      ->required()
      ->check(CLI::IsMember({"RSPA", "ISPA", "RSFA", "ISFA", "RDA", "IDA"}));
  run->add_option("-f,--f", run_f, "initial failure ratio")->required()->check(CLI::Range(0.0, 1.0));
  run->add_option("--seed", run_seed, "master seed");
  run->add_option("-n,--network", run_network, "attack this saved network instead of generating one")
      ->check(CLI::ExistingFile);
  run->add_flag("-v,--verbose", run_verbose, "print the failure log (round, node, cause) to stderr");

  CommonOptions sweep_opts;
  std::string sweep_out;
  std::size_t sweep_reps = 0;
  std::uint64_t sweep_seed = 0;
  auto* sweep = app.add_subcommand("sweep", "run the full experiment grid; writes rows and a .summary.csv");
  add_common(sweep, sweep_opts);
  sweep->add_option("-o,--out", sweep_out, "result CSV")->required();
  auto* reps_opt = sweep->add_option("--reps", sweep_reps, "repetitions (overrides experiment.repetitions)");
  auto* seed_opt = sweep->add_option("--seed", sweep_seed, "base seed (overrides experiment.base_seed)");

  std::string report_in, report_out, report_svg;
  auto* report = app.add_subcommand("report", "aggregate a result CSV into plot-ready series");
  report->add_option("csv", report_in, "result CSV from 'sweep'")->required()->check(CLI::ExistingFile);
  report->add_option("-o,--out", report_out, "series table CSV")->required();
  report->add_option("--svg", report_svg, "also render a line chart");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    ConfigPtr config;
    if (auto st = load_config(gen_opts, config); st != DGCN_OK) return report_error(st);
    dgcn_network* raw = nullptr;
    if (auto st = dgcn_network_generate(config.get(), gen_seed, &raw); st != DGCN_OK) return report_error(st);
    NetworkPtr net(raw);
    if (auto st = dgcn_network_save(net.get(), gen_out.c_str()); st != DGCN_OK) return report_error(st);
    return 0;
  }

  if (run->parsed()) {
    ConfigPtr config;
    if (auto st = load_config(run_opts, config); st != DGCN_OK) return report_error(st);
    dgcn_row row{};
    dgcn_failure_fn sink = run_verbose ? print_failure : nullptr;
    dgcn_status st = DGCN_OK;
    if (run_network.empty()) {
      st = dgcn_run(config.get(), run_mode.c_str(), run_f, run_seed, sink, nullptr, &row);
    } else {
      dgcn_network* raw = nullptr;
      if (st = dgcn_network_load(run_network.c_str(), &raw); st != DGCN_OK) return report_error(st);
      NetworkPtr net(raw);
      st = dgcn_network_attack(net.get(), config.get(), run_mode.c_str(), run_f, run_seed, sink, nullptr, &row);
    }
    if (st != DGCN_OK) return report_error(st);
    std::vector<char> line(dgcn_row_format(&row, nullptr, 0) + 1);
    dgcn_row_format(&row, line.data(), line.size());
    std::printf("%s\n%s\n", dgcn_result_header(), line.data());
    return 0;
  }

  if (sweep->parsed()) {
    ConfigPtr config;
    if (auto st = load_config(sweep_opts, config); st != DGCN_OK) return report_error(st);
    if (reps_opt->count() > 0) {
      if (auto st = dgcn_config_set(config.get(), "experiment.repetitions", std::to_string(sweep_reps).c_str());
          st != DGCN_OK) {
        return report_error(st);
      }
    }
    if (seed_opt->count() > 0) {
      if (auto st = dgcn_config_set(config.get(), "experiment.base_seed", std::to_string(sweep_seed).c_str());
          st != DGCN_OK) {
        return report_error(st);
      }
    }
    if (auto st = dgcn_config_validate(config.get()); st != DGCN_OK) return report_error(st);
    const auto summary = summary_path_for(sweep_out);
    std::size_t rows = 0;
    if (auto st = dgcn_sweep(config.get(), worker_count(), sweep_out.c_str(), summary.c_str(), &rows);
        st != DGCN_OK) {
      return report_error(st);
    }
    std::fprintf(stderr, "dgcn: wrote %zu rows to %s (summary: %s)\n", rows, sweep_out.c_str(), summary.c_str());
    return 0;
  }

  if (report->parsed()) {
    std::size_t series = 0;
    const char* svg = report_svg.empty() ? nullptr : report_svg.c_str();
    if (auto st = dgcn_report(report_in.c_str(), report_out.c_str(), svg, &series); st != DGCN_OK) {
      return report_error(st);
    }
    std::fprintf(stderr, "dgcn: %zu series written to %s\n", series, report_out.c_str());
    return 0;
  }
  return kExitFailure;
}
