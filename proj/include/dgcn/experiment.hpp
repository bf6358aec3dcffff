#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dgcn/attack.hpp"
#include "dgcn/cascade.hpp"
#include "dgcn/generators.hpp"
#include "dgcn/metrics.hpp"

namespace dgcn {

struct Sweep {
  std::string param;  ///< canonical "cascade.<field>" key
  std::vector<double> values;
};

struct ExperimentConfig {
  GeneratorConfig generator;
  /// Families to run; empty means {generator.family}.
  std::vector<Family> families;
  CascadeParams cascade;
  double alpha = 0.5;
  CommHops comm_hops = CommHops::closure;
  Rounding rounding = Rounding::half_up;
  std::vector<AttackMode> modes{AttackMode::ida};
  std::vector<double> f_grid{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4};
  std::size_t repetitions = 300;
  std::uint64_t base_seed = 1;
  std::optional<Sweep> sweep;

  std::vector<Family> effective_families() const;
  /// Throws ConfigError.
  void validate() const;
};

/// Assigns one dotted key (e.g. "cascade.tau", "experiment.f_grid").
/// Unknown keys and malformed values throw ConfigError.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Every accepted key, in documentation order.
std::span<const std::string_view> config_keys();

/// Flat `key = value` text; '#' starts a comment. Throws ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config_file(const std::string& path);

/// Parses "a,b,c" or "start:step:stop" (inclusive, values rounded to 12
/// decimals so 3 * 0.05 reads as 0.15).
std::vector<double> parse_number_list(std::string_view text);

/// Writes `value` into the CascadeParams field named by a sweep key.
void set_cascade_param(CascadeParams& params, std::string_view name, double value);

/// A generated network together with its unattacked baseline.
struct Instance {
  CombatNetwork net;
  Family family;
  std::uint64_t seed;
  std::uint32_t attempts;
  std::size_t baseline_huge;
  std::int64_t baseline_links;
};

/// Generates from the seed's generation substream, regenerating (up to 100
/// attempts) while the baseline has no combat-effectiveness link.
Instance prepare_instance(const GeneratorConfig& generator, Family family, CommHops comm_hops, std::uint64_t seed);

struct ScenarioResult {
  RobustnessReport report;
  CascadeOutcome outcome;
};

/// One attack + cascade + scoring on a pristine copy of the instance. The
/// attack and overload substreams depend on (seed, mode, f) only.
ScenarioResult run_scenario(const Instance& instance, const CascadeParams& params, AttackSpec attack, double alpha,
                            CommHops comm_hops, Rounding rounding, const CascadeHooks& hooks = {});

struct ResultRow {
  Family family = Family::er;
  AttackMode mode = AttackMode::ida;
  std::string sweep_param = "none";
  std::optional<double> sweep_value;
  double f = 0.0;
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  double r = 0.0;
  double huge_ratio = 0.0;
  double links_ratio = 0.0;
  std::uint32_t rounds = 0;
};

/// Row order: family, repetition, sweep value, mode, f.
/// `workers` = 0 picks the hardware concurrency.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, unsigned workers = 1);

struct SummaryRow {
  Family family = Family::er;
  AttackMode mode = AttackMode::ida;
  std::string sweep_param = "none";
  std::optional<double> sweep_value;
  double f = 0.0;
  std::size_t n = 0;
  double mean_r = 0.0;
  double sd_r = 0.0;  ///< sample standard deviation; 0 for a single row
};

/// Mean and sample standard deviation of R per (family, mode, sweep value, f).
std::vector<SummaryRow> summarize(std::span<const ResultRow> rows);

inline constexpr std::string_view kResultHeader =
    "family,mode,sweep_param,sweep_value,f,rep,seed,R,huge_ratio,links_ratio,rounds";
inline constexpr std::string_view kSummaryHeader = "family,mode,sweep_param,sweep_value,f,n,mean_R,sd_R";

/// %.6g formatting shared by every CSV writer.
std::string format_number(double v);
std::string format_row(const ResultRow& row);

void write_rows_csv(std::ostream& out, std::span<const ResultRow> rows);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

/// Strict reader for the result CSV; throws FormatError.
std::vector<ResultRow> read_rows_csv(std::istream& in);

}  // namespace dgcn
