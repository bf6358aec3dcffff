#include "dgcn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "dgcn/errors.hpp"

namespace dgcn {

namespace {

constexpr std::uint32_t kMaxGenerationAttempts = 100;

/// Stable integer key of an attack ratio, so 0.15 and 3 * 0.05 share streams.
std::uint64_t ratio_key(double f) { return static_cast<std::uint64_t>(std::llround(f * 1e9)); }

}  // namespace

Instance prepare_instance(const GeneratorConfig& generator, Family family, CommHops comm_hops, std::uint64_t seed) {
  GeneratorConfig gen = generator;
  gen.family = family;
  for (std::uint32_t attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    Rng rng = make_stream(seed, Stream::generation, {attempt});
    CombatNetwork net = build_dgcn(gen, rng);
    const auto alive = all_alive(net);
    const auto links = count_celks(net, alive, comm_hops).total;
    if (links == 0) continue;
    const auto huge = s_huge(net, alive);
    return Instance{std::move(net), family, seed, attempt + 1, huge, links};
  }
  throw ConfigError("generator produced " + std::to_string(kMaxGenerationAttempts) +
                    " consecutive networks without any combat-effectiveness link (family " +
                    std::string(family_name(family)) + ", seed " + std::to_string(seed) + ")");
}

ScenarioResult run_scenario(const Instance& instance, const CascadeParams& params, AttackSpec attack, double alpha,
                            CommHops comm_hops, Rounding rounding, const CascadeHooks& hooks) {
  const auto mode_key = static_cast<std::uint64_t>(attack.mode);
  Rng attack_rng = make_stream(instance.seed, Stream::attack, {mode_key, ratio_key(attack.f)});
  Rng overload_rng = make_stream(instance.seed, Stream::overload, {mode_key, ratio_key(attack.f)});
  const auto targets = select_targets(instance.net, attack, attack_rng, rounding);
  ScenarioResult result{{}, run_cascade(instance.net, params, targets, overload_rng, hooks)};
  const auto alive = alive_mask(instance.net, result.outcome);
  result.report = robustness(instance.baseline_huge, instance.baseline_links, s_huge(instance.net, alive),
                             count_celks(instance.net, alive, comm_hops).total, alpha);
  return result;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, unsigned workers) {
  config.validate();
  const auto families = config.effective_families();
  const std::vector<std::optional<double>> sweep_values = [&] {
    std::vector<std::optional<double>> v;
    if (config.sweep)
      for (double x : config.sweep->values) v.emplace_back(x);
    else
      v.emplace_back(std::nullopt);
    return v;
  }();
  const std::string sweep_param = config.sweep ? config.sweep->param : "none";

  // One job per (family, repetition); each owns its instance.
  const std::size_t jobs = families.size() * config.repetitions;
  std::vector<std::vector<ResultRow>> slots(jobs);
  auto run_job = [&](std::size_t job) {
    const Family family = families[job / config.repetitions];
    const std::size_t rep = job % config.repetitions;
    const std::uint64_t seed = config.base_seed + rep;
    const Instance instance = prepare_instance(config.generator, family, config.comm_hops, seed);
    auto& rows = slots[job];
    rows.reserve(sweep_values.size() * config.modes.size() * config.f_grid.size());
    for (const auto& sv : sweep_values) {
      CascadeParams params = config.cascade;
      if (sv) set_cascade_param(params, sweep_param, *sv);
      for (AttackMode mode : config.modes) {
        for (double f : config.f_grid) {
          const auto res = run_scenario(instance, params, {mode, f}, config.alpha, config.comm_hops, config.rounding);
          ResultRow row;
          row.family = family;
          row.mode = mode;
          row.sweep_param = sweep_param;
          row.sweep_value = sv;
          row.f = f;
          row.rep = rep;
          row.seed = seed;
          row.r = res.report.r;
          row.huge_ratio = res.report.huge_ratio;
          row.links_ratio = res.report.links_ratio;
          row.rounds = res.outcome.rounds;
          rows.push_back(std::move(row));
        }
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < jobs; j = next++) {
          try {
            run_job(j);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = jobs;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<ResultRow> rows;
  rows.reserve(jobs * sweep_values.size() * config.modes.size() * config.f_grid.size());
  for (auto& slot : slots) std::move(slot.begin(), slot.end(), std::back_inserter(rows));
  return rows;
}

std::vector<SummaryRow> summarize(std::span<const ResultRow> rows) {
  using Key = std::tuple<Family, AttackMode, std::string, bool, double, double>;
  struct Acc {
    std::vector<double> values;
    const ResultRow* first = nullptr;
  };
  std::map<Key, Acc> groups;
  for (const auto& row : rows) {
    Key key{row.family, row.mode, row.sweep_param, row.sweep_value.has_value(), row.sweep_value.value_or(0.0), row.f};
    auto& acc = groups[key];
    if (!acc.first) acc.first = &row;
    acc.values.push_back(row.r);
  }
  std::vector<SummaryRow> out;
  out.reserve(groups.size());
  for (const auto& [key, acc] : groups) {
    SummaryRow s;
    s.family = acc.first->family;
    s.mode = acc.first->mode;
    s.sweep_param = acc.first->sweep_param;
    s.sweep_value = acc.first->sweep_value;
    s.f = acc.first->f;
    s.n = acc.values.size();
    double sum = 0.0;
    for (double v : acc.values) sum += v;
    s.mean_r = sum / static_cast<double>(s.n);
    if (s.n > 1) {
      double ss = 0.0;
      for (double v : acc.values) ss += (v - s.mean_r) * (v - s.mean_r);
      s.sd_r = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_row(const ResultRow& row) {
  std::string s;
  s += family_name(row.family);
  s += ',';
  s += attack_mode_name(row.mode);
  s += ',';
  s += row.sweep_param;
  s += ',';
  if (row.sweep_value) s += format_number(*row.sweep_value);
  s += ',' + format_number(row.f);
  s += ',' + std::to_string(row.rep);
  s += ',' + std::to_string(row.seed);
  s += ',' + format_number(row.r);
  s += ',' + format_number(row.huge_ratio);
  s += ',' + format_number(row.links_ratio);
  s += ',' + std::to_string(row.rounds);
  return s;
}

void write_rows_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << kResultHeader << '\n';
  for (const auto& row : rows) out << format_row(row) << '\n';
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << kSummaryHeader << '\n';
  for (const auto& s : rows) {
    out << family_name(s.family) << ',' << attack_mode_name(s.mode) << ',' << s.sweep_param << ','
        << (s.sweep_value ? format_number(*s.sweep_value) : std::string()) << ',' << format_number(s.f) << ','
        << s.n << ',' << format_number(s.mean_r) << ',' << format_number(s.sd_r) << '\n';
  }
}

namespace {

[[noreturn]] void csv_error(std::size_t line_no, const std::string& why) {
  throw FormatError("result CSV line " + std::to_string(line_no) + ": " + why);
}

double csv_double(const std::string& field, std::size_t line_no, const char* name) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (field.empty() || pos != field.size()) csv_error(line_no, std::string("bad ") + name + " '" + field + "'");
  return v;
}

std::uint64_t csv_unsigned(const std::string& field, std::size_t line_no, const char* name) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(field, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (field.empty() || field[0] == '-' || pos != field.size()) {
    csv_error(line_no, std::string("bad ") + name + " '" + field + "'");
  }
  return v;
}

}  // namespace

std::vector<ResultRow> read_rows_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw FormatError("result CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultHeader) throw FormatError("result CSV header mismatch: '" + line + "'");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 11) csv_error(line_no, "expected 11 fields, got " + std::to_string(fields.size()));
    ResultRow row;
    auto fam = parse_family(fields[0]);
    if (!fam) csv_error(line_no, "unknown family '" + fields[0] + "'");
    auto mode = parse_attack_mode(fields[1]);
    if (!mode) csv_error(line_no, "unknown attack mode '" + fields[1] + "'");
    row.family = *fam;
    row.mode = *mode;
    row.sweep_param = fields[2];
    if (!fields[3].empty()) row.sweep_value = csv_double(fields[3], line_no, "sweep_value");
    row.f = csv_double(fields[4], line_no, "f");
    row.rep = csv_unsigned(fields[5], line_no, "rep");
    row.seed = csv_unsigned(fields[6], line_no, "seed");
    row.r = csv_double(fields[7], line_no, "R");
    row.huge_ratio = csv_double(fields[8], line_no, "huge_ratio");
    row.links_ratio = csv_double(fields[9], line_no, "links_ratio");
    row.rounds = static_cast<std::uint32_t>(csv_unsigned(fields[10], line_no, "rounds"));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dgcn
