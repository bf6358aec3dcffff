#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <string>
#include <unordered_set>

#include "dgcn/errors.hpp"
#include "dgcn/experiment.hpp"

namespace dgcn {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  // std::from_chars for double is not available on every toolchain we build with.
  std::string buf(text);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (buf.empty() || pos != buf.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + buf + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return v;
}

double round12(double v) { return std::round(v * 1e12) / 1e12; }

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

struct KeySpec {
  std::string_view key;
  Setter set;
};

Setter number(double GeneratorConfig::*field) {
  return [field](ExperimentConfig& c, std::string_view k, std::string_view v) { c.generator.*field = parse_double(k, v); };
}

Setter count(std::size_t GeneratorConfig::*field) {
  return [field](ExperimentConfig& c, std::string_view k, std::string_view v) {
    c.generator.*field = parse_unsigned(k, v);
  };
}

Setter kind_count(std::size_t KindCounts::*field) {
  return [field](ExperimentConfig& c, std::string_view k, std::string_view v) {
    c.generator.functional_counts.*field = parse_unsigned(k, v);
  };
}

Setter er_prob(double ErProbs::*field) {
  return [field](ExperimentConfig& c, std::string_view k, std::string_view v) { c.generator.er.*field = parse_double(k, v); };
}

Setter nw_prob(double NwProbs::*field) {
  return [field](ExperimentConfig& c, std::string_view k, std::string_view v) { c.generator.nw.*field = parse_double(k, v); };
}

struct CascadeField {
  std::string_view name;
  double CascadeParams::*field;
};

constexpr CascadeField kCascadeFields[] = {
    {"kappa_g", &CascadeParams::kappa_g},   {"kappa_w", &CascadeParams::kappa_w}, {"lambda_g", &CascadeParams::lambda_g},
    {"lambda_w", &CascadeParams::lambda_w}, {"gamma_g", &CascadeParams::gamma_g}, {"gamma_w", &CascadeParams::gamma_w},
    {"delta_g", &CascadeParams::delta_g},   {"delta_w", &CascadeParams::delta_w}, {"eta", &CascadeParams::eta},
    {"tau", &CascadeParams::tau},
};

std::optional<double CascadeParams::*> cascade_field(std::string_view name) {
  if (name.starts_with("cascade.")) name.remove_prefix(8);
  for (const auto& f : kCascadeFields)
    if (f.name == name) return f.field;
  return std::nullopt;
}

Setter cascade(double CascadeParams::*field) {
  return [field](ExperimentConfig& c, std::string_view k, std::string_view v) { c.cascade.*field = parse_double(k, v); };
}

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"generator.family",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         auto fam = parse_family(trim(v));
         if (!fam) throw ConfigError(std::string(k) + ": expected ER, GOH or NW, got '" + std::string(v) + "'");
         c.generator.family = *fam;
       }},
      {"generator.n_o", kind_count(&KindCounts::o)},
      {"generator.n_p", kind_count(&KindCounts::p)},
      {"generator.n_d", kind_count(&KindCounts::d)},
      {"generator.n_a", kind_count(&KindCounts::a)},
      {"generator.n_w", count(&GeneratorConfig::physical_count)},
      {"generator.group_size", count(&GeneratorConfig::group_size)},
      {"generator.er.p_oo", er_prob(&ErProbs::oo)},
      {"generator.er.p_op", er_prob(&ErProbs::op)},
      {"generator.er.p_pp", er_prob(&ErProbs::pp)},
      {"generator.er.p_pd", er_prob(&ErProbs::pd)},
      {"generator.er.p_dd", er_prob(&ErProbs::dd)},
      {"generator.er.p_da", er_prob(&ErProbs::da)},
      {"generator.er.p_aa", er_prob(&ErProbs::aa)},
      {"generator.er.p_cc", er_prob(&ErProbs::cc)},
      {"generator.goh.beta", number(&GeneratorConfig::goh_beta)},
      {"generator.goh.avg_degree", number(&GeneratorConfig::goh_avg_degree)},
      {"generator.nw.k", count(&GeneratorConfig::nw_k)},
      {"generator.nw.p_oo", nw_prob(&NwProbs::oo)},
      {"generator.nw.p_pp", nw_prob(&NwProbs::pp)},
      {"generator.nw.p_dd", nw_prob(&NwProbs::dd)},
      {"generator.nw.p_aa", nw_prob(&NwProbs::aa)},
      {"generator.nw.p_cc", nw_prob(&NwProbs::cc)},
      {"cascade.kappa_g", cascade(&CascadeParams::kappa_g)},
      {"cascade.kappa_w", cascade(&CascadeParams::kappa_w)},
      {"cascade.lambda_g", cascade(&CascadeParams::lambda_g)},
      {"cascade.lambda_w", cascade(&CascadeParams::lambda_w)},
      {"cascade.gamma_g", cascade(&CascadeParams::gamma_g)},
      {"cascade.gamma_w", cascade(&CascadeParams::gamma_w)},
      {"cascade.delta_g", cascade(&CascadeParams::delta_g)},
      {"cascade.delta_w", cascade(&CascadeParams::delta_w)},
      {"cascade.eta", cascade(&CascadeParams::eta)},
      {"cascade.tau", cascade(&CascadeParams::tau)},
      {"metrics.alpha", [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.alpha = parse_double(k, v); }},
      {"metrics.comm_hops",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         auto m = parse_comm_hops(trim(v));
         if (!m) throw ConfigError(std::string(k) + ": expected closure or single_hop");
         c.comm_hops = *m;
       }},
      {"attack.rounding",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         auto r = parse_rounding(trim(v));
         if (!r) throw ConfigError(std::string(k) + ": expected half_up, floor or ceil");
         c.rounding = *r;
       }},
      {"experiment.families",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.families.clear();
         if (trim(v).empty()) return;
         for (auto part : split(v, ',')) {
           auto fam = parse_family(part);
           if (!fam) throw ConfigError(std::string(k) + ": unknown family '" + std::string(part) + "'");
           c.families.push_back(*fam);
         }
       }},
      {"experiment.modes",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.modes.clear();
         if (trim(v).empty()) return;
         for (auto part : split(v, ',')) {
           auto m = parse_attack_mode(part);
           if (!m) throw ConfigError(std::string(k) + ": unknown attack mode '" + std::string(part) + "'");
           c.modes.push_back(*m);
         }
       }},
      {"experiment.f_grid", [](ExperimentConfig& c, std::string_view, std::string_view v) { c.f_grid = parse_number_list(v); }},
      {"experiment.repetitions",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.repetitions = parse_unsigned(k, v); }},
      {"experiment.base_seed",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.base_seed = parse_unsigned(k, v); }},
      {"experiment.sweep_param",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         v = trim(v);
         if (v.empty() || v == "none") {
           c.sweep.reset();
           return;
         }
         if (!cascade_field(v)) throw ConfigError(std::string(k) + ": '" + std::string(v) + "' is not a cascade parameter");
         std::string name(v);
         if (!name.starts_with("cascade.")) name = "cascade." + name;
         if (!c.sweep) c.sweep.emplace();
         c.sweep->param = name;
       }},
      {"experiment.sweep_values",
       [](ExperimentConfig& c, std::string_view, std::string_view v) {
         if (!c.sweep) c.sweep.emplace();
         c.sweep->values = parse_number_list(v);
       }},
  };
  return table;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range must be start:step:stop, got '" + std::string(text) + "'");
    const double start = parse_double("range start", parts[0]);
    const double step = parse_double("range step", parts[1]);
    const double stop = parse_double("range stop", parts[2]);
    if (!(step > 0.0)) throw ConfigError("range step must be positive");
    if (stop < start) throw ConfigError("range stop precedes start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(round12(start + static_cast<double>(i) * step));
    return out;
  }
  for (auto part : split(text, ',')) out.push_back(parse_double("list element", part));
  return out;
}

void set_cascade_param(CascadeParams& params, std::string_view name, double value) {
  auto field = cascade_field(name);
  if (!field) throw ConfigError("'" + std::string(name) + "' is not a cascade parameter");
  params.**field = value;
}

void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  for (const auto& spec : key_table()) {
    if (spec.key == key) {
      spec.set(config, key, value);
      return;
    }
  }
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

std::span<const std::string_view> config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const auto& spec : key_table()) k.push_back(spec.key);
    return k;
  }();
  return keys;
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t line_no = 0;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(content.substr(0, eq)));
    if (!seen.insert(key).second) {
      throw ConfigError("config line " + std::to_string(line_no) + ": key '" + key + "' set twice");
    }
    try {
      set_config_value(config, key, content.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::vector<Family> ExperimentConfig::effective_families() const {
  if (families.empty()) return {generator.family};
  return families;
}

void ExperimentConfig::validate() const {
  generator.validate();
  cascade.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("metrics.alpha must lie in [0, 1]");
  if (modes.empty()) throw ConfigError("experiment.modes is empty");
  if (f_grid.empty()) throw ConfigError("experiment.f_grid is empty");
  for (double f : f_grid)
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("experiment.f_grid values must lie in [0, 1]");
  if (repetitions == 0) throw ConfigError("experiment.repetitions must be at least 1");
  if (sweep) {
    if (sweep->param.empty()) throw ConfigError("experiment.sweep_values given without experiment.sweep_param");
    if (sweep->values.empty()) throw ConfigError("experiment.sweep_param given without experiment.sweep_values");
    for (double v : sweep->values) {
      CascadeParams p = cascade;
      set_cascade_param(p, sweep->param, v);
      p.validate();
    }
  }
}

}  // namespace dgcn
