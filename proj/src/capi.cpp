#include "dgcn/dgcn.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>

#include "dgcn/errors.hpp"
#include "dgcn/experiment.hpp"
#include "dgcn/report.hpp"

struct dgcn_config {
  dgcn::ExperimentConfig value;
};

struct dgcn_network {
  std::optional<dgcn::Instance> instance;  // generated networks keep their seed/family
  std::optional<dgcn::CombatNetwork> loaded;

  const dgcn::CombatNetwork& net() const { return instance ? instance->net : *loaded; }
};

namespace {

thread_local std::string g_last_error;

dgcn_status fail(dgcn_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

/// Runs `body`, translating exceptions into status codes.
template <class F>
dgcn_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const dgcn::ConfigError& e) {
    return fail(DGCN_ERR_CONFIG, e.what());
  } catch (const dgcn::StructuralError& e) {
    return fail(DGCN_ERR_STRUCTURE, e.what());
  } catch (const dgcn::FormatError& e) {
    return fail(DGCN_ERR_FORMAT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DGCN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DGCN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DGCN_ERR_INTERNAL, "unknown error");
  }
}

void copy_name(char (&dst)[8], std::string_view src) {
  const auto n = std::min(src.size(), sizeof dst - 1);
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

dgcn_status attack_impl(const dgcn::Instance& instance, const dgcn::ExperimentConfig& config, const char* mode,
                        double f, dgcn_failure_fn on_failure, void* user, dgcn_row* out) {
  if (!mode || !out) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
  auto parsed = dgcn::parse_attack_mode(mode);
  if (!parsed) return fail(DGCN_ERR_INVALID_ARGUMENT, std::string("unknown attack mode '") + mode + "'");
  config.cascade.validate();
  dgcn::CascadeHooks hooks;
  if (on_failure) {
    hooks.on_failure = [on_failure, user](const dgcn::FailureEvent& e) {
      const std::string cause(dgcn::cause_name(e.cause));
      on_failure(e.round, e.node, cause.c_str(), user);
    };
  }
  const auto res =
      dgcn::run_scenario(instance, config.cascade, {*parsed, f}, config.alpha, config.comm_hops, config.rounding, hooks);
  *out = dgcn_row{};
  copy_name(out->family, dgcn::family_name(instance.family));
  copy_name(out->mode, dgcn::attack_mode_name(*parsed));
  out->f = f;
  out->seed = instance.seed;
  out->r = res.report.r;
  out->huge_ratio = res.report.huge_ratio;
  out->links_ratio = res.report.links_ratio;
  out->rounds = res.outcome.rounds;
  out->failed_nodes = static_cast<uint32_t>(res.outcome.failure_log.size());
  return DGCN_OK;
}

}  // namespace

extern "C" {

const char* dgcn_version(void) { return "0.1.0"; }

const char* dgcn_last_error(void) { return g_last_error.c_str(); }

const char* dgcn_status_name(dgcn_status status) {
  switch (status) {
    case DGCN_OK: return "ok";
    case DGCN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DGCN_ERR_CONFIG: return "configuration error";
    case DGCN_ERR_STRUCTURE: return "structural error";
    case DGCN_ERR_FORMAT: return "format error";
    case DGCN_ERR_IO: return "I/O error";
    case DGCN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

dgcn_status dgcn_config_new(dgcn_config** out) {
  return guarded([&] {
    if (!out) return fail(DGCN_ERR_INVALID_ARGUMENT, "null output pointer");
    *out = new dgcn_config{};
    return DGCN_OK;
  });
}

dgcn_status dgcn_config_load(const char* path, dgcn_config** out) {
  return guarded([&] {
    if (!path || !out) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
    std::ifstream in(path);
    if (!in) return fail(DGCN_ERR_IO, std::string("cannot open config file '") + path + "'");
    *out = new dgcn_config{dgcn::parse_config(in)};
    return DGCN_OK;
  });
}

dgcn_status dgcn_config_set(dgcn_config* config, const char* key, const char* value) {
  return guarded([&] {
    if (!config || !key || !value) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
    dgcn::set_config_value(config->value, key, value);
    return DGCN_OK;
  });
}

dgcn_status dgcn_config_validate(const dgcn_config* config) {
  return guarded([&] {
    if (!config) return fail(DGCN_ERR_INVALID_ARGUMENT, "null config");
    config->value.validate();
    return DGCN_OK;
  });
}

void dgcn_config_free(dgcn_config* config) { delete config; }

dgcn_status dgcn_network_generate(const dgcn_config* config, uint64_t seed, dgcn_network** out) {
  return guarded([&] {
    if (!config || !out) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
    const auto& c = config->value;
    c.generator.validate();
    auto* handle = new dgcn_network{};
    try {
      handle->instance.emplace(dgcn::prepare_instance(c.generator, c.generator.family, c.comm_hops, seed));
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
    return DGCN_OK;
  });
}

dgcn_status dgcn_network_load(const char* path, dgcn_network** out) {
  return guarded([&] {
    if (!path || !out) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
    std::ifstream in(path);
    if (!in) return fail(DGCN_ERR_IO, std::string("cannot open network file '") + path + "'");
    auto* handle = new dgcn_network{};
    try {
      handle->loaded.emplace(dgcn::read_network(in));
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
    return DGCN_OK;
  });
}

dgcn_status dgcn_network_save(const dgcn_network* network, const char* path) {
  return guarded([&] {
    if (!network || !path) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(DGCN_ERR_IO, std::string("cannot write '") + path + "'");
    dgcn::write_network(out, network->net());
    out.close();
    if (!out) return fail(DGCN_ERR_IO, std::string("write to '") + path + "' failed");
    return DGCN_OK;
  });
}

dgcn_status dgcn_network_counts(const dgcn_network* network, uint32_t* functional_nodes, uint32_t* physical_nodes,
                                uint32_t* group_size) {
  return guarded([&] {
    if (!network) return fail(DGCN_ERR_INVALID_ARGUMENT, "null network");
    const auto& net = network->net();
    if (functional_nodes) *functional_nodes = static_cast<uint32_t>(net.functional_count());
    if (physical_nodes) *physical_nodes = static_cast<uint32_t>(net.physical_count());
    if (group_size) *group_size = static_cast<uint32_t>(net.deps().group_size());
    return DGCN_OK;
  });
}

dgcn_status dgcn_network_links(const dgcn_network* network, const dgcn_config* config, int64_t* links) {
  return guarded([&] {
    if (!network || !config || !links) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
    const auto& net = network->net();
    *links = dgcn::count_celks(net, dgcn::all_alive(net), config->value.comm_hops).total;
    return DGCN_OK;
  });
}

void dgcn_network_free(dgcn_network* network) { delete network; }

dgcn_status dgcn_network_attack(const dgcn_network* network, const dgcn_config* config, const char* mode, double f,
                                uint64_t seed, dgcn_failure_fn on_failure, void* user, dgcn_row* out) {
  return guarded([&] {
    if (!network || !config) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
    if (network->instance) {
      dgcn::Instance copy = *network->instance;
      copy.seed = seed;
      return attack_impl(copy, config->value, mode, f, on_failure, user, out);
    }
    const auto& net = *network->loaded;
    const auto alive = dgcn::all_alive(net);
    dgcn::Instance inst{net, config->value.generator.family, seed, 0, dgcn::s_huge(net, alive),
                        dgcn::count_celks(net, alive, config->value.comm_hops).total};
    if (inst.baseline_links == 0) {
      return fail(DGCN_ERR_CONFIG, "network has no combat-effectiveness link; robustness is undefined");
    }
    return attack_impl(inst, config->value, mode, f, on_failure, user, out);
  });
}

dgcn_status dgcn_run(const dgcn_config* config, const char* mode, double f, uint64_t seed, dgcn_failure_fn on_failure,
                     void* user, dgcn_row* out) {
  return guarded([&] {
    if (!config) return fail(DGCN_ERR_INVALID_ARGUMENT, "null config");
    const auto& c = config->value;
    c.generator.validate();
    const auto instance = dgcn::prepare_instance(c.generator, c.generator.family, c.comm_hops, seed);
    return attack_impl(instance, c, mode, f, on_failure, user, out);
  });
}

size_t dgcn_row_format(const dgcn_row* row, char* buffer, size_t size) {
  if (!row) return 0;
  dgcn::ResultRow r;
  r.family = dgcn::parse_family(row->family).value_or(dgcn::Family::er);
  r.mode = dgcn::parse_attack_mode(row->mode).value_or(dgcn::AttackMode::ida);
  r.f = row->f;
  r.seed = row->seed;
  r.r = row->r;
  r.huge_ratio = row->huge_ratio;
  r.links_ratio = row->links_ratio;
  r.rounds = row->rounds;
  const std::string line = dgcn::format_row(r);
  if (buffer && size > 0) {
    const auto n = std::min(line.size(), size - 1);
    std::memcpy(buffer, line.data(), n);
    buffer[n] = '\0';
  }
  return line.size();
}

const char* dgcn_result_header(void) { return dgcn::kResultHeader.data(); }

dgcn_status dgcn_sweep(const dgcn_config* config, unsigned workers, const char* csv_path, const char* summary_path,
                       size_t* rows_written) {
  return guarded([&] {
    if (!config || !csv_path) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
    const auto rows = dgcn::run_experiment(config->value, workers);
    {
      std::ofstream out(csv_path, std::ios::binary);
      if (!out) return fail(DGCN_ERR_IO, std::string("cannot write '") + csv_path + "'");
      dgcn::write_rows_csv(out, rows);
      out.close();
      if (!out) return fail(DGCN_ERR_IO, std::string("write to '") + csv_path + "' failed");
    }
    if (summary_path) {
      std::ofstream out(summary_path, std::ios::binary);
      if (!out) return fail(DGCN_ERR_IO, std::string("cannot write '") + summary_path + "'");
      const auto summary = dgcn::summarize(rows);
      dgcn::write_summary_csv(out, summary);
      out.close();
      if (!out) return fail(DGCN_ERR_IO, std::string("write to '") + summary_path + "' failed");
    }
    if (rows_written) *rows_written = rows.size();
    return DGCN_OK;
  });
}

dgcn_status dgcn_report(const char* csv_path, const char* table_path, const char* svg_path, size_t* series_count) {
  return guarded([&] {
    if (!csv_path || !table_path) return fail(DGCN_ERR_INVALID_ARGUMENT, "null argument");
    std::ifstream in(csv_path);
    if (!in) return fail(DGCN_ERR_IO, std::string("cannot open '") + csv_path + "'");
    const auto rows = dgcn::read_rows_csv(in);
    if (rows.empty()) return fail(DGCN_ERR_FORMAT, std::string("'") + csv_path + "' holds no result rows");
    const auto series = dgcn::build_series(rows);
    {
      std::ofstream out(table_path, std::ios::binary);
      if (!out) return fail(DGCN_ERR_IO, std::string("cannot write '") + table_path + "'");
      dgcn::write_series_csv(out, series);
      if (!out) return fail(DGCN_ERR_IO, std::string("write to '") + table_path + "' failed");
    }
    if (svg_path) {
      std::ofstream out(svg_path, std::ios::binary);
      if (!out) return fail(DGCN_ERR_IO, std::string("cannot write '") + svg_path + "'");
      dgcn::write_series_svg(out, series, "mean R vs f");
      if (!out) return fail(DGCN_ERR_IO, std::string("write to '") + svg_path + "' failed");
    }
    if (series_count) *series_count = series.size();
    return DGCN_OK;
  });
}

}  // extern "C"
