#include "dgcn/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "dgcn/errors.hpp"

namespace dgcn {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::er: return "ER";
    case Family::goh: return "GOH";
    case Family::nw: return "NW";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "ER") return Family::er;
  if (name == "GOH") return Family::goh;
  if (name == "NW") return Family::nw;
  return std::nullopt;
}

std::size_t KindCounts::of(NodeKind kind) const {
  switch (kind) {
    case NodeKind::O: return o;
    case NodeKind::P: return p;
    case NodeKind::D: return d;
    case NodeKind::A: return a;
    case NodeKind::C: return 0;
  }
  return 0;
}

namespace {

void check_probability(double p, std::string_view name) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace

void GeneratorConfig::validate() const {
  for (auto [p, name] : {std::pair{er.oo, "er.p_oo"}, {er.op, "er.p_op"}, {er.pp, "er.p_pp"}, {er.pd, "er.p_pd"},
                         {er.dd, "er.p_dd"}, {er.da, "er.p_da"}, {er.aa, "er.p_aa"}, {er.cc, "er.p_cc"},
                         {nw.oo, "nw.p_oo"}, {nw.pp, "nw.p_pp"}, {nw.dd, "nw.p_dd"}, {nw.aa, "nw.p_aa"},
                         {nw.cc, "nw.p_cc"}}) {
    check_probability(p, name);
  }
  if (!(goh_beta > 2.0)) throw ConfigError("goh.beta must exceed 2, got " + std::to_string(goh_beta));
  if (!(goh_avg_degree >= 0.0)) throw ConfigError("goh.avg_degree must be nonnegative");
  if (physical_count == 0) throw ConfigError("physical layer must have at least one node");
  if (group_size == 0) throw ConfigError("group_size must be at least 1");
  if (group_size > physical_count) {
    throw ConfigError("group_size " + std::to_string(group_size) + " exceeds the physical layer size " +
                      std::to_string(physical_count));
  }
}

std::vector<Edge> gen_er_edges(std::size_t n, double p, Rng& rng) {
  check_probability(p, "edge probability");
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) edges.emplace_back(i, j);
  return edges;
}

std::vector<Edge> gen_er_cross_edges(std::size_t n_from, std::size_t n_to, double p, Rng& rng) {
  check_probability(p, "arc probability");
  std::vector<Edge> arcs;
  for (std::uint32_t i = 0; i < n_from; ++i)
    for (std::uint32_t j = 0; j < n_to; ++j)
      if (uniform01(rng) < p) arcs.emplace_back(i, j);
  return arcs;
}

double goh_mu(double beta) {
  if (!(beta > 1.0)) throw ConfigError("Goh exponent beta must exceed 1");
  return 1.0 / (beta - 1.0);
}

std::vector<Edge> gen_goh_edges(std::size_t n, double beta, double avg_degree, Rng& rng) {
  if (n < 2) throw ConfigError("Goh model needs at least 2 nodes");
  const double mu = goh_mu(beta);
  const auto target = static_cast<std::size_t>(std::floor(static_cast<double>(n) * avg_degree / 2.0));
  const std::size_t max_edges = n * (n - 1) / 2;
  if (target > max_edges) {
    throw ConfigError("Goh model cannot place " + std::to_string(target) + " edges on " + std::to_string(n) +
                      " nodes");
  }
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = std::pow(static_cast<double>(i + 1), -mu);
  std::discrete_distribution<std::uint32_t> pick(weights.begin(), weights.end());

  std::vector<bool> present(n * n, false);
  std::vector<Edge> edges;
  edges.reserve(target);
  while (edges.size() < target) {
    std::uint32_t i = pick(rng);
    std::uint32_t j = pick(rng);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    if (present[i * n + j]) continue;
    present[i * n + j] = true;
    edges.emplace_back(i, j);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

bool nw_lattice_pair(std::size_t n, std::size_t k, std::size_t i, std::size_t j) {
  const std::size_t d = i > j ? i - j : j - i;
  return i != j && std::min(d, n - d) <= k;
}

std::vector<Edge> gen_nw_edges(std::size_t n, std::size_t k, double p, Rng& rng) {
  if (n <= 2 * k) {
    throw ConfigError("NW model needs more than 2k = " + std::to_string(2 * k) + " nodes, got " + std::to_string(n));
  }
  check_probability(p, "shortcut probability");
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (nw_lattice_pair(n, k, i, j)) {
        edges.emplace_back(i, j);
      } else if (uniform01(rng) < p) {
        edges.emplace_back(i, j);
      }
    }
  }
  return edges;
}

namespace {

std::vector<Edge> within_block(const GeneratorConfig& cfg, std::size_t n, double er_p, double nw_p, Rng& rng) {
  switch (cfg.family) {
    case Family::er: return gen_er_edges(n, er_p, rng);
    case Family::goh: return n < 2 ? std::vector<Edge>{} : gen_goh_edges(n, cfg.goh_beta, cfg.goh_avg_degree, rng);
    case Family::nw: return gen_nw_edges(n, cfg.nw_k, nw_p, rng);
  }
  return {};
}

void add_mutual(std::vector<Arc>& arcs, const std::vector<Edge>& edges, NodeId offset) {
  for (const auto& [i, j] : edges) {
    arcs.emplace_back(offset + i, offset + j);
    arcs.emplace_back(offset + j, offset + i);
  }
}

}  // namespace

CombatNetwork build_dgcn(const GeneratorConfig& config, Rng& rng) {
  config.validate();
  const auto& counts = config.functional_counts;
  const auto n_g = static_cast<NodeId>(counts.total());
  const auto n_w = config.physical_count;

  NodeId block_start[4];
  std::vector<NodeKind> fkinds;
  for (int b = 0; b < 4; ++b) {
    block_start[b] = static_cast<NodeId>(fkinds.size());
    fkinds.insert(fkinds.end(), counts.of(kFunctionalKinds[b]), kFunctionalKinds[b]);
  }

  std::vector<Arc> physical_arcs;
  add_mutual(physical_arcs, within_block(config, n_w, config.er.cc, config.nw.cc, rng), n_g);

  std::vector<Arc> functional_arcs;
  const double er_within[4] = {config.er.oo, config.er.pp, config.er.dd, config.er.aa};
  const double nw_within[4] = {config.nw.oo, config.nw.pp, config.nw.dd, config.nw.aa};
  for (int b = 0; b < 4; ++b) {
    add_mutual(functional_arcs,
               within_block(config, counts.of(kFunctionalKinds[b]), er_within[b], nw_within[b], rng),
               block_start[b]);
  }
  const double cross_p[3] = {config.er.op, config.er.pd, config.er.da};
  for (int b = 0; b < 3; ++b) {
    for (const auto& [i, j] : gen_er_cross_edges(counts.of(kFunctionalKinds[b]), counts.of(kFunctionalKinds[b + 1]),
                                                 cross_p[b], rng)) {
      functional_arcs.emplace_back(block_start[b] + i, block_start[b + 1] + j);
    }
  }

  std::vector<NodeId> physical_ids(n_w);
  std::iota(physical_ids.begin(), physical_ids.end(), n_g);
  std::vector<std::vector<NodeId>> groups(n_g);
  for (auto& g : groups) {
    g.reserve(config.group_size);
    std::sample(physical_ids.begin(), physical_ids.end(), std::back_inserter(g), config.group_size, rng);
  }

  return CombatNetwork(LayerGraph(Layer::functional, 0, std::move(fkinds), std::move(functional_arcs)),
                       LayerGraph(Layer::physical, n_g, std::vector<NodeKind>(n_w, NodeKind::C),
                                  std::move(physical_arcs)),
                       DependencyMap(config.group_size, std::move(groups)));
}

}  // namespace dgcn
