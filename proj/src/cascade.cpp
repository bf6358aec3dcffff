#include "dgcn/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dgcn/errors.hpp"

namespace dgcn {

void CascadeParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive, got " + std::to_string(v));
  };
  auto unit = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  };
  positive(kappa_g, "kappa_g");
  positive(kappa_w, "kappa_w");
  positive(lambda_g, "lambda_g");
  positive(lambda_w, "lambda_w");
  positive(gamma_g, "gamma_g");
  positive(gamma_w, "gamma_w");
  if (!(delta_g >= 0.0)) throw ConfigError("delta_g must be nonnegative");
  if (!(delta_w >= 0.0)) throw ConfigError("delta_w must be nonnegative");
  unit(eta, "eta");
  unit(tau, "tau");
}

std::string_view cause_name(FailureCause cause) {
  switch (cause) {
    case FailureCause::attack: return "attack";
    case FailureCause::isolation: return "isolation";
    case FailureCause::dependency: return "dependency";
    case FailureCause::overload: return "overload";
  }
  return "?";
}

double NodeDynamics::total_load() const {
  return std::accumulate(load.begin(), load.end(), 0.0) + dropped[0] + dropped[1];
}

NodeDynamics init_dynamics(const CombatNetwork& net, const CascadeParams& params) {
  const std::size_t n = net.node_count();
  NodeDynamics dyn;
  dyn.initial_load.resize(n);
  dyn.capacity.resize(n);
  dyn.status.assign(n, NodeStatus::active);
  for (Layer layer : {Layer::functional, Layer::physical}) {
    const auto& g = net.layer(layer);
    for (NodeId id = g.first_id(); id < g.end_id(); ++id) {
      const auto adj = g.neighbors(id);
      double neighbor_degrees = 0.0;
      for (NodeId v : adj) neighbor_degrees += static_cast<double>(g.neighbors(v).size());
      const double l0 = std::pow(static_cast<double>(adj.size()) * neighbor_degrees, params.kappa(layer));
      dyn.initial_load[id] = l0;
      // L0 + lambda * L0^gamma, factored so that gamma = 1 gives (1 + lambda) * L0 bit for bit.
      dyn.capacity[id] = l0 > 0.0 ? l0 * (1.0 + params.lambda(layer) * std::pow(l0, params.gamma(layer) - 1.0)) : 0.0;
    }
  }
  dyn.load = dyn.initial_load;
  return dyn;
}

std::vector<Share> redistribution_shares(NodeId failed, const NodeDynamics& dyn, const CombatNetwork& net,
                                         const CascadeParams& params) {
  const Layer layer = net.layer_of(failed);
  std::vector<Share> shares;
  for (NodeId v : neighbors(net, layer, failed, layer == Layer::functional))
    if (dyn.active(v)) shares.push_back({v, 0.0});
  if (shares.empty()) return shares;

  double static_total = 0.0;
  double dynamic_total = 0.0;
  for (const auto& s : shares) {
    static_total += dyn.initial_load[s.node];
    dynamic_total += std::max(dyn.capacity[s.node] - dyn.load[s.node], 0.0);
  }
  const double uniform = 1.0 / static_cast<double>(shares.size());
  for (auto& s : shares) {
    const double static_part = static_total > 0.0 ? dyn.initial_load[s.node] / static_total : uniform;
    const double dynamic_part =
        dynamic_total > 0.0 ? std::max(dyn.capacity[s.node] - dyn.load[s.node], 0.0) / dynamic_total : static_part;
    s.fraction = params.eta * static_part + (1.0 - params.eta) * dynamic_part;
  }
  return shares;
}

void apply_redistribution(std::span<const NodeId> failed, NodeDynamics& dyn, const CombatNetwork& net,
                          const CascadeParams& params) {
  std::vector<NodeId> order(failed.begin(), failed.end());
  std::sort(order.begin(), order.end());
  std::vector<std::pair<NodeId, double>> gains;
  std::vector<std::pair<NodeId, double>> outgoing;
  for (NodeId j : order) {
    const double load = dyn.load[j];
    const auto shares = redistribution_shares(j, dyn, net, params);
    if (shares.empty()) {
      dyn.dropped[static_cast<int>(net.layer_of(j))] += load;
    } else {
      for (const auto& s : shares) gains.emplace_back(s.node, s.fraction * load);
    }
    outgoing.emplace_back(j, load);
  }
  for (const auto& [j, load] : outgoing) dyn.load[j] -= load;
  for (const auto& [k, gain] : gains) dyn.load[k] += gain;
}

double overload_probability(double load, double capacity, double delta) {
  if (load <= capacity) return 0.0;
  if (delta <= 0.0 || capacity <= 0.0) return 1.0;
  if (load >= (1.0 + delta) * capacity) return 1.0;
  return std::min((load - capacity) / (delta * capacity), 1.0);
}

std::vector<NodeId> isolation_sweep(const LayerGraph& layer, std::span<const NodeId> surviving) {
  std::vector<NodeId> nodes(surviving.begin(), surviving.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.empty()) return {};

  constexpr int kOut = -1;
  std::vector<int> component(layer.node_count(), kOut);
  for (NodeId v : nodes) component[layer.local(v)] = 0;

  // Components are discovered in ascending order of their smallest id, so a
  // strict '>' keeps the earliest of several equal-size maxima.
  int next = 0;
  int best = 0;
  std::size_t best_size = 0;
  std::vector<NodeId> stack;
  for (NodeId start : nodes) {
    if (component[layer.local(start)] != 0) continue;
    const int label = ++next;
    std::size_t size = 0;
    component[layer.local(start)] = label;
    stack.push_back(start);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId v : layer.neighbors(u)) {
        if (component[layer.local(v)] == 0) {
          component[layer.local(v)] = label;
          stack.push_back(v);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best = label;
    }
  }
  std::vector<NodeId> outside;
  for (NodeId v : nodes)
    if (component[layer.local(v)] != best) outside.push_back(v);
  return outside;
}

std::vector<NodeId> dependency_sweep(const CombatNetwork& net, const NodeDynamics& dyn, double tau) {
  std::vector<NodeId> out;
  for (NodeId f = 0; f < net.functional_count(); ++f) {
    if (!dyn.active(f)) continue;
    const auto group = net.deps().group(f);
    if (group.empty()) continue;
    std::size_t failed = 0;
    for (NodeId c : group)
      if (!dyn.active(c)) ++failed;
    if (static_cast<double>(failed) / static_cast<double>(group.size()) > tau) out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {
constexpr std::uint32_t kAlive = UINT32_MAX;
}

Cascade::Cascade(const CombatNetwork& net, const CascadeParams& params, Rng& overload_rng, CascadeHooks hooks)
    : net_(net),
      params_(params),
      rng_(overload_rng),
      hooks_(std::move(hooks)),
      dyn_(init_dynamics(net, params)),
      fail_round_(net.node_count(), kAlive) {}

std::vector<NodeId> Cascade::fail(std::span<const NodeId> nodes, FailureCause cause, std::uint32_t round) {
  std::vector<NodeId> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<NodeId> changed;
  for (NodeId id : sorted) {
    if (!net_.contains(id)) throw StructuralError("unknown node id " + std::to_string(id));
    if (!dyn_.active(id)) continue;
    dyn_.status[id] = NodeStatus::failed;
    fail_round_[id] = round;
    log_.push_back({round, id, cause});
    if (hooks_.on_failure) hooks_.on_failure(log_.back());
    changed.push_back(id);
  }
  return changed;
}

void Cascade::redistribute(std::span<const NodeId> failed) {
  if (failed.empty()) return;
  const double before = hooks_.on_redistribution ? dyn_.total_load() : 0.0;
  apply_redistribution(failed, dyn_, net_, params_);
  if (hooks_.on_redistribution) hooks_.on_redistribution(before, dyn_.total_load());
}

std::uint32_t Cascade::latest_round(Layer layer) const {
  const auto& g = net_.layer(layer);
  std::uint32_t latest = 0;
  for (NodeId id = g.first_id(); id < g.end_id(); ++id)
    if (fail_round_[id] != kAlive) latest = std::max(latest, fail_round_[id]);
  return latest;
}

std::vector<NodeId> Cascade::settle_layer(Layer layer) {
  const auto& g = net_.layer(layer);
  const double delta = params_.delta(layer);
  std::uint32_t round = latest_round(layer);
  std::vector<NodeId> pending;
  std::vector<NodeId> settled;
  std::vector<NodeId> survivors;
  for (;;) {
    ++iterations_;
    ++round;
    survivors.clear();
    for (NodeId id = g.first_id(); id < g.end_id(); ++id)
      if (dyn_.active(id)) survivors.push_back(id);

    const auto isolated = fail(isolation_sweep(g, survivors), FailureCause::isolation, round);

    std::vector<NodeId> batch;
    std::merge(pending.begin(), pending.end(), isolated.begin(), isolated.end(), std::back_inserter(batch));
    redistribute(batch);

    std::vector<NodeId> overloaded;
    for (NodeId id = g.first_id(); id < g.end_id(); ++id) {
      if (!dyn_.active(id)) continue;
      const double p = overload_probability(dyn_.load[id], dyn_.capacity[id], delta);
      if (p >= 1.0 || (p > 0.0 && uniform01(rng_) < p)) overloaded.push_back(id);
    }
    fail(overloaded, FailureCause::overload, round);

    settled.insert(settled.end(), isolated.begin(), isolated.end());
    settled.insert(settled.end(), overloaded.begin(), overloaded.end());
    if (isolated.empty() && overloaded.empty()) break;
    pending = std::move(overloaded);
  }
  std::sort(settled.begin(), settled.end());
  return settled;
}

std::vector<NodeId> Cascade::dependency_failures() {
  const auto nodes = dependency_sweep(net_, dyn_, params_.tau);
  for (NodeId f : nodes) {
    const auto group = net_.deps().group(f);
    std::vector<std::uint32_t> rounds;
    for (NodeId c : group)
      if (fail_round_[c] != kAlive) rounds.push_back(fail_round_[c]);
    std::sort(rounds.begin(), rounds.end());
    // First k at which k/|group| exceeded tau.
    std::size_t k = 1;
    while (k < rounds.size() &&
           !(static_cast<double>(k) / static_cast<double>(group.size()) > params_.tau)) {
      ++k;
    }
    const NodeId one[] = {f};
    fail(one, FailureCause::dependency, rounds[k - 1] + 1);
  }
  return nodes;
}

CascadeOutcome Cascade::outcome() const {
  CascadeOutcome out;
  for (NodeId id = 0; id < net_.node_count(); ++id) {
    if (!dyn_.active(id)) continue;
    (net_.layer_of(id) == Layer::functional ? out.surviving_functional : out.surviving_physical).push_back(id);
  }
  out.failure_log = log_;
  std::stable_sort(out.failure_log.begin(), out.failure_log.end(),
                   [](const FailureEvent& a, const FailureEvent& b) { return a.round < b.round; });
  for (const auto& e : log_) out.rounds = std::max(out.rounds, e.round + 1);
  return out;
}

CascadeOutcome run_cascade(const CombatNetwork& net, const CascadeParams& params, std::span<const NodeId> attack,
                           Rng& rng, const CascadeHooks& hooks) {
  for (NodeId id : attack)
    if (!net.contains(id)) throw StructuralError("attack targets unknown node id " + std::to_string(id));

  Cascade cascade(net, params, rng, hooks);
  const auto hit = cascade.fail(attack, FailureCause::attack, 0);
  cascade.redistribute(hit);

  const bool physical_hit =
      std::any_of(hit.begin(), hit.end(), [&](NodeId id) { return net.layer_of(id) == Layer::physical; });
  if (physical_hit) cascade.settle_layer(Layer::physical);

  const auto dependents = cascade.dependency_failures();
  cascade.redistribute(dependents);

  const bool functional_hit = !dependents.empty() || std::any_of(hit.begin(), hit.end(), [&](NodeId id) {
    return net.layer_of(id) == Layer::functional;
  });
  if (functional_hit) cascade.settle_layer(Layer::functional);

  return cascade.outcome();
}

}  // namespace dgcn
