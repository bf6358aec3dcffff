#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <optional>
#include <vector>

#include "dgcn/model.hpp"
#include "dgcn/rng.hpp"

namespace dgcn {

/// Tunables of the load/capacity/failure dynamics. Suffix _g applies to the
/// functional layer, _w to the physical layer.
struct CascadeParams {
  double kappa_g = 0.5;   ///< load exponent
  double kappa_w = 0.5;
  double lambda_g = 1.0;  ///< capacity linear coefficient
  double lambda_w = 1.0;
  double gamma_g = 1.1;   ///< capacity exponent
  double gamma_w = 1.1;
  double delta_g = 0.3;   ///< overload endurance band
  double delta_w = 0.3;
  double eta = 0.5;       ///< static vs. dynamic redistribution mix
  double tau = 0.8;       ///< tolerated failed fraction of a dependency group

  double kappa(Layer l) const { return l == Layer::functional ? kappa_g : kappa_w; }
  double lambda(Layer l) const { return l == Layer::functional ? lambda_g : lambda_w; }
  double gamma(Layer l) const { return l == Layer::functional ? gamma_g : gamma_w; }
  double delta(Layer l) const { return l == Layer::functional ? delta_g : delta_w; }

  /// Throws ConfigError.
  void validate() const;
};

enum class NodeStatus : std::uint8_t { active, failed };

enum class FailureCause : std::uint8_t { attack, isolation, dependency, overload };

std::string_view cause_name(FailureCause cause);

/// Per-node runtime state, indexed by global node id.
struct NodeDynamics {
  std::vector<double> initial_load;
  std::vector<double> load;
  std::vector<double> capacity;
  std::vector<NodeStatus> status;
  /// Load that had no surviving recipient, per layer.
  std::array<double, 2> dropped{0.0, 0.0};

  bool active(NodeId id) const { return status[id] == NodeStatus::active; }
  /// Sum of all node loads plus dropped load; invariant under redistribution.
  double total_load() const;
};

struct FailureEvent {
  std::uint32_t round;
  NodeId node;
  FailureCause cause;

  friend bool operator==(const FailureEvent&, const FailureEvent&) = default;
};

struct CascadeOutcome {
  std::vector<NodeId> surviving_functional;
  std::vector<NodeId> surviving_physical;
  std::uint32_t rounds = 0;
  std::vector<FailureEvent> failure_log;
};

/// Optional observers. `on_redistribution` receives NodeDynamics::total_load()
/// before and after every redistribution step.
struct CascadeHooks {
  std::function<void(const FailureEvent&)> on_failure;
  std::function<void(double before, double after)> on_redistribution;
};

/// L(0) = (k_i * sum of neighbor degrees)^kappa within the node's own layer;
/// C = L(0) + lambda * L(0)^gamma.
NodeDynamics init_dynamics(const CombatNetwork& net, const CascadeParams& params);

struct Share {
  NodeId node;
  double fraction;
};

/// Split of a failed node's load across its surviving same-layer neighbors
/// (same kind only, in the functional layer):
///   eta * L_j(0)/sum L(0) + (1 - eta) * rc_j/sum rc,  rc_j = max(C_j - L_j, 0).
/// A zero remaining-capacity total falls back to the static ratio.
/// Empty when no candidate survives.
std::vector<Share> redistribution_shares(NodeId failed, const NodeDynamics& dyn, const CombatNetwork& net,
                                         const CascadeParams& params);

/// Moves the load of every node in `failed` onto its shares. Shares are
/// computed on the load table as it stands on entry; gains are applied
/// together afterwards. Orphaned load goes to `dyn.dropped`.
void apply_redistribution(std::span<const NodeId> failed, NodeDynamics& dyn, const CombatNetwork& net,
                          const CascadeParams& params);

/// 0 for L <= C, (L - C) / (delta * C) inside the critical band, 1 above
/// (1 + delta) * C. With delta = 0 or C = 0 any overload gives 1.
double overload_probability(double load, double capacity, double delta);

/// Survivors outside the largest connected component of the surviving
/// subgraph (undirected, all kinds). Equal-size components: the one holding
/// the smallest node id is kept.
std::vector<NodeId> isolation_sweep(const LayerGraph& layer, std::span<const NodeId> surviving);

/// Active functional nodes whose failed fraction of their full dependency
/// group is strictly greater than tau.
std::vector<NodeId> dependency_sweep(const CombatNetwork& net, const NodeDynamics& dyn, double tau);

/// State of one cascade run. The free function run_cascade composes the
/// steps; the class is exposed so individual stages can be driven directly.
class Cascade {
 public:
  Cascade(const CombatNetwork& net, const CascadeParams& params, Rng& overload_rng, CascadeHooks hooks = {});

  const NodeDynamics& dynamics() const { return dyn_; }
  NodeDynamics& dynamics() { return dyn_; }
  const std::vector<FailureEvent>& failure_log() const { return log_; }

  /// Marks nodes failed (already-failed nodes are skipped) and returns the
  /// ones that changed status.
  std::vector<NodeId> fail(std::span<const NodeId> nodes, FailureCause cause, std::uint32_t round);
  void redistribute(std::span<const NodeId> failed);

  /// Isolation -> redistribution -> overload draws, repeated until one
  /// iteration fails nothing. Returns every node failed while settling.
  std::vector<NodeId> settle_layer(Layer layer);

  /// Applies dependency_sweep, logging each failure one round after the
  /// physical failure that pushed its group past tau.
  std::vector<NodeId> dependency_failures();

  /// Number of settling iterations executed so far.
  std::size_t settle_iterations() const { return iterations_; }

  CascadeOutcome outcome() const;

 private:
  std::uint32_t latest_round(Layer layer) const;

  const CombatNetwork& net_;
  const CascadeParams& params_;
  Rng& rng_;
  CascadeHooks hooks_;
  NodeDynamics dyn_;
  std::vector<std::uint32_t> fail_round_;
  std::vector<FailureEvent> log_;
  std::size_t iterations_ = 0;
};

/// Attack -> physical settling -> group-dependency failures -> functional
/// settling. Dependency is one-way, so one pass reaches the steady state.
/// Throws StructuralError for unknown attack ids.
CascadeOutcome run_cascade(const CombatNetwork& net, const CascadeParams& params, std::span<const NodeId> attack,
                           Rng& rng, const CascadeHooks& hooks = {});

}  // namespace dgcn
