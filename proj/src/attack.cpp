#include "dgcn/attack.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <string>

#include "dgcn/errors.hpp"

namespace dgcn {

std::string_view attack_mode_name(AttackMode mode) {
  switch (mode) {
    case AttackMode::rspa: return "RSPA";
    case AttackMode::ispa: return "ISPA";
    case AttackMode::rsfa: return "RSFA";
    case AttackMode::isfa: return "ISFA";
    case AttackMode::rda: return "RDA";
    case AttackMode::ida: return "IDA";
  }
  return "?";
}

std::optional<AttackMode> parse_attack_mode(std::string_view name) {
  for (auto m : kAllAttackModes)
    if (attack_mode_name(m) == name) return m;
  return std::nullopt;
}

std::string_view rounding_name(Rounding r) {
  switch (r) {
    case Rounding::half_up: return "half_up";
    case Rounding::floor: return "floor";
    case Rounding::ceil: return "ceil";
  }
  return "?";
}

std::optional<Rounding> parse_rounding(std::string_view name) {
  for (auto r : {Rounding::half_up, Rounding::floor, Rounding::ceil})
    if (rounding_name(r) == name) return r;
  return std::nullopt;
}

std::size_t target_count(double ratio, std::size_t n, Rounding rounding) {
  // Absorbs binary representation error, e.g. 0.15 * 50 = 7.4999999999999991.
  constexpr double kSlack = 1e-9;
  const double x = ratio * static_cast<double>(n);
  double r = 0.0;
  switch (rounding) {
    case Rounding::half_up: r = std::floor(x + 0.5 + kSlack); break;
    case Rounding::floor: r = std::floor(x + kSlack); break;
    case Rounding::ceil: r = std::ceil(x - kSlack); break;
  }
  return std::min(static_cast<std::size_t>(std::max(r, 0.0)), n);
}

namespace {

std::vector<NodeId> layer_ids(const LayerGraph& g) {
  std::vector<NodeId> ids(g.node_count());
  std::iota(ids.begin(), ids.end(), g.first_id());
  return ids;
}

std::vector<NodeId> pick_random(const LayerGraph& g, std::size_t count, Rng& rng) {
  const auto ids = layer_ids(g);
  std::vector<NodeId> out;
  out.reserve(count);
  std::sample(ids.begin(), ids.end(), std::back_inserter(out), count, rng);
  return out;
}

std::vector<NodeId> pick_by_degree(const LayerGraph& g, std::size_t count) {
  auto ids = layer_ids(g);
  std::stable_sort(ids.begin(), ids.end(),
                   [&](NodeId a, NodeId b) { return g.neighbors(a).size() > g.neighbors(b).size(); });
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

std::vector<NodeId> select_targets(const CombatNetwork& net, const AttackSpec& spec, Rng& rng, Rounding rounding) {
  if (!(spec.f >= 0.0 && spec.f <= 1.0)) {
    throw ConfigError("attack ratio f must lie in [0, 1], got " + std::to_string(spec.f));
  }
  const auto& phys = net.physical();
  const auto& func = net.functional();
  auto pick = [&](const LayerGraph& g, double ratio, bool random) {
    const std::size_t count = target_count(ratio, g.node_count(), rounding);
    return random ? pick_random(g, count, rng) : pick_by_degree(g, count);
  };

  std::vector<NodeId> targets;
  switch (spec.mode) {
    case AttackMode::rspa: targets = pick(phys, spec.f, true); break;
    case AttackMode::ispa: targets = pick(phys, spec.f, false); break;
    case AttackMode::rsfa: targets = pick(func, spec.f, true); break;
    case AttackMode::isfa: targets = pick(func, spec.f, false); break;
    case AttackMode::rda:
    case AttackMode::ida: {
      const bool random = spec.mode == AttackMode::rda;
      auto p = pick(phys, 0.5 * spec.f, random);
      auto f = pick(func, 0.5 * spec.f, random);
      // Functional ids precede physical ids.
      targets = std::move(f);
      targets.insert(targets.end(), p.begin(), p.end());
      break;
    }
  }
  return targets;
}

}  // namespace dgcn
