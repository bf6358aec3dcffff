#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "dgcn/attack.hpp"
#include "dgcn/errors.hpp"
#include "dgcn/generators.hpp"

using namespace dgcn;
using V = std::vector<NodeId>;

namespace {

CombatNetwork default_net(Family family, std::uint64_t seed) {
  GeneratorConfig config;
  config.family = family;
  auto rng = make_stream(seed, Stream::generation);
  return build_dgcn(config, rng);
}

V in_layer(const V& ids, const LayerGraph& g) {
  V out;
  for (NodeId id : ids)
    if (g.contains(id)) out.push_back(id);
  return out;
}

// Independent ranking: stable sort by degree only, over ids in ascending order.
V ranked(const CombatNetwork& net, Layer layer) {
  const auto& g = net.layer(layer);
  V ids;
  for (NodeId id = g.first_id(); id < g.end_id(); ++id) ids.push_back(id);
  std::stable_sort(ids.begin(), ids.end(),
                   [&](NodeId a, NodeId b) { return g.neighbors(a).size() > g.neighbors(b).size(); });
  return ids;
}

}  // namespace

TEST_CASE("target counts") {
  CHECK(target_count(0.1, 100) == 10);
  CHECK(target_count(0.1, 150) == 15);
  CHECK(target_count(0.025, 100) == 3);  // 2.5 rounds half up
  CHECK(target_count(0.025, 150) == 4);  // 3.75
  CHECK(target_count(0.15 * 0.5, 100) == 8);  // 7.5 despite binary representation
  CHECK(target_count(0.025, 100, Rounding::floor) == 2);
  CHECK(target_count(0.021, 100, Rounding::ceil) == 3);
  CHECK(target_count(0.0, 100, Rounding::ceil) == 0);
  CHECK(target_count(1.0, 100) == 100);
}

TEST_CASE("examples on default sizes") {
  auto net = default_net(Family::er, 1);
  Rng rng(1);
  auto ispa = select_targets(net, {AttackMode::ispa, 0.1}, rng);
  CHECK(ispa.size() == 10);
  const auto top = ranked(net, Layer::physical);
  CHECK(std::set<NodeId>(ispa.begin(), ispa.end()) == std::set<NodeId>(top.begin(), top.begin() + 10));

  auto ida = select_targets(net, {AttackMode::ida, 0.2}, rng);
  CHECK(in_layer(ida, net.physical()).size() == 10);
  CHECK(in_layer(ida, net.functional()).size() == 15);

  for (AttackMode mode : kAllAttackModes) CHECK(select_targets(net, {mode, 0.0}, rng).empty());
}

TEST_CASE("f outside [0, 1]") {
  auto net = default_net(Family::er, 2);
  Rng rng(1);
  CHECK_THROWS_AS(select_targets(net, {AttackMode::rda, -0.1}, rng), ConfigError);
  CHECK_THROWS_AS(select_targets(net, {AttackMode::rda, 1.1}, rng), ConfigError);
  CHECK_THROWS_AS(select_targets(net, {AttackMode::rda, std::nan("")}, rng), ConfigError);
}

TEST_CASE("property: sizes, layers, no duplicates, intended prefix") {
  for (Family family : {Family::er, Family::goh, Family::nw}) {
    auto net = default_net(family, 3);
    Rng rng(5);
    for (double f : {0.05, 0.15, 0.3, 0.4, 1.0}) {
      for (AttackMode mode : kAllAttackModes) {
        auto t = select_targets(net, {mode, f}, rng);
        CHECK(std::set<NodeId>(t.begin(), t.end()).size() == t.size());
        const bool dbl = mode == AttackMode::rda || mode == AttackMode::ida;
        const bool phys = mode == AttackMode::rspa || mode == AttackMode::ispa;
        const std::size_t np = dbl || phys ? target_count(dbl ? 0.5 * f : f, 100) : 0;
        const std::size_t nf = dbl || !phys ? target_count(dbl ? 0.5 * f : f, 150) : 0;
        const auto tp = in_layer(t, net.physical());
        const auto tf = in_layer(t, net.functional());
        CHECK(tp.size() == np);
        CHECK(tf.size() == nf);
        if (mode == AttackMode::ispa || mode == AttackMode::isfa || mode == AttackMode::ida) {
          for (Layer layer : {Layer::physical, Layer::functional}) {
            const auto picked = layer == Layer::physical ? tp : tf;
            const auto order = ranked(net, layer);
            CHECK(std::set<NodeId>(picked.begin(), picked.end()) ==
                  std::set<NodeId>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(picked.size())));
          }
        }
      }
    }
  }
}

TEST_CASE("property: random selection hits each node with frequency f") {
  auto net = default_net(Family::er, 4);
  constexpr int draws = 4000;
  constexpr double f = 0.2;
  std::vector<int> hits(net.node_count(), 0);
  for (int s = 0; s < draws; ++s) {
    auto rng = make_stream(s, Stream::attack);
    for (NodeId id : select_targets(net, {AttackMode::rsfa, f}, rng)) ++hits[id];
    for (NodeId id : select_targets(net, {AttackMode::rspa, f}, rng)) ++hits[id];
  }
  const double sigma = std::sqrt(f * (1 - f) / draws);
  // 250 nodes checked at 3 sigma; allow the handful of excursions expected
  // by chance (~0.3% each).
  int outside = 0;
  for (NodeId id = 0; id < net.node_count(); ++id)
    if (std::abs(static_cast<double>(hits[id]) / draws - f) > 3 * sigma) ++outside;
  CHECK(outside <= 4);
}

TEST_CASE("mode names") {
  CHECK(attack_mode_name(AttackMode::rsfa) == "RSFA");
  CHECK(parse_attack_mode("IDA") == AttackMode::ida);
  CHECK_FALSE(parse_attack_mode("ida").has_value());
  CHECK_FALSE(parse_attack_mode("XYZ").has_value());
  CHECK(parse_rounding("ceil") == Rounding::ceil);
  CHECK(rounding_name(Rounding::half_up) == "half_up");
}
