#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "dgcn/generators.hpp"
#include "dgcn/model.hpp"
#include "dgcn/rng.hpp"

namespace fixture {

using dgcn::Arc;
using dgcn::NodeId;
using dgcn::NodeKind;

/// Builds a network from a kind string such as "OPPD" (functional ids in
/// order), directed functional arcs, undirected functional pairs (stored as
/// both arcs), undirected physical edges given as local C indices, and
/// dependency groups of local C indices.
inline dgcn::CombatNetwork make(std::string_view kinds, std::vector<Arc> arcs, std::vector<Arc> mutual,
                                std::size_t n_c, std::vector<Arc> c_edges,
                                std::vector<std::vector<NodeId>> groups, std::size_t group_size = 0) {
  std::vector<NodeKind> fk;
  for (char ch : kinds) fk.push_back(*dgcn::parse_kind(ch));
  const auto ng = static_cast<NodeId>(fk.size());
  for (auto [a, b] : mutual) {
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
  }
  std::vector<Arc> pa;
  for (auto [a, b] : c_edges) {
    pa.emplace_back(ng + a, ng + b);
    pa.emplace_back(ng + b, ng + a);
  }
  for (auto& g : groups)
    for (auto& c : g) c += ng;
  groups.resize(fk.size());
  return dgcn::CombatNetwork(dgcn::LayerGraph(dgcn::Layer::functional, 0, fk, arcs),
                             dgcn::LayerGraph(dgcn::Layer::physical, ng, std::vector<NodeKind>(n_c, NodeKind::C), pa),
                             dgcn::DependencyMap(group_size, std::move(groups)));
}

/// Small random network satisfying every structural invariant. Each node
/// depends on 1..min(3, n_c) physical nodes.
inline dgcn::CombatNetwork random_small(dgcn::Rng& rng, std::size_t max_g, std::size_t max_c, double p_within = 0.3,
                                        double p_cross = 0.3, double p_c = 0.4, std::size_t min_g = 4) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(dgcn::uniform01(rng) * static_cast<double>(hi - lo + 1));
  };
  const std::size_t ng = pick(min_g, max_g);
  const std::size_t nc = pick(1, max_c);
  std::vector<NodeKind> fk;
  for (std::size_t i = 0; i < ng; ++i) fk.push_back(dgcn::kFunctionalKinds[pick(0, 3)]);
  std::vector<Arc> arcs;
  for (NodeId i = 0; i < ng; ++i)
    for (NodeId j = 0; j < ng; ++j) {
      if (i == j) continue;
      if (fk[i] == fk[j]) {
        if (i < j && dgcn::uniform01(rng) < p_within) {
          arcs.emplace_back(i, j);
          arcs.emplace_back(j, i);
        }
      } else if (dgcn::functional_arc_allowed(fk[i], fk[j]) && dgcn::uniform01(rng) < p_cross) {
        arcs.emplace_back(i, j);
      }
    }
  const auto base = static_cast<NodeId>(ng);
  std::vector<Arc> pa;
  for (NodeId i = 0; i < nc; ++i)
    for (NodeId j = i + 1; j < nc; ++j)
      if (dgcn::uniform01(rng) < p_c) {
        pa.emplace_back(base + i, base + j);
        pa.emplace_back(base + j, base + i);
      }
  std::vector<std::vector<NodeId>> groups(ng);
  for (auto& g : groups) {
    const std::size_t size = pick(1, std::min<std::size_t>(3, nc));
    std::vector<NodeId> all;
    for (NodeId c = 0; c < nc; ++c) all.push_back(base + c);
    for (std::size_t k = 0; k < size; ++k) {
      const std::size_t at = pick(0, all.size() - 1);
      g.push_back(all[at]);
      all.erase(all.begin() + static_cast<std::ptrdiff_t>(at));
    }
  }
  return dgcn::CombatNetwork(dgcn::LayerGraph(dgcn::Layer::functional, 0, fk, arcs),
                             dgcn::LayerGraph(dgcn::Layer::physical, base, std::vector<NodeKind>(nc, NodeKind::C), pa),
                             dgcn::DependencyMap(0, std::move(groups)));
}

}  // namespace fixture
