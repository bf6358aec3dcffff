#include "dgcn/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dgcn/errors.hpp"

namespace dgcn {

AliveMask all_alive(const CombatNetwork& net) { return AliveMask(net.node_count(), true); }

AliveMask alive_mask(const CombatNetwork& net, const CascadeOutcome& outcome) {
  AliveMask alive(net.node_count(), false);
  for (NodeId id : outcome.surviving_functional) alive[id] = true;
  for (NodeId id : outcome.surviving_physical) alive[id] = true;
  return alive;
}

std::string_view comm_hops_name(CommHops mode) { return mode == CommHops::closure ? "closure" : "single_hop"; }

std::optional<CommHops> parse_comm_hops(std::string_view name) {
  if (name == "closure") return CommHops::closure;
  if (name == "single_hop") return CommHops::single_hop;
  return std::nullopt;
}

std::size_t s_huge(const CombatNetwork& net, const AliveMask& alive) {
  std::size_t n = 0;
  for (NodeId id = 0; id < net.node_count(); ++id) n += alive[id] ? 1 : 0;
  return n;
}

BoolMatrix accessibility(const BoolMatrix& adj) {
  if (!adj.square()) throw StructuralError("accessibility needs a square matrix");
  const BoolMatrix step = adj | BoolMatrix::identity(adj.rows());
  BoolMatrix power = step;
  for (;;) {
    BoolMatrix next = power * step;
    if (next == power) return power;
    power = std::move(next);
  }
}

namespace {

/// Surviving C-C adjacency, physical nodes indexed by id - N_G.
BoolMatrix surviving_cc(const CombatNetwork& net, const AliveMask& alive) {
  const auto& g = net.physical();
  BoolMatrix cc(g.node_count(), g.node_count());
  for (const auto& [u, v] : g.arcs())
    if (alive[u] && alive[v]) cc.set(g.local(u), g.local(v));
  return cc;
}

/// Per functional node: the C nodes its surviving dependencies can hand
/// information to (`reach`), and the surviving dependencies themselves
/// (`endpoints`).
struct CommView {
  std::vector<BoolMatrix> reach;      // 1 x N_W rows, one per functional node
  std::vector<BoolMatrix> endpoints;  // 1 x N_W rows
};

CommView comm_view(const CombatNetwork& net, const AliveMask& alive, CommHops mode) {
  const auto& phys = net.physical();
  const BoolMatrix cc = surviving_cc(net, alive);
  const BoolMatrix hop = mode == CommHops::closure ? accessibility(cc) : cc;
  CommView view;
  view.reach.reserve(net.functional_count());
  view.endpoints.reserve(net.functional_count());
  for (NodeId f = 0; f < net.functional_count(); ++f) {
    BoolMatrix reach(1, phys.node_count());
    BoolMatrix ends(1, phys.node_count());
    if (alive[f]) {
      for (NodeId c : net.deps().group(f)) {
        if (!alive[c]) continue;
        const auto local = phys.local(c);
        ends.set(0, local);
        auto dst = reach.row(0);
        auto src = hop.row(local);
        for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
      }
    }
    view.reach.push_back(std::move(reach));
    view.endpoints.push_back(std::move(ends));
  }
  return view;
}

bool intersects(const BoolMatrix& a, const BoolMatrix& b) {
  auto ra = a.row(0);
  auto rb = b.row(0);
  for (std::size_t w = 0; w < ra.size(); ++w)
    if (ra[w] & rb[w]) return true;
  return false;
}

BoolMatrix gated_block(const CombatNetwork& net, const AliveMask& alive, const CommView& view, NodeKind from_kind,
                       NodeKind to_kind) {
  const auto rows = net.nodes_of_kind(from_kind);
  const auto cols = net.nodes_of_kind(to_kind);
  const BoolMatrix arcs = typed_block(net, from_kind, to_kind);
  BoolMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!alive[rows[i]]) continue;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!arcs.get(i, j) || !alive[cols[j]]) continue;
      if (intersects(view.reach[rows[i]], view.endpoints[cols[j]])) out.set(i, j);
    }
  }
  return out;
}

}  // namespace

BoolMatrix comm_link_block(const CombatNetwork& net, const AliveMask& alive, NodeKind from_kind, NodeKind to_kind,
                           CommHops mode) {
  if (!is_functional(from_kind) || !is_functional(to_kind)) {
    throw StructuralError("communication-gated blocks are defined between functional kinds only");
  }
  return gated_block(net, alive, comm_view(net, alive, mode), from_kind, to_kind);
}

const std::array<std::vector<NodeKind>, kCelkShapeCount>& celk_shapes() {
  using K = NodeKind;
  static const std::array<std::vector<NodeKind>, kCelkShapeCount> shapes = {{
      {K::O, K::P, K::D, K::A},
      {K::O, K::O, K::P, K::D, K::A},
      {K::O, K::P, K::P, K::D, K::A},
      {K::O, K::P, K::D, K::D, K::A},
      {K::O, K::O, K::P, K::P, K::D, K::A},
      {K::O, K::O, K::P, K::D, K::D, K::A},
      {K::O, K::O, K::P, K::P, K::D, K::D, K::A},
  }};
  return shapes;
}

CelkCounts count_celks(const CombatNetwork& net, const AliveMask& alive, CommHops mode) {
  const CommView view = comm_view(net, alive, mode);
  auto block = [&](NodeKind a, NodeKind b) { return IntMatrix(gated_block(net, alive, view, a, b)); };
  using K = NodeKind;
  const IntMatrix oo = block(K::O, K::O), op = block(K::O, K::P), pp = block(K::P, K::P);
  const IntMatrix pd = block(K::P, K::D), dd = block(K::D, K::D), da = block(K::D, K::A);
  auto pick = [&](NodeKind a, NodeKind b) -> const IntMatrix& {
    if (a == K::O && b == K::O) return oo;
    if (a == K::O && b == K::P) return op;
    if (a == K::P && b == K::P) return pp;
    if (a == K::P && b == K::D) return pd;
    if (a == K::D && b == K::D) return dd;
    return da;
  };

  CelkCounts counts;
  const auto& shapes = celk_shapes();
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    const auto& shape = shapes[s];
    IntMatrix walk = pick(shape[0], shape[1]);
    for (std::size_t h = 1; h + 1 < shape.size(); ++h) walk = walk * pick(shape[h], shape[h + 1]);
    // tr(W x J) with J the all-ones A->O closing matrix is the entry sum of W.
    counts.per_shape[s] = walk.sum();
    counts.total += counts.per_shape[s];
  }
  return counts;
}

double robustness(double links_ratio, double huge_ratio, double alpha) {
  return std::pow(links_ratio, alpha) * std::pow(huge_ratio, 1.0 - alpha);
}

RobustnessReport robustness(std::size_t s_huge_before, std::int64_t s_links_before, std::size_t s_huge_after,
                            std::int64_t s_links_after, double alpha) {
  if (s_links_before <= 0 || s_huge_before == 0) {
    throw ConfigError("robustness is undefined for a baseline without combat-effectiveness links");
  }
  RobustnessReport rep;
  rep.s_huge_before = s_huge_before;
  rep.s_huge_after = s_huge_after;
  rep.s_links_before = s_links_before;
  rep.s_links_after = s_links_after;
  rep.alpha = alpha;
  rep.huge_ratio = static_cast<double>(s_huge_after) / static_cast<double>(s_huge_before);
  rep.links_ratio = static_cast<double>(s_links_after) / static_cast<double>(s_links_before);
  rep.r = robustness(rep.links_ratio, rep.huge_ratio, alpha);
  return rep;
}

}  // namespace dgcn
