#include "dgcn/model.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dgcn/errors.hpp"

namespace dgcn {

char kind_letter(NodeKind kind) {
  switch (kind) {
    case NodeKind::O: return 'O';
    case NodeKind::P: return 'P';
    case NodeKind::D: return 'D';
    case NodeKind::A: return 'A';
    case NodeKind::C: return 'C';
  }
  return '?';
}

std::optional<NodeKind> parse_kind(char letter) {
  switch (letter) {
    case 'O': return NodeKind::O;
    case 'P': return NodeKind::P;
    case 'D': return NodeKind::D;
    case 'A': return NodeKind::A;
    case 'C': return NodeKind::C;
    default: return std::nullopt;
  }
}

std::string_view layer_name(Layer layer) { return layer == Layer::functional ? "functional" : "physical"; }

bool functional_arc_allowed(NodeKind from, NodeKind to) {
  if (!is_functional(from) || !is_functional(to)) return false;
  if (from == to) return true;
  return (from == NodeKind::O && to == NodeKind::P) || (from == NodeKind::P && to == NodeKind::D) ||
         (from == NodeKind::D && to == NodeKind::A);
}

// ---------------------------------------------------------------------------

LayerGraph::LayerGraph(Layer layer, NodeId first_id, std::vector<NodeKind> kinds, std::vector<Arc> arcs)
    : layer_(layer), first_(first_id), kinds_(std::move(kinds)), arcs_(std::move(arcs)) {
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    const bool functional_kind = is_functional(kinds_[i]);
    if (functional_kind != (layer_ == Layer::functional)) {
      throw StructuralError("node " + std::to_string(first_ + i) + " of kind " + kind_letter(kinds_[i]) +
                            " does not belong to the " + std::string(layer_name(layer_)) + " layer");
    }
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

  adjacency_.assign(kinds_.size(), {});
  for (const auto& [u, v] : arcs_) {
    if (!contains(u) || !contains(v)) {
      throw StructuralError("arc " + std::to_string(u) + "->" + std::to_string(v) + " leaves the " +
                            std::string(layer_name(layer_)) + " layer");
    }
    if (u == v) throw StructuralError("self-arc on node " + std::to_string(u));
    const NodeKind ku = kind(u);
    const NodeKind kv = kind(v);
    const bool mutual_required = layer_ == Layer::physical || ku == kv;
    if (layer_ == Layer::functional && !functional_arc_allowed(ku, kv)) {
      throw StructuralError(std::string("functional arc type ") + kind_letter(ku) + "->" + kind_letter(kv) +
                            " is not allowed (" + std::to_string(u) + "->" + std::to_string(v) + ")");
    }
    if (mutual_required && !std::binary_search(arcs_.begin(), arcs_.end(), Arc{v, u})) {
      throw StructuralError("arc " + std::to_string(u) + "->" + std::to_string(v) +
                            " must appear in both directions");
    }
    adjacency_[local(u)].push_back(v);
    adjacency_[local(v)].push_back(u);
  }
  std::size_t degree_sum = 0;
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    degree_sum += adj.size();
  }
  edge_count_ = degree_sum / 2;
}

void LayerGraph::check(NodeId id) const {
  if (!contains(id)) {
    throw StructuralError("node " + std::to_string(id) + " is not in the " + std::string(layer_name(layer_)) +
                          " layer");
  }
}

NodeKind LayerGraph::kind(NodeId id) const {
  check(id);
  return kinds_[local(id)];
}

bool LayerGraph::has_arc(NodeId from, NodeId to) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{from, to});
}

std::span<const NodeId> LayerGraph::neighbors(NodeId id) const {
  check(id);
  return adjacency_[local(id)];
}

// ---------------------------------------------------------------------------

DependencyMap::DependencyMap(std::size_t group_size, std::vector<std::vector<NodeId>> groups)
    : group_size_(group_size), groups_(std::move(groups)) {
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    auto& g = groups_[i];
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end()) {
      throw StructuralError("dependency group of node " + std::to_string(i) + " repeats a physical node");
    }
    if (group_size_ > 0 && g.size() != group_size_) {
      throw StructuralError("dependency group of node " + std::to_string(i) + " has " + std::to_string(g.size()) +
                            " targets, expected " + std::to_string(group_size_));
    }
  }
}

std::span<const NodeId> DependencyMap::group(NodeId functional) const {
  if (functional >= groups_.size()) {
    throw StructuralError("no dependency group for node " + std::to_string(functional));
  }
  return groups_[functional];
}

// ---------------------------------------------------------------------------

CombatNetwork::CombatNetwork(LayerGraph functional, LayerGraph physical, DependencyMap deps)
    : functional_(std::move(functional)), physical_(std::move(physical)), deps_(std::move(deps)) {
  if (functional_.layer() != Layer::functional || physical_.layer() != Layer::physical) {
    throw StructuralError("layer graphs passed in the wrong order");
  }
  if (functional_.first_id() != 0 || physical_.first_id() != functional_.node_count()) {
    throw StructuralError("layers must occupy consecutive id ranges [0, N_G) and [N_G, N_G + N_W)");
  }
  if (deps_.size() != functional_.node_count()) {
    throw StructuralError("dependency map covers " + std::to_string(deps_.size()) + " nodes, functional layer has " +
                          std::to_string(functional_.node_count()));
  }
  if (deps_.group_size() > physical_.node_count()) {
    throw StructuralError("group size exceeds the physical layer size");
  }
  for (NodeId f = 0; f < functional_.node_count(); ++f) {
    for (NodeId c : deps_.group(f)) {
      if (!physical_.contains(c)) {
        throw StructuralError("node " + std::to_string(f) + " depends on " + std::to_string(c) +
                              ", which is not a physical node");
      }
    }
  }
  for (NodeId id = 0; id < node_count(); ++id) by_kind_[static_cast<int>(kind(id))].push_back(id);
}

Layer CombatNetwork::layer_of(NodeId id) const {
  if (functional_.contains(id)) return Layer::functional;
  if (physical_.contains(id)) return Layer::physical;
  throw StructuralError("unknown node id " + std::to_string(id));
}

NodeKind CombatNetwork::kind(NodeId id) const { return layer(layer_of(id)).kind(id); }

std::span<const NodeId> CombatNetwork::nodes_of_kind(NodeKind kind) const {
  return by_kind_[static_cast<int>(kind)];
}

std::vector<NodeId> neighbors(const CombatNetwork& net, Layer layer, NodeId node, bool same_type_only) {
  const auto& g = net.layer(layer);
  auto adj = g.neighbors(node);
  if (!same_type_only) return {adj.begin(), adj.end()};
  const NodeKind k = g.kind(node);
  std::vector<NodeId> out;
  for (NodeId v : adj)
    if (g.kind(v) == k) out.push_back(v);
  return out;
}

std::size_t degree(const CombatNetwork& net, Layer layer, NodeId node) {
  return net.layer(layer).neighbors(node).size();
}

BoolMatrix typed_block(const CombatNetwork& net, NodeKind from, NodeKind to) {
  const auto rows = net.nodes_of_kind(from);
  const auto cols = net.nodes_of_kind(to);
  BoolMatrix m(rows.size(), cols.size());
  auto column_of = [&](NodeId id) -> std::optional<std::size_t> {
    auto it = std::lower_bound(cols.begin(), cols.end(), id);
    if (it == cols.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - cols.begin());
  };

  if (is_functional(from) == is_functional(to)) {
    const auto& g = is_functional(from) ? net.functional() : net.physical();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto first = std::lower_bound(g.arcs().begin(), g.arcs().end(), Arc{rows[r], 0});
      for (auto it = first; it != g.arcs().end() && it->first == rows[r]; ++it) {
        if (auto c = column_of(it->second)) m.set(r, *c);
      }
    }
  } else if (is_functional(from)) {
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (NodeId c : net.deps().group(rows[r]))
        if (auto col = column_of(c)) m.set(r, *col);
  } else {
    // Dependency edges read symmetrically: S_CX = S_XC^T.
    return typed_block(net, to, from).transposed();
  }
  return m;
}

// ---------------------------------------------------------------------------

void write_network(std::ostream& out, const CombatNetwork& net) {
  out << net.functional_count() << ' ' << net.physical_count() << ' ' << net.deps().group_size() << '\n';
  for (NodeId id = 0; id < net.node_count(); ++id) out << id << ' ' << kind_letter(net.kind(id)) << '\n';
  for (const auto* g : {&net.functional(), &net.physical()})
    for (const auto& [u, v] : g->arcs()) out << u << ' ' << v << '\n';
  for (NodeId f = 0; f < net.functional_count(); ++f) {
    out << f << " ->";
    for (NodeId c : net.deps().group(f)) out << ' ' << c;
    out << '\n';
  }
}

namespace {

[[noreturn]] void bad_line(std::size_t line_no, const std::string& why) {
  throw FormatError("network file line " + std::to_string(line_no) + ": " + why);
}

NodeId parse_id(const std::string& token, std::size_t line_no) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(token, &pos);
  } catch (const std::exception&) {
    bad_line(line_no, "expected a node id, got '" + token + "'");
  }
  if (pos != token.size() || token.front() == '-') bad_line(line_no, "expected a node id, got '" + token + "'");
  return static_cast<NodeId>(v);
}

}  // namespace

CombatNetwork read_network(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&](std::string& dst) {
    while (std::getline(in, dst)) {
      ++line_no;
      const auto hash = dst.find('#');
      if (hash != std::string::npos) dst.erase(hash);
      if (dst.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_content_line(line)) throw FormatError("network file is empty");
  std::size_t n_g = 0, n_w = 0, group_size = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n_g >> n_w >> group_size) || (hs >> extra)) bad_line(line_no, "header must be 'N_G N_W group_size'");
  }
  const std::size_t total = n_g + n_w;
  std::vector<std::optional<NodeKind>> kinds(total);
  std::vector<Arc> functional_arcs, physical_arcs;
  std::vector<std::vector<NodeId>> groups(n_g);
  std::vector<bool> has_group(n_g, false);

  while (next_content_line(line)) {
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.size() >= 2 && tok[1] == "->") {
      const NodeId f = parse_id(tok[0], line_no);
      if (f >= n_g) bad_line(line_no, "dependency source " + tok[0] + " is not a functional node");
      if (has_group[f]) bad_line(line_no, "duplicate dependency line for node " + tok[0]);
      has_group[f] = true;
      for (std::size_t i = 2; i < tok.size(); ++i) groups[f].push_back(parse_id(tok[i], line_no));
      continue;
    }
    if (tok.size() != 2) bad_line(line_no, "expected 'id kind', 'u v' or 'f -> c ...'");
    const NodeId a = parse_id(tok[0], line_no);
    if (a >= total) bad_line(line_no, "node id " + tok[0] + " out of range");
    if (tok[1].size() == 1 && std::isalpha(static_cast<unsigned char>(tok[1][0]))) {
      auto k = parse_kind(tok[1][0]);
      if (!k) bad_line(line_no, "unknown node kind '" + tok[1] + "'");
      if (kinds[a]) bad_line(line_no, "node " + tok[0] + " declared twice");
      kinds[a] = *k;
      continue;
    }
    const NodeId b = parse_id(tok[1], line_no);
    if (b >= total) bad_line(line_no, "node id " + tok[1] + " out of range");
    if ((a < n_g) != (b < n_g)) bad_line(line_no, "arc crosses layers; use a dependency line");
    (a < n_g ? functional_arcs : physical_arcs).emplace_back(a, b);
  }

  std::vector<NodeKind> fk, pk;
  for (std::size_t id = 0; id < total; ++id) {
    if (!kinds[id]) throw FormatError("node " + std::to_string(id) + " has no kind declaration");
    (id < n_g ? fk : pk).push_back(*kinds[id]);
  }
  for (std::size_t f = 0; f < n_g; ++f)
    if (!has_group[f]) throw FormatError("node " + std::to_string(f) + " has no dependency line");

  return CombatNetwork(LayerGraph(Layer::functional, 0, std::move(fk), std::move(functional_arcs)),
                       LayerGraph(Layer::physical, static_cast<NodeId>(n_g), std::move(pk), std::move(physical_arcs)),
                       DependencyMap(group_size, std::move(groups)));
}

}  // namespace dgcn
