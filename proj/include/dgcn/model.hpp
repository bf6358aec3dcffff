#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dgcn/matrix.hpp"

namespace dgcn {

/// Dense node id. Functional nodes occupy [0, N_G), physical nodes
/// [N_G, N_G + N_W).
using NodeId = std::uint32_t;
using Arc = std::pair<NodeId, NodeId>;

/// O: intelligence obtaining, P: processing, D: decision/command,
/// A: attack/damage (functional layer); C: communication (physical layer).
enum class NodeKind : std::uint8_t { O, P, D, A, C };

enum class Layer : std::uint8_t { functional = 0, physical = 1 };

inline constexpr NodeKind kFunctionalKinds[] = {NodeKind::O, NodeKind::P, NodeKind::D, NodeKind::A};

char kind_letter(NodeKind kind);
std::optional<NodeKind> parse_kind(char letter);
std::string_view layer_name(Layer layer);
constexpr bool is_functional(NodeKind k) { return k != NodeKind::C; }

/// True when a functional arc from kind `from` to kind `to` is permitted:
/// mutual within-kind links, or one of the kill-chain steps O->P, P->D, D->A.
bool functional_arc_allowed(NodeKind from, NodeKind to);

/// One layer of the combat network. Stores typed nodes and directed arcs and
/// maintains an undirected neighbor view. Construction validates every layer
/// invariant and throws StructuralError on violation.
class LayerGraph {
 public:
  LayerGraph() = default;
  LayerGraph(Layer layer, NodeId first_id, std::vector<NodeKind> kinds, std::vector<Arc> arcs);

  Layer layer() const { return layer_; }
  NodeId first_id() const { return first_; }
  NodeId end_id() const { return first_ + static_cast<NodeId>(kinds_.size()); }
  std::size_t node_count() const { return kinds_.size(); }
  bool contains(NodeId id) const { return id >= first_ && id < end_id(); }
  std::size_t local(NodeId id) const { return id - first_; }

  NodeKind kind(NodeId id) const;
  std::span<const NodeKind> kinds() const { return kinds_; }
  /// Sorted, duplicate-free arcs.
  std::span<const Arc> arcs() const { return arcs_; }
  bool has_arc(NodeId from, NodeId to) const;
  /// Sorted undirected neighbor set (in-arcs and out-arcs merged).
  std::span<const NodeId> neighbors(NodeId id) const;
  /// Number of undirected edges (a mutual arc pair counts once).
  std::size_t edge_count() const { return edge_count_; }

 private:
  void check(NodeId id) const;

  Layer layer_ = Layer::functional;
  NodeId first_ = 0;
  std::vector<NodeKind> kinds_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// One-to-many dependency of functional nodes on physical nodes.
/// `group_size` > 0 demands that every group has exactly that many targets;
/// 0 declares variable-size groups (hand-built fixtures).
class DependencyMap {
 public:
  DependencyMap() = default;
  DependencyMap(std::size_t group_size, std::vector<std::vector<NodeId>> groups);

  std::size_t group_size() const { return group_size_; }
  std::size_t size() const { return groups_.size(); }
  /// Sorted physical targets of a functional node.
  std::span<const NodeId> group(NodeId functional) const;

 private:
  std::size_t group_size_ = 0;
  std::vector<std::vector<NodeId>> groups_;
};

/// Functional layer + physical layer + dependency edges (functional ->
/// physical only).
class CombatNetwork {
 public:
  CombatNetwork(LayerGraph functional, LayerGraph physical, DependencyMap deps);

  const LayerGraph& functional() const { return functional_; }
  const LayerGraph& physical() const { return physical_; }
  const LayerGraph& layer(Layer l) const { return l == Layer::functional ? functional_ : physical_; }
  const DependencyMap& deps() const { return deps_; }

  std::size_t functional_count() const { return functional_.node_count(); }
  std::size_t physical_count() const { return physical_.node_count(); }
  std::size_t node_count() const { return functional_count() + physical_count(); }

  bool contains(NodeId id) const { return id < node_count(); }
  /// Throws StructuralError for unknown ids.
  Layer layer_of(NodeId id) const;
  NodeKind kind(NodeId id) const;
  /// Ids of one kind in ascending order.
  std::span<const NodeId> nodes_of_kind(NodeKind kind) const;

 private:
  LayerGraph functional_;
  LayerGraph physical_;
  DependencyMap deps_;
  std::vector<NodeId> by_kind_[5];
};

/// Undirected-view neighbors of `node` within `layer`; with `same_type_only`
/// the result keeps only neighbors of the node's own kind.
std::vector<NodeId> neighbors(const CombatNetwork& net, Layer layer, NodeId node, bool same_type_only);

std::size_t degree(const CombatNetwork& net, Layer layer, NodeId node);

/// 0/1 block of the full adjacency matrix between the nodes of two kinds,
/// each indexed in ascending id order. Functional/functional and C/C blocks
/// come from arcs; functional/C blocks (either direction) from dependencies.
BoolMatrix typed_block(const CombatNetwork& net, NodeKind from, NodeKind to);

/// Text serialization; see docs/network-format.md.
void write_network(std::ostream& out, const CombatNetwork& net);
CombatNetwork read_network(std::istream& in);

}  // namespace dgcn
