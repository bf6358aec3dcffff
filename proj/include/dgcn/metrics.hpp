#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dgcn/cascade.hpp"
#include "dgcn/matrix.hpp"
#include "dgcn/model.hpp"

namespace dgcn {

/// Per-node survival flag indexed by global id.
using AliveMask = std::vector<bool>;

AliveMask all_alive(const CombatNetwork& net);
AliveMask alive_mask(const CombatNetwork& net, const CascadeOutcome& outcome);

/// How a functional hop is validated through the physical layer.
///  - closure: some surviving dependency of the source reaches some
///    surviving dependency of the target over any surviving C path,
///    including a shared C node.
///  - single_hop: exactly one C-C link between the two dependency sets,
///    i.e. S_XC x S_CC x S_CY read literally.
enum class CommHops : std::uint8_t { closure, single_hop };

std::string_view comm_hops_name(CommHops mode);
std::optional<CommHops> parse_comm_hops(std::string_view name);

/// Largest-component scale: N_G + N_W before an attack, the surviving node
/// count afterwards.
std::size_t s_huge(const CombatNetwork& net, const AliveMask& alive);

/// Reflexive-transitive closure: boolean powers of (S + I) until a fixed
/// point. Throws StructuralError for non-square input.
BoolMatrix accessibility(const BoolMatrix& adj);

/// Functional arcs from_kind -> to_kind between survivors, gated by
/// communication reachability of the endpoints' dependency groups.
BoolMatrix comm_link_block(const CombatNetwork& net, const AliveMask& alive, NodeKind from_kind, NodeKind to_kind,
                           CommHops mode = CommHops::closure);

/// The seven combat-effectiveness link shapes, each an O..A kind sequence.
inline constexpr std::size_t kCelkShapeCount = 7;
const std::array<std::vector<NodeKind>, kCelkShapeCount>& celk_shapes();

struct CelkCounts {
  std::array<std::int64_t, kCelkShapeCount> per_shape{};
  std::int64_t total = 0;
};

/// Number of communication-validated O..A walks of each shape.
CelkCounts count_celks(const CombatNetwork& net, const AliveMask& alive, CommHops mode = CommHops::closure);

struct RobustnessReport {
  std::size_t s_huge_before = 0;
  std::size_t s_huge_after = 0;
  std::int64_t s_links_before = 0;
  std::int64_t s_links_after = 0;
  double alpha = 0.5;
  double huge_ratio = 0.0;
  double links_ratio = 0.0;
  double r = 0.0;
};

/// R = links_ratio^alpha * huge_ratio^(1 - alpha).
double robustness(double links_ratio, double huge_ratio, double alpha);

/// Scores a post-attack state against the baseline. Requires
/// s_links_before > 0 and s_huge_before > 0 (throws ConfigError otherwise).
RobustnessReport robustness(std::size_t s_huge_before, std::int64_t s_links_before, std::size_t s_huge_after,
                            std::int64_t s_links_after, double alpha);

}  // namespace dgcn
