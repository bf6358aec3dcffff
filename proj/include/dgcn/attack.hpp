#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dgcn/model.hpp"
#include "dgcn/rng.hpp"

namespace dgcn {

/// R/I: random or intended (degree-ranked); SP/SF: single physical or
/// functional layer; D: both layers with 0.5 f each.
enum class AttackMode : std::uint8_t { rspa, ispa, rsfa, isfa, rda, ida };

inline constexpr AttackMode kAllAttackModes[] = {AttackMode::rspa, AttackMode::ispa, AttackMode::rsfa,
                                                 AttackMode::isfa, AttackMode::rda,  AttackMode::ida};

std::string_view attack_mode_name(AttackMode mode);
std::optional<AttackMode> parse_attack_mode(std::string_view name);

enum class Rounding : std::uint8_t { half_up, floor, ceil };

std::string_view rounding_name(Rounding r);
std::optional<Rounding> parse_rounding(std::string_view name);

struct AttackSpec {
  AttackMode mode = AttackMode::ida;
  double f = 0.0;
};

/// round(ratio * n) under the given rule, clamped to n.
std::size_t target_count(double ratio, std::size_t n, Rounding rounding = Rounding::half_up);

/// Initial failure set for an attack. Degree ranking uses pre-attack
/// degrees, descending, ties by ascending id. Throws ConfigError when f is
/// outside [0, 1].
std::vector<NodeId> select_targets(const CombatNetwork& net, const AttackSpec& spec, Rng& rng,
                                   Rounding rounding = Rounding::half_up);

}  // namespace dgcn
