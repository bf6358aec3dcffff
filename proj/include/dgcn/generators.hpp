#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "dgcn/model.hpp"
#include "dgcn/rng.hpp"

namespace dgcn {

enum class Family : std::uint8_t { er, goh, nw };

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

/// Undirected edge or directed arc between local (block-relative) indices.
using Edge = std::pair<std::uint32_t, std::uint32_t>;

struct KindCounts {
  std::size_t o = 50;
  std::size_t p = 40;
  std::size_t d = 30;
  std::size_t a = 30;

  std::size_t of(NodeKind kind) const;
  std::size_t total() const { return o + p + d + a; }
};

/// Connection probabilities of the ER family. The cross-kind entries
/// (op, pd, da) drive the kill-chain arcs for every family.
struct ErProbs {
  double oo = 0.02, op = 0.03, pp = 0.05, pd = 0.03, dd = 0.05, da = 0.03, aa = 0.03, cc = 0.07;
};

/// Shortcut probabilities of the NW family.
struct NwProbs {
  double oo = 0.08, pp = 0.10, dd = 0.14, aa = 0.14, cc = 0.05;
};

struct GeneratorConfig {
  Family family = Family::er;
  KindCounts functional_counts;
  std::size_t physical_count = 100;
  ErProbs er;
  double goh_beta = 2.3;
  double goh_avg_degree = 6.0;
  std::size_t nw_k = 2;
  NwProbs nw;
  std::size_t group_size = 5;

  /// Throws ConfigError.
  void validate() const;
};

/// Each unordered pair {i, j} of n nodes independently with probability p.
std::vector<Edge> gen_er_edges(std::size_t n, double p, Rng& rng);

/// Each ordered (from, to) pair independently with probability p; `first`
/// indexes the source block, `second` the target block.
std::vector<Edge> gen_er_cross_edges(std::size_t n_from, std::size_t n_to, double p, Rng& rng);

/// Exponent mu = 1 / (beta - 1) of the static-model weights i^-mu.
double goh_mu(double beta);

/// Static scale-free model: node i (1-based) carries weight i^-mu; pairs are
/// drawn proportionally to weight products, rejecting self-loops and repeats,
/// until exactly floor(n * avg_degree / 2) distinct edges exist.
std::vector<Edge> gen_goh_edges(std::size_t n, double beta, double avg_degree, Rng& rng);

/// Newman-Watts small world: ring lattice with k neighbors per side plus
/// every non-lattice pair added independently with probability p.
std::vector<Edge> gen_nw_edges(std::size_t n, std::size_t k, double p, Rng& rng);

/// True when i and j are lattice neighbors of an n-ring with k per side.
bool nw_lattice_pair(std::size_t n, std::size_t k, std::size_t i, std::size_t j);

/// Generates a full two-layer network. Functional ids are laid out as
/// consecutive O, P, D, A blocks; within-kind structure follows the chosen
/// family, kill-chain arcs are always ER.
CombatNetwork build_dgcn(const GeneratorConfig& config, Rng& rng);

}  // namespace dgcn
