#include <cmath>
#include <deque>
#include <functional>

#include "doctest.h"
#include "dgcn/errors.hpp"
#include "dgcn/generators.hpp"
#include "dgcn/metrics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dgcn;
using V = std::vector<NodeId>;

namespace {

BoolMatrix bfs_reach(const BoolMatrix& adj) {
  const std::size_t n = adj.rows();
  BoolMatrix out(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> q{s};
    seen[s] = true;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop_front();
      out.set(s, u);
      for (std::size_t v = 0; v < n; ++v)
        if (adj.get(u, v) && !seen[v]) {
          seen[v] = true;
          q.push_back(v);
        }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("accessibility") {
  SUBCASE("path") {
    BoolMatrix s(3, 3);
    s.set(0, 1);
    s.set(1, 2);
    auto c = accessibility(s);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(c.get(i, j) == (i <= j));
  }
  SUBCASE("zero matrix") {
    CHECK(accessibility(BoolMatrix(4, 4)) == BoolMatrix::identity(4));
  }
  SUBCASE("non-square") {
    CHECK_THROWS_AS(accessibility(BoolMatrix(2, 3)), StructuralError);
  }
}

TEST_CASE("property: accessibility matches search and is idempotent") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = trial < 100 ? 8 : 70 + trial % 7;  // also cross a word boundary
    const double p = 0.05 + 0.3 * uniform01(rng);
    BoolMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && uniform01(rng) < p * (n == 8 ? 1.0 : 0.05)) s.set(i, j);
    const auto c = accessibility(s);
    CHECK(c == bfs_reach(s));
    CHECK(accessibility(c) == c);
  }
}

TEST_CASE("s_huge") {
  GeneratorConfig config;
  auto rng = make_stream(1, Stream::generation);
  auto net = build_dgcn(config, rng);
  auto alive = all_alive(net);
  CHECK(s_huge(net, alive) == 250);
  for (NodeId f = 0; f < 150; ++f) alive[f] = false;
  CHECK(s_huge(net, alive) == 100);
  std::fill(alive.begin(), alive.end(), false);
  CHECK(s_huge(net, alive) == 0);
}

TEST_CASE("comm_link_block") {
  SUBCASE("shared communication node") {
    auto net = fixture::make("OP", {{0, 1}}, {}, 1, {}, {{0}, {0}});
    auto b = comm_link_block(net, all_alive(net), NodeKind::O, NodeKind::P);
    CHECK(b.get(0, 0));
    CHECK_FALSE(comm_link_block(net, all_alive(net), NodeKind::O, NodeKind::P, CommHops::single_hop).get(0, 0));
  }
  SUBCASE("source without surviving dependencies") {
    auto net = fixture::make("OP", {{0, 1}}, {}, 2, {{0, 1}}, {{0}, {1}});
    auto alive = all_alive(net);
    alive[2] = false;
    CHECK_FALSE(comm_link_block(net, alive, NodeKind::O, NodeKind::P).get(0, 0));
  }
  SUBCASE("dependencies in disconnected components") {
    auto net = fixture::make("OP", {{0, 1}}, {}, 3, {{0, 1}}, {{0}, {2}});
    CHECK_FALSE(comm_link_block(net, all_alive(net), NodeKind::O, NodeKind::P).get(0, 0));
    CHECK_FALSE(oracle::hop_ok(net, all_alive(net), 0, 1, CommHops::closure));
  }
  SUBCASE("closure vs single hop over a two-link path") {
    auto net = fixture::make("OP", {{0, 1}}, {}, 3, {{0, 1}, {1, 2}}, {{0}, {2}});
    auto alive = all_alive(net);
    CHECK(comm_link_block(net, alive, NodeKind::O, NodeKind::P).get(0, 0));
    CHECK_FALSE(comm_link_block(net, alive, NodeKind::O, NodeKind::P, CommHops::single_hop).get(0, 0));
    alive[3] = false;  // middle C node
    CHECK_FALSE(comm_link_block(net, alive, NodeKind::O, NodeKind::P).get(0, 0));
  }
  SUBCASE("failed endpoint zeroes the entry") {
    auto net = fixture::make("OP", {{0, 1}}, {}, 1, {}, {{0}, {0}});
    auto alive = all_alive(net);
    alive[1] = false;
    CHECK(comm_link_block(net, alive, NodeKind::O, NodeKind::P).count() == 0);
  }
  SUBCASE("physical kinds are rejected") {
    auto net = fixture::make("O", {}, {}, 1, {}, {{0}});
    CHECK_THROWS_AS(comm_link_block(net, all_alive(net), NodeKind::O, NodeKind::C), StructuralError);
  }
}

TEST_CASE("count_celks examples") {
  SUBCASE("single standard chain") {
    auto net = fixture::make("OPDA", {{0, 1}, {1, 2}, {2, 3}}, {}, 1, {}, {{0}, {0}, {0}, {0}});
    auto c = count_celks(net, all_alive(net));
    CHECK(c.total == 1);
    CHECK(c.per_shape[0] == 1);
  }
  SUBCASE("two sources into one chain") {
    auto net = fixture::make("OOPDA", {{0, 2}, {1, 2}, {2, 3}, {3, 4}}, {}, 1, {}, {{0}, {0}, {0}, {0}, {0}});
    CHECK(count_celks(net, all_alive(net)).total == 2);
  }
  SUBCASE("cooperative O-O hop adds the longer shape") {
    auto net =
        fixture::make("OOPDA", {{0, 2}, {1, 2}, {2, 3}, {3, 4}}, {{0, 1}}, 1, {}, {{0}, {0}, {0}, {0}, {0}});
    auto c = count_celks(net, all_alive(net));
    CHECK(c.per_shape[0] == 2);
    CHECK(c.per_shape[1] == 2);  // O0->O1->P and O1->O0->P
    CHECK(c.total == 4);
    CHECK(c.total == oracle::brute_force_celks(net, all_alive(net), CommHops::closure));
  }
  SUBCASE("no surviving A") {
    auto net = fixture::make("OPDA", {{0, 1}, {1, 2}, {2, 3}}, {}, 1, {}, {{0}, {0}, {0}, {0}});
    auto alive = all_alive(net);
    alive[3] = false;
    CHECK(count_celks(net, alive).total == 0);
    auto no_a = fixture::make("OPD", {{0, 1}, {1, 2}}, {}, 1, {}, {{0}, {0}, {0}});
    CHECK(count_celks(no_a, all_alive(no_a)).total == 0);
  }
}

TEST_CASE("property: count_celks equals brute-force walk enumeration") {
  Rng rng(32);
  int nonzero = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto net = fixture::random_small(rng, 12, 6, 0.5, 0.8, 0.6, 9);
    auto alive = all_alive(net);
    if (trial % 2)
      for (NodeId id = 0; id < net.node_count(); ++id) alive[id] = uniform01(rng) < 0.8;
    for (CommHops mode : {CommHops::closure, CommHops::single_hop}) {
      const auto counts = count_celks(net, alive, mode);
      std::int64_t sum = 0;
      for (auto x : counts.per_shape) sum += x;
      CHECK(sum == counts.total);
      CHECK(counts.total == oracle::brute_force_celks(net, alive, mode));
      nonzero += counts.total > 0 ? 1 : 0;
    }
  }
  MESSAGE("instances with links: " << nonzero << " of 800");
  CHECK(nonzero >= 300);
}

TEST_CASE("property: deleting a node never increases the link count") {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    auto net = fixture::random_small(rng, 12, 6, 0.4, 0.5, 0.4);
    auto alive = all_alive(net);
    std::int64_t last = count_celks(net, alive).total;
    for (int k = 0; k < 6; ++k) {
      alive[static_cast<NodeId>(uniform01(rng) * static_cast<double>(net.node_count()))] = false;
      const auto now = count_celks(net, alive).total;
      CHECK(now <= last);
      last = now;
    }
  }
}

TEST_CASE("robustness") {
  CHECK(robustness(1.0, 1.0, 0.5) == 1.0);
  CHECK(robustness(0.0, 0.7, 0.5) == 0.0);
  CHECK(robustness(0.25, 1.0, 0.5) == doctest::Approx(0.5));
  CHECK(robustness(0.25, 0.6, 1.0) == doctest::Approx(0.25));
  CHECK(robustness(0.25, 0.6, 0.0) == doctest::Approx(0.6));

  auto rep = robustness(250, 40, 200, 10, 0.5);
  CHECK(rep.huge_ratio == doctest::Approx(0.8));
  CHECK(rep.links_ratio == doctest::Approx(0.25));
  CHECK(rep.r == doctest::Approx(std::sqrt(0.2)));
  CHECK(robustness(250, 40, 250, 40, 0.5).r == 1.0);
  CHECK_THROWS_AS(robustness(250, 0, 250, 0, 0.5), ConfigError);
}

TEST_CASE("property: R bounds and monotonicity") {
  Rng rng(34);
  for (int i = 0; i < 2000; ++i) {
    const double l = uniform01(rng), h = uniform01(rng), a = uniform01(rng);
    const double r = robustness(l, h, a);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    CHECK(robustness(std::min(1.0, l + 0.1), h, a) >= r);
    CHECK(robustness(l, std::min(1.0, h + 0.1), a) >= r);
  }
}

TEST_CASE("shape table") {
  const auto& shapes = celk_shapes();
  CHECK(shapes[0] == std::vector<NodeKind>{NodeKind::O, NodeKind::P, NodeKind::D, NodeKind::A});
  CHECK(shapes[6].size() == 7);
  CHECK(parse_comm_hops("single_hop") == CommHops::single_hop);
  CHECK(comm_hops_name(CommHops::closure) == "closure");
}
