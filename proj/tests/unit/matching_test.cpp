#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "support/oracles.hpp"
#include "vcs/graph.hpp"
#include "vcs/matching.hpp"

using vcs::BipartiteDouble;
using vcs::Graph;
using vcs::LpSolution;
using vcs::Vertex;

namespace {

// Every alive edge must be covered fractionally: 1 on a side, or both halves.
bool feasible(const Graph& g, const LpSolution& sol) {
  std::vector<int> value(static_cast<std::size_t>(g.slot_count()), -1);
  for (Vertex v : sol.zeros) value[static_cast<std::size_t>(v)] = 0;
  for (Vertex v : sol.halves) value[static_cast<std::size_t>(v)] = 1;
  for (Vertex v : sol.ones) value[static_cast<std::size_t>(v)] = 2;
  for (Vertex v = 0; v < g.slot_count(); ++v)
    if (g.alive(v) && value[static_cast<std::size_t>(v)] < 0) return false;
  for (const auto& [u, v] : oracles::edges_of(g))
    if (value[static_cast<std::size_t>(u)] + value[static_cast<std::size_t>(v)] < 2)
      return false;
  return true;
}

}  // namespace

TEST_CASE("matching size matches the reference on fixed shapes") {
  struct Shape {
    std::vector<oracles::Edge> edges;
    int n;
  };
  const std::vector<Shape> shapes = {
      {{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, 5},          // 5-cycle
      {{{0, 1}, {1, 2}, {2, 3}}, 4},                          // path
      {{{0, 1}, {0, 2}, {0, 3}}, 4},                          // star
      {{{0, 1}, {0, 2}, {1, 2}, {3, 4}}, 5},                  // triangle + edge
      {{}, 3},                                                // empty
  };
  for (const Shape& s : shapes) {
    Graph g(s.n, s.edges);
    BipartiteDouble bd;
    CHECK(bd.repair(g) == oracles::max_double_matching(s.n, s.edges));
  }
}

TEST_CASE("matching size matches the reference on random graphs") {
  std::mt19937 rng(61);
  for (int round = 0; round < 300; ++round) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto edges = oracles::random_edges(n, 0.15 + 0.07 * (round % 10), rng);
    Graph g(n, edges);
    BipartiteDouble bd;
    CHECK(bd.repair(g) == oracles::max_double_matching(n, edges));
  }
}

TEST_CASE("repair stays maximum across mutations and rollbacks") {
  std::mt19937 rng(62);
  for (int round = 0; round < 120; ++round) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const auto edges = oracles::random_edges(n, 0.35, rng);
    Graph g(n, edges);
    BipartiteDouble bd;
    std::vector<Graph::Mark> marks;
    for (int step = 0; step < 25; ++step) {
      const auto alive = g.alive_vertices();
      const int action = static_cast<int>(rng() % 4);
      if (action == 0 || (marks.empty() && action == 3)) {
        marks.push_back(g.mark());
      } else if (action == 1 && !alive.empty()) {
        g.include_vertex(alive[rng() % alive.size()]);
      } else if (action == 2 && !alive.empty()) {
        g.exclude_vertex(alive[rng() % alive.size()]);
      } else if (!marks.empty()) {
        g.rollback(marks.back());
        marks.pop_back();
      }
      CHECK(bd.repair(g) ==
            oracles::max_double_matching(g.slot_count(), oracles::edges_of(g)));
    }
  }
}

TEST_CASE("perfect is exactly a full matching") {
  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  BipartiteDouble bd1;
  CHECK(bd1.perfect(c4));

  Graph c3(3, {{0, 1}, {1, 2}, {2, 0}});
  BipartiteDouble bd2;
  CHECK(bd2.perfect(c3));

  Graph p3(3, {{0, 1}, {1, 2}});
  BipartiteDouble bd3;
  CHECK(!bd3.perfect(p3));
}

TEST_CASE("half integral solution is feasible and optimal") {
  std::mt19937 rng(63);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + static_cast<int>(rng() % 11);
    const auto edges = oracles::random_edges(n, 0.1 + 0.08 * (round % 9), rng);
    Graph g(n, edges);
    BipartiteDouble bd;
    const int m = bd.repair(g);
    const LpSolution sol = bd.half_integral_solution(g);
    CHECK(feasible(g, sol));
    CHECK(sol.objective() == doctest::Approx(m / 2.0));
  }
}

TEST_CASE("extreme solution is feasible, optimal, and integrally persistent") {
  std::mt19937 rng(64);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto edges = oracles::random_edges(n, 0.1 + 0.08 * (round % 9), rng);
    Graph g(n, edges);
    BipartiteDouble bd;
    const int m = bd.repair(g);
    const LpSolution sol = bd.extreme_solution(g);
    CHECK(feasible(g, sol));
    CHECK(sol.objective() == doctest::Approx(m / 2.0));
    CHECK(oracles::some_min_cover_respects(n, edges, sol.ones, sol.zeros));
  }
}

TEST_CASE("extreme halves admit only the all-half optimum") {
  std::mt19937 rng(65);
  for (int round = 0; round < 150; ++round) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto edges = oracles::random_edges(n, 0.1 + 0.08 * (round % 9), rng);
    Graph g(n, edges);
    BipartiteDouble bd;
    bd.repair(g);
    const LpSolution sol = bd.extreme_solution(g);

    // Induced subgraph on the half set, re-indexed.
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    const int h = static_cast<int>(sol.halves.size());
    for (int i = 0; i < h; ++i)
      index[static_cast<std::size_t>(sol.halves[static_cast<std::size_t>(i)])] = i;
    std::vector<oracles::Edge> hedges;
    for (const auto& [u, v] : edges)
      if (index[static_cast<std::size_t>(u)] >= 0 && index[static_cast<std::size_t>(v)] >= 0)
        hedges.push_back({index[static_cast<std::size_t>(u)], index[static_cast<std::size_t>(v)]});

    // Enumerate all {0, 1/2, 1} labelings of the half subgraph: the
    // all-half labeling must be its unique optimum.
    int optima = 0;
    int best_sum = 2 * h + 1;
    std::vector<int> twice(static_cast<std::size_t>(h), 1);
    long long total = 1;
    for (int i = 0; i < h; ++i) total *= 3;
    for (long long code = 0; code < total; ++code) {
      long long rest = code;
      int sum = 0;
      for (int i = 0; i < h; ++i) {
        twice[static_cast<std::size_t>(i)] = static_cast<int>(rest % 3);
        rest /= 3;
        sum += twice[static_cast<std::size_t>(i)];
      }
      bool ok = true;
      for (const auto& [u, v] : hedges) {
        if (twice[static_cast<std::size_t>(u)] + twice[static_cast<std::size_t>(v)] < 2) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      best_sum = std::min(best_sum, sum);
      if (sum == h) ++optima;
    }
    CHECK(best_sum == h);
    CHECK(optima == 1);
  }
}
