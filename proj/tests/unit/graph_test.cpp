#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "support/oracles.hpp"
#include "vcs/graph.hpp"

using vcs::Fold;
using vcs::FoldKind;
using vcs::Graph;
using vcs::Vertex;

namespace {

struct Snapshot {
  int slot_count;
  int alive_count;
  int cover_weight;
  std::vector<char> alive;
  std::vector<int> degree;
  std::vector<oracles::Edge> edges;
  std::size_t fold_count;

  bool operator==(const Snapshot&) const = default;
};

Snapshot snap(const Graph& g) {
  Snapshot s;
  s.slot_count = g.slot_count();
  s.alive_count = g.alive_count();
  s.cover_weight = g.cover_weight();
  for (Vertex v = 0; v < g.slot_count(); ++v) {
    s.alive.push_back(g.alive(v) ? 1 : 0);
    s.degree.push_back(g.degree(v));
  }
  s.edges = oracles::edges_of(g);
  s.fold_count = g.folds().size();
  return s;
}

}  // namespace

TEST_CASE("construction and accessors") {
  const Graph g(4, {{0, 1}, {1, 2}, {2, 0}, {3, 0}});
  CHECK(g.slot_count() == 4);
  CHECK(g.original_count() == 4);
  CHECK(g.alive_count() == 4);
  CHECK(g.alive_edge_count() == 4);
  CHECK(g.cover_weight() == 0);
  CHECK(g.degree(0) == 3);
  CHECK(g.degree(3) == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(1, 3));
  CHECK(g.neighbors(0) == std::vector<Vertex>{1, 2, 3});
  CHECK(g.alive_vertices() == std::vector<Vertex>{0, 1, 2, 3});
}

TEST_CASE("include removes the vertex and counts it") {
  Graph g(3, {{0, 1}, {1, 2}});
  g.include_vertex(1);
  CHECK(g.alive_count() == 2);
  CHECK(g.cover_weight() == 1);
  CHECK(!g.alive(1));
  CHECK(g.degree(0) == 0);
  CHECK(g.degree(2) == 0);
  CHECK(g.alive_edge_count() == 0);
}

TEST_CASE("exclude includes the neighborhood first") {
  Graph g(4, {{0, 1}, {0, 2}, {2, 3}});
  g.exclude_vertex(0);
  CHECK(!g.alive(0));
  CHECK(!g.alive(1));
  CHECK(!g.alive(2));
  CHECK(g.alive(3));
  CHECK(g.cover_weight() == 2);
  CHECK(g.degree(3) == 0);
}

TEST_CASE("discard requires no counting and keeps weight") {
  Graph g(2, {});
  g.discard_vertex(0);
  CHECK(g.alive_count() == 1);
  CHECK(g.cover_weight() == 0);
}

TEST_CASE("rollback restores state bit for bit") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 3}});
  const Snapshot start = snap(g);
  const Graph::Mark m0 = g.mark();

  g.include_vertex(1);
  const Snapshot after_include = snap(g);
  const Graph::Mark m1 = g.mark();

  g.add_edge(0, 2);
  CHECK(g.has_edge(0, 2));
  g.exclude_vertex(3);

  g.rollback(m1);
  CHECK(snap(g) == after_include);
  CHECK(!g.has_edge(0, 2));

  g.rollback(m0);
  CHECK(snap(g) == start);
}

TEST_CASE("version ticks on every mutation and every undo") {
  Graph g(3, {{0, 1}, {1, 2}});
  const std::uint64_t v0 = g.version();
  const Graph::Mark m = g.mark();
  g.include_vertex(1);
  const std::uint64_t v1 = g.version();
  CHECK(v1 > v0);
  g.rollback(m);
  CHECK(g.version() > v1);
}

TEST_CASE("new vertex appends a slot and rollback removes it") {
  Graph g(3, {{0, 1}, {1, 2}});
  const Graph::Mark m = g.mark();
  const Vertex w = g.new_vertex({0, 2});
  CHECK(w == 3);
  CHECK(g.slot_count() == 4);
  CHECK(g.original_count() == 3);
  CHECK(g.has_edge(w, 0));
  CHECK(g.has_edge(w, 2));
  CHECK(g.degree(0) == 2);
  g.rollback(m);
  CHECK(g.slot_count() == 3);
  CHECK(g.degree(0) == 1);
}

TEST_CASE("components sorted by size then smallest member") {
  Graph g(8, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {5, 6}, {6, 7}, {7, 5}});
  const auto comps = g.components();
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<Vertex>{0, 1, 2});
  CHECK(comps[1] == std::vector<Vertex>{5, 6, 7});
  CHECK(comps[2] == std::vector<Vertex>{3, 4});
}

TEST_CASE("isolated vertices form singleton components") {
  Graph g(3, {{0, 1}});
  const auto comps = g.components();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<Vertex>{0, 1});
  CHECK(comps[1] == std::vector<Vertex>{2});
}

TEST_CASE("resolve and assemble from a plain journal") {
  Graph g(2, {{0, 1}});
  g.include_vertex(0);
  g.discard_vertex(1);
  const auto x = g.resolve_assignment();
  CHECK(x[0] == 1);
  CHECK(x[1] == 0);
  CHECK(g.assemble_cover() == std::vector<Vertex>{0});
}

TEST_CASE("degree-2 fold replays to the path middle") {
  // Path 0 - 1 - 2 folded at the middle: the fresh vertex ends up
  // isolated, stays out of the cover, and the replay puts 1 in. The
  // deferred weight is booked the moment the fold is recorded.
  Graph g(3, {{0, 1}, {1, 2}});
  g.defer_vertex(1);
  g.defer_vertex(0);
  g.defer_vertex(2);
  const Vertex w = g.new_vertex({});
  Fold fold;
  fold.kind = FoldKind::Degree2;
  fold.inner = {1};
  fold.outer = {0, 2};
  fold.introduced = w;
  fold.extra_cover = 1;
  g.record_fold(fold);
  g.discard_vertex(w);
  CHECK(g.alive_count() == 0);
  CHECK(g.cover_weight() == 1);
  CHECK(g.assemble_cover() == std::vector<Vertex>{1});
}

TEST_CASE("degree-2 fold replays to the outer pair") {
  // Path 0 - 1 - 2 with an extra leaf on 0: folding the middle leaves
  // the fresh vertex adjacent to the leaf; including it puts 0 and 2 in.
  Graph g(4, {{0, 1}, {1, 2}, {0, 3}});
  g.defer_vertex(1);
  g.defer_vertex(0);
  g.defer_vertex(2);
  const Vertex w = g.new_vertex({3});
  Fold fold;
  fold.kind = FoldKind::Degree2;
  fold.inner = {1};
  fold.outer = {0, 2};
  fold.introduced = w;
  fold.extra_cover = 1;
  g.record_fold(fold);
  g.include_vertex(w);
  g.discard_vertex(3);
  const auto cover = g.assemble_cover();
  CHECK(cover == std::vector<Vertex>{0, 2});
  CHECK(g.cover_weight() == 2);
}

TEST_CASE("overlay resolves vertices the journal never touched") {
  Graph g(4, {{0, 1}, {2, 3}});
  g.include_vertex(0);
  const auto cover = g.assemble_cover({{1, 0}, {2, 1}, {3, 0}});
  CHECK(cover == std::vector<Vertex>{0, 2});
}

TEST_CASE("conflicting overlay is rejected") {
  Graph g(2, {{0, 1}});
  g.include_vertex(0);
  CHECK_THROWS_AS((void)g.resolve_assignment({{0, 0}}), vcs::InternalError);
}

TEST_CASE("random mutate and rollback stress") {
  std::mt19937 rng(20240817);
  for (int round = 0; round < 200; ++round) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const auto edges = oracles::random_edges(n, 0.4, rng);
    Graph g(n, edges);
    std::vector<std::pair<Graph::Mark, Snapshot>> stack;
    for (int step = 0; step < 30; ++step) {
      const auto alive = g.alive_vertices();
      const int action = static_cast<int>(rng() % 4);
      if (action == 0 || stack.empty()) {
        stack.push_back({g.mark(), snap(g)});
      } else if (action == 1 && !alive.empty()) {
        g.include_vertex(alive[rng() % alive.size()]);
      } else if (action == 2 && !alive.empty()) {
        g.exclude_vertex(alive[rng() % alive.size()]);
      } else if (!stack.empty()) {
        g.rollback(stack.back().first);
        CHECK(snap(g) == stack.back().second);
        stack.pop_back();
      }
    }
    while (!stack.empty()) {
      g.rollback(stack.back().first);
      CHECK(snap(g) == stack.back().second);
      stack.pop_back();
    }
  }
}
