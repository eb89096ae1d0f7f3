#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "support/oracles.hpp"
#include "vcs/graph.hpp"
#include "vcs/matching.hpp"
#include "vcs/packing.hpp"
#include "vcs/reductions.hpp"

using vcs::BipartiteDouble;
using vcs::Graph;
using vcs::ReduceStats;
using vcs::Rule;
using vcs::RuleSet;
using vcs::Vertex;

namespace {

// A sound rewrite keeps the optimum: the booked weight, committed and
// deferred alike, plus the optimum of what is left equals the old one.
void check_preserves_optimum(const Graph& before, const Graph& after) {
  const int old_opt = oracles::min_cover_size(before);
  const int new_opt = oracles::min_cover_size(after);
  CHECK(old_opt == after.cover_weight() + new_opt);
}

}  // namespace

TEST_CASE("ladder presets accumulate") {
  const RuleSet r0 = RuleSet::ladder(0);
  for (int i = 0; i < vcs::kRuleCount; ++i)
    CHECK(!r0.on[static_cast<std::size_t>(i)]);
  const RuleSet r1 = RuleSet::ladder(1);
  CHECK(r1.enabled(Rule::Degree1));
  CHECK(r1.enabled(Rule::Dominance));
  CHECK(r1.enabled(Rule::Fold2));
  CHECK(!r1.enabled(Rule::Lp));
  const RuleSet r2 = RuleSet::ladder(2);
  CHECK(r2.enabled(Rule::Lp));
  CHECK(!r2.enabled(Rule::Twin));
  const RuleSet r3 = RuleSet::ladder(3);
  CHECK(r3.enabled(Rule::Unconfined));
  CHECK(r3.enabled(Rule::Twin));
  CHECK(r3.enabled(Rule::Funnel));
  CHECK(r3.enabled(Rule::Desk));
  CHECK(!r3.enabled(Rule::Packing));
  const RuleSet r4 = RuleSet::ladder(4);
  CHECK(r4.enabled(Rule::Packing));
}

TEST_CASE("degree-1 takes the neighbor") {
  Graph g(3, {{0, 1}, {1, 2}});
  ReduceStats stats;
  CHECK(vcs::reduce_degree1(g, stats));
  CHECK(stats.degree1 >= 1);
  CHECK(g.cover_weight() == 1);
  CHECK(!g.alive(1));
  CHECK(g.alive_edge_count() == 0);
}

TEST_CASE("degree-1 on a star leaves isolated leaves") {
  Graph g(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  ReduceStats stats;
  CHECK(vcs::reduce_degree1(g, stats));
  CHECK(g.cover_weight() == 1);
  CHECK(!g.alive(0));
  for (Vertex v = 1; v <= 5; ++v)
    if (g.alive(v)) CHECK(g.degree(v) == 0);
}

TEST_CASE("dominance includes the dominating vertex") {
  // Triangle with a pendant: 0 dominates its triangle partners.
  Graph g(4, {{0, 1}, {1, 2}, {2, 0}, {3, 0}});
  ReduceStats stats;
  CHECK(vcs::reduce_dominance(g, stats));
  CHECK(stats.dominance == 1);
  CHECK(!g.alive(0));
  CHECK(g.cover_weight() == 1);
}

TEST_CASE("dominance skips when nobody dominates") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  ReduceStats stats;
  CHECK(!vcs::reduce_dominance(g, stats));
}

TEST_CASE("unconfined fires on the 5-cycle") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  ReduceStats stats;
  CHECK(vcs::reduce_unconfined(g, nullptr, stats));
  CHECK(stats.unconfined == 1);
  CHECK(g.cover_weight() == 1);
  CHECK(!g.alive(0));
}

TEST_CASE("unconfined records a cap over the neighborhood") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  vcs::ConstraintStore store(g);
  ReduceStats stats;
  CHECK(vcs::reduce_unconfined(g, &store, stats));
  store.sync(g);
  REQUIRE(store.live_count() == 1);
  CHECK(store.live_constraints()[0].vars == std::vector<Vertex>{1, 4});
  CHECK(store.live_constraints()[0].rhs == 1);
}

TEST_CASE("unconfined leaves confined graphs alone") {
  // An even cycle: every witness search ends with two leftovers.
  Graph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  ReduceStats stats;
  CHECK(!vcs::reduce_unconfined(g, nullptr, stats));
}

TEST_CASE("relaxation fixing solves the path integrally") {
  const std::vector<oracles::Edge> edges{{0, 1}, {1, 2}, {2, 3}};
  Graph g(4, edges);
  BipartiteDouble bd;
  ReduceStats stats;
  CHECK(vcs::reduce_lp(g, bd, stats));
  CHECK(g.alive_count() == 0);
  CHECK(g.cover_weight() == 2);
  const auto x = g.resolve_assignment();
  std::vector<Vertex> cover;
  for (Vertex v = 0; v < 4; ++v)
    if (x[static_cast<std::size_t>(v)] == 1) cover.push_back(v);
  CHECK(cover.size() == 2);
  CHECK(oracles::is_cover(edges, cover, 4));
}

TEST_CASE("relaxation fixing leaves all-half graphs alone") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  BipartiteDouble bd;
  ReduceStats stats;
  CHECK(!vcs::reduce_lp(g, bd, stats));
  CHECK(g.alive_count() == 5);
}

TEST_CASE("degree-2 folding rewrites a path") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const Graph before = g;
  ReduceStats stats;
  CHECK(vcs::reduce_fold2(g, stats));
  CHECK(stats.fold2 == 1);
  CHECK(g.slot_count() == 6);
  CHECK(!g.alive(0));
  CHECK(!g.alive(1));
  CHECK(!g.alive(2));
  CHECK(g.alive(5));
  CHECK(g.has_edge(5, 3));
  REQUIRE(g.folds().size() == 1);
  CHECK(g.folds()[0].kind == vcs::FoldKind::Degree2);
  CHECK(g.folds()[0].extra_cover == 1);
  check_preserves_optimum(before, g);
}

TEST_CASE("degree-2 folding skips adjacent neighbors") {
  Graph g(3, {{0, 1}, {1, 2}, {2, 0}});
  ReduceStats stats;
  CHECK(!vcs::reduce_fold2(g, stats));
}

TEST_CASE("twins with an edge between the partners are included") {
  Graph g(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}});
  const Graph before = g;
  ReduceStats stats;
  CHECK(vcs::reduce_twin(g, stats));
  CHECK(stats.twin == 1);
  CHECK(g.cover_weight() == 3);
  CHECK(!g.alive(2));
  CHECK(!g.alive(3));
  CHECK(!g.alive(4));
  CHECK(g.folds().empty());
  check_preserves_optimum(before, g);
}

TEST_CASE("twins with an independent neighborhood fold") {
  Graph g(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
  const Graph before = g;
  ReduceStats stats;
  CHECK(vcs::reduce_twin(g, stats));
  CHECK(stats.twin == 1);
  CHECK(g.slot_count() == 6);
  CHECK(g.alive_count() == 1);
  CHECK(g.alive(5));
  REQUIRE(g.folds().size() == 1);
  CHECK(g.folds()[0].kind == vcs::FoldKind::Twin);
  CHECK(g.folds()[0].extra_cover == 2);
  check_preserves_optimum(before, g);
}

TEST_CASE("funnel splits around the odd neighbor") {
  Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {1, 4}, {2, 4}});
  const Graph before = g;
  ReduceStats stats;
  CHECK(vcs::reduce_funnel(g, stats));
  CHECK(stats.funnel == 1);
  CHECK(!g.alive(0));
  CHECK(!g.alive(1));
  CHECK(g.has_edge(2, 4));
  CHECK(g.has_edge(3, 4));
  CHECK(g.has_edge(2, 3));
  REQUIRE(g.folds().size() == 1);
  CHECK(g.folds()[0].kind == vcs::FoldKind::Alternative);
  CHECK(g.folds()[0].extra_cover == 1);
  check_preserves_optimum(before, g);
}

TEST_CASE("funnel includes the common neighborhood first") {
  // 0 and 1 share the neighbor 4; the funnel on 0 commits 4 and defers
  // the funnel pair.
  Graph g(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {2, 3}, {2, 4}, {3, 4}, {1, 4}, {1, 5}});
  const Graph before = g;
  ReduceStats stats;
  CHECK(vcs::reduce_funnel(g, stats));
  CHECK(!g.alive(4));
  check_preserves_optimum(before, g);
}

TEST_CASE("desk rewrites the chordless square") {
  Graph g(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
  const Graph before = g;
  ReduceStats stats;
  CHECK(vcs::reduce_desk(g, stats));
  CHECK(stats.desk == 1);
  for (Vertex v = 0; v < 4; ++v) CHECK(!g.alive(v));
  CHECK(g.has_edge(4, 5));
  CHECK(g.has_edge(4, 7));
  CHECK(g.has_edge(6, 5));
  CHECK(g.has_edge(6, 7));
  REQUIRE(g.folds().size() == 1);
  CHECK(g.folds()[0].kind == vcs::FoldKind::Alternative);
  CHECK(g.folds()[0].extra_cover == 2);
  check_preserves_optimum(before, g);
}

TEST_CASE("every single rule preserves the optimum on random graphs") {
  std::mt19937 rng(91);
  for (int round = 0; round < 250; ++round) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const auto edges = oracles::random_edges(n, 0.15 + 0.09 * (round % 8), rng);
    for (int rule = 0; rule < 8; ++rule) {
      Graph g(n, edges);
      const Graph before = g;
      ReduceStats stats;
      BipartiteDouble bd;
      bool fired = false;
      switch (rule) {
        case 0: fired = vcs::reduce_degree1(g, stats); break;
        case 1: fired = vcs::reduce_dominance(g, stats); break;
        case 2: fired = vcs::reduce_unconfined(g, nullptr, stats); break;
        case 3: fired = vcs::reduce_lp(g, bd, stats); break;
        case 4: fired = vcs::reduce_fold2(g, stats); break;
        case 5: fired = vcs::reduce_twin(g, stats); break;
        case 6: fired = vcs::reduce_funnel(g, stats); break;
        case 7: fired = vcs::reduce_desk(g, stats); break;
      }
      if (fired) check_preserves_optimum(before, g);
    }
  }
}

TEST_CASE("the full pipeline preserves the optimum and reaches a fixpoint") {
  std::mt19937 rng(92);
  for (int round = 0; round < 200; ++round) {
    const int n = 3 + static_cast<int>(rng() % 11);
    const auto edges = oracles::random_edges(n, 0.15 + 0.09 * (round % 8), rng);
    Graph g(n, edges);
    const Graph before = g;
    BipartiteDouble bd;
    ReduceStats stats;
    const vcs::ReduceOutcome out =
        vcs::run_reductions(g, RuleSet::ladder(3), bd, nullptr, stats);
    CHECK(!out.pruned);
    check_preserves_optimum(before, g);

    const std::size_t journal_before = g.journal().size();
    ReduceStats again;
    vcs::run_reductions(g, RuleSet::ladder(3), bd, nullptr, again);
    CHECK(g.journal().size() == journal_before);
  }
}

TEST_CASE("the pipeline is deterministic") {
  std::mt19937 rng(93);
  for (int round = 0; round < 50; ++round) {
    const int n = 4 + static_cast<int>(rng() % 10);
    const auto edges = oracles::random_edges(n, 0.3, rng);
    Graph a(n, edges);
    Graph b(n, edges);
    BipartiteDouble bda, bdb;
    ReduceStats sa, sb;
    vcs::run_reductions(a, RuleSet::ladder(3), bda, nullptr, sa);
    vcs::run_reductions(b, RuleSet::ladder(3), bdb, nullptr, sb);
    CHECK(oracles::edges_of(a) == oracles::edges_of(b));
    CHECK(a.cover_weight() == b.cover_weight());
    CHECK(a.journal().size() == b.journal().size());
  }
}
