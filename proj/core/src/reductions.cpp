#include "vcs/reductions.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <vector>

namespace vcs {

RuleSet RuleSet::ladder(int level) {
  VCS_CHECK(level >= 0 && level <= 4, "reduction preset out of range");
  RuleSet rs;
  if (level >= 1)
    rs.set(Rule::Degree1, true).set(Rule::Dominance, true).set(Rule::Fold2,
                                                               true);
  if (level >= 2) rs.set(Rule::Lp, true);
  if (level >= 3)
    rs.set(Rule::Unconfined, true)
        .set(Rule::Twin, true)
        .set(Rule::Funnel, true)
        .set(Rule::Desk, true);
  if (level >= 4) rs.set(Rule::Packing, true);
  return rs;
}

bool reduce_degree1(Graph& g, ReduceStats& stats) {
  bool any = false;
  std::vector<Vertex> stack;
  for (Vertex v : g.alive_vertices())
    if (g.degree(v) == 1) stack.push_back(v);
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (!g.alive(v) || g.degree(v) != 1) continue;
    Vertex u = -1;
    g.for_neighbors(v, [&](Vertex w) { u = w; });
    const std::vector<Vertex> watch = g.neighbors(u);
    g.exclude_vertex(v);
    ++stats.degree1;
    any = true;
    for (Vertex w : watch)
      if (g.alive(w) && g.degree(w) == 1) stack.push_back(w);
  }
  return any;
}

bool reduce_dominance(Graph& g, ReduceStats& stats) {
  std::vector<std::uint8_t> mark(static_cast<std::size_t>(g.slot_count()), 0);
  for (Vertex v = 0; v < g.slot_count(); ++v) {
    if (!g.alive(v) || g.degree(v) == 0) continue;
    mark[static_cast<std::size_t>(v)] = 1;
    g.for_neighbors(v, [&](Vertex u) { mark[static_cast<std::size_t>(u)] = 1; });
    Vertex dominated = -1;
    g.for_neighbors(v, [&](Vertex u) {
      if (dominated != -1 || g.degree(u) > g.degree(v)) return;
      bool inside = true;
      g.for_neighbors(u, [&](Vertex w) {
        if (!mark[static_cast<std::size_t>(w)]) inside = false;
      });
      if (inside) dominated = u;
    });
    mark[static_cast<std::size_t>(v)] = 0;
    g.for_neighbors(v, [&](Vertex u) { mark[static_cast<std::size_t>(u)] = 0; });
    if (dominated != -1) {
      g.include_vertex(v);
      ++stats.dominance;
      return true;
    }
  }
  return false;
}

namespace {

// Grows S from {v} as long as each best extension candidate leaves a
// single vertex outside N[S]; reports whether v must sit in a minimum
// cover.
bool is_unconfined(const Graph& g, Vertex v) {
  const std::size_t n = static_cast<std::size_t>(g.slot_count());
  std::vector<std::uint8_t> in_s(n, 0), in_ns(n, 0);
  auto extend = [&](Vertex s) {
    in_s[static_cast<std::size_t>(s)] = 1;
    in_ns[static_cast<std::size_t>(s)] = 1;
    g.for_neighbors(s, [&](Vertex u) { in_ns[static_cast<std::size_t>(u)] = 1; });
  };
  extend(v);
  for (;;) {
    Vertex best = -1;
    int best_outside = INT_MAX;
    for (Vertex u = 0; u < g.slot_count(); ++u) {
      if (!g.alive(u) || !in_ns[static_cast<std::size_t>(u)] ||
          in_s[static_cast<std::size_t>(u)])
        continue;
      int touches = 0, outside = 0;
      g.for_neighbors(u, [&](Vertex w) {
        if (in_s[static_cast<std::size_t>(w)])
          ++touches;
        else if (!in_ns[static_cast<std::size_t>(w)])
          ++outside;
      });
      if (touches != 1) continue;
      if (outside < best_outside) {
        best_outside = outside;
        best = u;
      }
    }
    if (best == -1) return false;
    if (best_outside == 0) return true;
    if (best_outside > 1) return false;
    Vertex next = -1;
    g.for_neighbors(best, [&](Vertex w) {
      if (next == -1 && !in_ns[static_cast<std::size_t>(w)]) next = w;
    });
    extend(next);
  }
}

}  // namespace

bool reduce_unconfined(Graph& g, ConstraintStore* store, ReduceStats& stats) {
  for (Vertex v = 0; v < g.slot_count(); ++v) {
    if (!g.alive(v) || g.degree(v) == 0) continue;
    if (!is_unconfined(g, v)) continue;
    if (store) {
      std::vector<Vertex> around = g.neighbors(v);
      const int rhs = static_cast<int>(around.size()) - 1;
      store->create(g, std::move(around), rhs);
    }
    g.include_vertex(v);
    ++stats.unconfined;
    return true;
  }
  return false;
}

bool reduce_lp(Graph& g, BipartiteDouble& bd, ReduceStats& stats) {
  const LpSolution sol = bd.extreme_solution(g);
  if (sol.ones.empty() && sol.zeros.empty()) return false;
  for (Vertex v : sol.ones) g.include_vertex(v);
  for (Vertex v : sol.zeros) g.discard_vertex(v);
  stats.lp += static_cast<long long>(sol.ones.size() + sol.zeros.size());
  return true;
}

bool reduce_fold2(Graph& g, ReduceStats& stats) {
  for (Vertex v = 0; v < g.slot_count(); ++v) {
    if (!g.alive(v) || g.degree(v) != 2) continue;
    const std::vector<Vertex> nb = g.neighbors(v);
    const Vertex a = nb[0], b = nb[1];
    if (g.has_edge(a, b)) continue;
    std::vector<Vertex> outer_nbrs;
    g.for_neighbors(a, [&](Vertex u) {
      if (u != v) outer_nbrs.push_back(u);
    });
    g.for_neighbors(b, [&](Vertex u) {
      if (u != v) outer_nbrs.push_back(u);
    });
    g.defer_vertex(v);
    g.defer_vertex(a);
    g.defer_vertex(b);
    const Vertex w = g.new_vertex(std::move(outer_nbrs));
    Fold fold;
    fold.kind = FoldKind::Degree2;
    fold.inner = {v};
    fold.outer = {a, b};
    fold.introduced = w;
    fold.extra_cover = 1;
    g.record_fold(std::move(fold));
    ++stats.fold2;
    return true;
  }
  return false;
}

bool reduce_twin(Graph& g, ReduceStats& stats) {
  std::map<std::vector<Vertex>, Vertex> seen;
  for (Vertex u = 0; u < g.slot_count(); ++u) {
    if (!g.alive(u) || g.degree(u) != 3) continue;
    const std::vector<Vertex> nb = g.neighbors(u);
    auto [it, fresh] = seen.try_emplace(nb, u);
    if (fresh) continue;
    const Vertex twin = it->second;
    const Vertex a = nb[0], b = nb[1], c = nb[2];
    if (g.has_edge(a, b) || g.has_edge(a, c) || g.has_edge(b, c)) {
      g.include_vertex(a);
      g.include_vertex(b);
      g.include_vertex(c);
    } else {
      std::vector<Vertex> outer_nbrs;
      for (Vertex x : nb)
        g.for_neighbors(x, [&](Vertex w) {
          if (w != twin && w != u) outer_nbrs.push_back(w);
        });
      g.defer_vertex(twin);
      g.defer_vertex(u);
      g.defer_vertex(a);
      g.defer_vertex(b);
      g.defer_vertex(c);
      const Vertex w = g.new_vertex(std::move(outer_nbrs));
      Fold fold;
      fold.kind = FoldKind::Twin;
      fold.inner = {twin, u};
      fold.outer = {a, b, c};
      fold.introduced = w;
      fold.extra_cover = 2;
      g.record_fold(std::move(fold));
    }
    ++stats.twin;
    return true;
  }
  return false;
}

namespace {

// Rewrites the graph for an alternative (every minimum cover can take
// all of side_a's owners or all of side_b's): common neighbors join
// the cover, the two sides leave with their choice deferred, and their
// remaining neighborhoods get joined so the leftover problem remembers
// the exclusion between them.
void apply_alternative(Graph& g, std::vector<Vertex> side_owners_a,
                       std::vector<Vertex> side_owners_b) {
  const std::size_t n = static_cast<std::size_t>(g.slot_count());
  std::vector<std::uint8_t> in_ab(n, 0), in_na(n, 0), in_nb(n, 0);
  for (Vertex x : side_owners_a) in_ab[static_cast<std::size_t>(x)] = 1;
  for (Vertex x : side_owners_b) in_ab[static_cast<std::size_t>(x)] = 1;
  for (Vertex x : side_owners_a)
    g.for_neighbors(x, [&](Vertex u) {
      if (!in_ab[static_cast<std::size_t>(u)])
        in_na[static_cast<std::size_t>(u)] = 1;
    });
  for (Vertex x : side_owners_b)
    g.for_neighbors(x, [&](Vertex u) {
      if (!in_ab[static_cast<std::size_t>(u)])
        in_nb[static_cast<std::size_t>(u)] = 1;
    });
  std::vector<Vertex> common, rest_a, rest_b;
  for (Vertex u = 0; u < g.slot_count(); ++u) {
    const std::size_t s = static_cast<std::size_t>(u);
    if (in_na[s] && in_nb[s])
      common.push_back(u);
    else if (in_na[s])
      rest_a.push_back(u);
    else if (in_nb[s])
      rest_b.push_back(u);
  }
  for (Vertex x : rest_a)
    for (Vertex y : rest_b)
      if (!g.has_edge(x, y)) g.add_edge(x, y);
  for (Vertex c : common) g.include_vertex(c);
  for (Vertex x : side_owners_a) g.defer_vertex(x);
  for (Vertex x : side_owners_b) g.defer_vertex(x);
  Fold fold;
  fold.kind = FoldKind::Alternative;
  fold.extra_cover = static_cast<int>(side_owners_a.size());
  fold.inner = std::move(side_owners_a);
  fold.outer = std::move(side_owners_b);
  fold.side_a = std::move(rest_a);
  fold.side_b = std::move(rest_b);
  g.record_fold(std::move(fold));
}

bool clique_among(const Graph& g, const std::vector<Vertex>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.has_edge(vs[i], vs[j])) return false;
  return true;
}

}  // namespace

bool reduce_funnel(Graph& g, ReduceStats& stats) {
  for (Vertex v = 0; v < g.slot_count(); ++v) {
    if (!g.alive(v) || g.degree(v) < 3) continue;
    const std::vector<Vertex> nb = g.neighbors(v);
    for (Vertex u : nb) {
      std::vector<Vertex> others;
      for (Vertex w : nb)
        if (w != u) others.push_back(w);
      if (!clique_among(g, others)) continue;
      apply_alternative(g, {u}, {v});
      ++stats.funnel;
      return true;
    }
  }
  return false;
}

bool reduce_desk(Graph& g, ReduceStats& stats) {
  auto degree_ok = [&](Vertex x) {
    const int d = g.degree(x);
    return d >= 3 && d <= 4;
  };
  for (Vertex a1 = 0; a1 < g.slot_count(); ++a1) {
    if (!g.alive(a1) || !degree_ok(a1)) continue;
    const std::vector<Vertex> nb1 = g.neighbors(a1);
    for (std::size_t i = 0; i < nb1.size(); ++i) {
      for (std::size_t j = i + 1; j < nb1.size(); ++j) {
        const Vertex b1 = nb1[i], b2 = nb1[j];
        if (!degree_ok(b1) || !degree_ok(b2) || g.has_edge(b1, b2)) continue;
        Vertex a2 = -1;
        g.for_neighbors(b1, [&](Vertex cand) {
          if (a2 != -1 || cand <= a1) return;
          if (!degree_ok(cand) || !g.has_edge(cand, b2) ||
              g.has_edge(a1, cand))
            return;
          std::vector<std::uint8_t> corner(
              static_cast<std::size_t>(g.slot_count()), 0);
          corner[static_cast<std::size_t>(a1)] = 1;
          corner[static_cast<std::size_t>(cand)] = 1;
          corner[static_cast<std::size_t>(b1)] = 1;
          corner[static_cast<std::size_t>(b2)] = 1;
          std::vector<std::uint8_t> outside_a(
              static_cast<std::size_t>(g.slot_count()), 0);
          int count_a = 0, count_b = 0;
          bool overlap = false;
          for (Vertex x : {a1, cand})
            g.for_neighbors(x, [&](Vertex w) {
              const std::size_t s = static_cast<std::size_t>(w);
              if (corner[s] || outside_a[s]) return;
              outside_a[s] = 1;
              ++count_a;
            });
          std::vector<std::uint8_t> outside_b(
              static_cast<std::size_t>(g.slot_count()), 0);
          for (Vertex x : {b1, b2})
            g.for_neighbors(x, [&](Vertex w) {
              const std::size_t s = static_cast<std::size_t>(w);
              if (corner[s] || outside_b[s]) return;
              outside_b[s] = 1;
              ++count_b;
              if (outside_a[s]) overlap = true;
            });
          if (count_a > 2 || count_b > 2 || overlap) return;
          a2 = cand;
        });
        if (a2 == -1) continue;
        apply_alternative(g, {a1, a2}, {b1, b2});
        ++stats.desk;
        return true;
      }
    }
  }
  return false;
}

ReduceOutcome run_reductions(Graph& g, const RuleSet& rules,
                             BipartiteDouble& bd, ConstraintStore* store,
                             ReduceStats& stats) {
  auto blocked = [&]() {
    if (!store) return false;
    store->sync(g);
    return store->unsatisfied(g);
  };
  if (blocked()) return {true};
  for (;;) {
    if (rules.enabled(Rule::Degree1) && reduce_degree1(g, stats)) {
      if (blocked()) return {true};
      continue;
    }
    if (rules.enabled(Rule::Dominance) && reduce_dominance(g, stats)) {
      if (blocked()) return {true};
      continue;
    }
    if (rules.enabled(Rule::Unconfined) &&
        reduce_unconfined(g, store, stats)) {
      if (blocked()) return {true};
      continue;
    }
    if (rules.enabled(Rule::Lp) && reduce_lp(g, bd, stats)) {
      if (blocked()) return {true};
      continue;
    }
    if (rules.enabled(Rule::Fold2) && reduce_fold2(g, stats)) {
      if (blocked()) return {true};
      continue;
    }
    if (rules.enabled(Rule::Twin) && reduce_twin(g, stats)) {
      if (blocked()) return {true};
      continue;
    }
    if (rules.enabled(Rule::Funnel) && reduce_funnel(g, stats)) {
      if (blocked()) return {true};
      continue;
    }
    if (rules.enabled(Rule::Desk) && reduce_desk(g, stats)) {
      if (blocked()) return {true};
      continue;
    }
    if (rules.enabled(Rule::Packing) && store) {
      const PackingReduceResult r = store->reduce(g);
      stats.packing_rhs_zero += r.fires_rhs_zero;
      stats.packing_rhs_positive += r.fires_rhs_positive;
      if (r.pruned) return {true};
      if (r.fires_rhs_zero + r.fires_rhs_positive > 0) continue;
    }
    return {false};
  }
}

}  // namespace vcs
