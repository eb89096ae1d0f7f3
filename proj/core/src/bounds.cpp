#include "vcs/bounds.hpp"

#include <algorithm>

namespace vcs {

CliqueCover clique_cover_bound(const Graph& g) {
  CliqueCover cc;
  std::vector<Vertex> order = g.alive_vertices();
  std::stable_sort(order.begin(), order.end(),
                   [&g](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });

  const size_t n = static_cast<size_t>(g.slot_count());
  std::vector<int> clique_of(n, -1);
  std::vector<int> hits;  // per existing clique, neighbors of v inside it
  for (Vertex v : order) {
    hits.assign(cc.cliques.size(), 0);
    g.for_neighbors(v, [&](Vertex u) {
      int c = clique_of[static_cast<size_t>(u)];
      if (c >= 0) ++hits[static_cast<size_t>(c)];
    });
    int best = -1;
    for (size_t c = 0; c < cc.cliques.size(); ++c) {
      if (hits[c] != static_cast<int>(cc.cliques[c].size())) continue;
      if (best == -1 || cc.cliques[c].size() > cc.cliques[static_cast<size_t>(best)].size())
        best = static_cast<int>(c);
    }
    if (best == -1) {
      best = static_cast<int>(cc.cliques.size());
      cc.cliques.emplace_back();
    }
    cc.cliques[static_cast<size_t>(best)].push_back(v);
    clique_of[static_cast<size_t>(v)] = best;
  }
  cc.bound = g.alive_count() - static_cast<int>(cc.cliques.size());
  return cc;
}

int lp_bound(const Graph& g, BipartiteDouble& bd) { return (bd.repair(g) + 1) / 2; }

CycleCover cycle_cover_bound(const Graph& g, BipartiteDouble& bd) {
  int matched = bd.repair(g);
  VCS_CHECK(matched == g.alive_count(), "cycle cover needs a perfect companion matching");

  CycleCover cv;
  const size_t n = static_cast<size_t>(g.slot_count());
  std::vector<std::uint8_t> done(n, 0);
  std::vector<int> pos(n, -1);
  std::vector<std::uint8_t> chord_mark(n, 0);

  for (Vertex s = 0; s < g.slot_count(); ++s) {
    if (!g.alive(s) || done[static_cast<size_t>(s)]) continue;
    std::vector<Vertex> cyc;
    for (Vertex v = s; !done[static_cast<size_t>(v)]; v = bd.partner_of_left(v)) {
      done[static_cast<size_t>(v)] = 1;
      cyc.push_back(v);
    }

    // An even cycle splits into two odd ones when positions i, j exist with
    // edges cyc[i]~cyc[j+1] and cyc[j]~cyc[i+1]; take the shortest odd piece
    // found by the scan. Each piece stays a genuine cycle because the chords
    // close both halves. One split leaves two odd cycles, so no rescans.
    int len = static_cast<int>(cyc.size());
    if (len >= 6 && len % 2 == 0) {
      for (int k = 0; k < len; ++k) pos[static_cast<size_t>(cyc[static_cast<size_t>(k)])] = k;
      int best_d = -1, best_i = -1;
      for (int i = 0; i < len; ++i) {
        for (int k = 0; k < len; ++k)
          chord_mark[static_cast<size_t>(cyc[static_cast<size_t>(k)])] = 0;
        g.for_neighbors(cyc[static_cast<size_t>(i)], [&](Vertex u) {
          if (pos[static_cast<size_t>(u)] >= 0)
            chord_mark[static_cast<size_t>(u)] = 1;  // neighbors of cyc[i] inside the cycle
        });
        Vertex succ = cyc[static_cast<size_t>((i + 1) % len)];
        g.for_neighbors(succ, [&](Vertex u) {
          int j = pos[static_cast<size_t>(u)];
          if (j < 0) return;  // u = cyc[j], adjacent to cyc[i+1]
          Vertex jn = cyc[static_cast<size_t>((j + 1) % len)];
          if (!chord_mark[static_cast<size_t>(jn)]) return;  // need cyc[i]~cyc[j+1]
          int d = ((j - i) % len + len) % len;
          if (d % 2 == 1 && (best_d == -1 || d < best_d)) {
            best_d = d;
            best_i = i;
          }
        });
      }
      for (int k = 0; k < len; ++k) pos[static_cast<size_t>(cyc[static_cast<size_t>(k)])] = -1;
      if (best_d != -1) {
        std::vector<Vertex> first, second;
        for (int k = 1; k <= best_d; ++k)
          first.push_back(cyc[static_cast<size_t>((best_i + k) % len)]);
        for (int k = best_d + 1; k <= len; ++k)
          second.push_back(cyc[static_cast<size_t>((best_i + k) % len)]);
        cv.cycles.push_back(std::move(first));
        cv.cycles.push_back(std::move(second));
        continue;
      }
    }
    cv.cycles.push_back(std::move(cyc));
  }

  for (const auto& cyc : cv.cycles)
    cv.bound += (static_cast<int>(cyc.size()) + 1) / 2;
  return cv;
}

int lower_bound(const Graph& g, BipartiteDouble& bd, BoundLevel level) {
  switch (level) {
    case BoundLevel::Counter:
      return 0;
    case BoundLevel::CliqueCover:
      return clique_cover_bound(g).bound;
    case BoundLevel::Lp:
      return lp_bound(g, bd);
    case BoundLevel::CycleCover: {
      if (bd.repair(g) == g.alive_count()) return cycle_cover_bound(g, bd).bound;
      return lp_bound(g, bd);
    }
    case BoundLevel::Best: {
      int b = std::max(clique_cover_bound(g).bound, lp_bound(g, bd));
      if (bd.repair(g) == g.alive_count())
        b = std::max(b, cycle_cover_bound(g, bd).bound);
      return b;
    }
  }
  return 0;
}

void validate_clique_cover(const Graph& g, const CliqueCover& cc) {
  std::vector<std::uint8_t> seen(static_cast<size_t>(g.slot_count()), 0);
  int total = 0;
  for (const auto& clique : cc.cliques) {
    VCS_CHECK(!clique.empty(), "empty clique");
    for (size_t i = 0; i < clique.size(); ++i) {
      Vertex v = clique[i];
      VCS_CHECK(g.alive(v), "clique member not alive");
      VCS_CHECK(!seen[static_cast<size_t>(v)], "clique cover overlaps");
      seen[static_cast<size_t>(v)] = 1;
      ++total;
      for (size_t j = i + 1; j < clique.size(); ++j)
        VCS_CHECK(g.has_edge(v, clique[j]), "clique member pair not adjacent");
    }
  }
  VCS_CHECK(total == g.alive_count(), "clique cover misses vertices");
  VCS_CHECK(cc.bound == g.alive_count() - static_cast<int>(cc.cliques.size()),
            "clique bound mismatch");
}

void validate_cycle_cover(const Graph& g, const CycleCover& cc) {
  std::vector<std::uint8_t> seen(static_cast<size_t>(g.slot_count()), 0);
  int total = 0, bound = 0;
  for (const auto& cyc : cc.cycles) {
    VCS_CHECK(cyc.size() >= 2, "cycle shorter than two vertices");
    for (size_t i = 0; i < cyc.size(); ++i) {
      Vertex v = cyc[i];
      VCS_CHECK(g.alive(v), "cycle member not alive");
      VCS_CHECK(!seen[static_cast<size_t>(v)], "cycle cover overlaps");
      seen[static_cast<size_t>(v)] = 1;
      ++total;
      Vertex next = cyc[(i + 1) % cyc.size()];
      if (cyc.size() > 2 || i == 0)
        VCS_CHECK(g.has_edge(v, next), "consecutive cycle vertices not adjacent");
    }
    bound += (static_cast<int>(cyc.size()) + 1) / 2;
  }
  VCS_CHECK(total == g.alive_count(), "cycle cover misses vertices");
  VCS_CHECK(bound == cc.bound, "cycle bound mismatch");
}

}  // namespace vcs
