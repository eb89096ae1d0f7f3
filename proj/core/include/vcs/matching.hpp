#pragma once

#include <vector>

#include "vcs/graph.hpp"

namespace vcs {

// Half-integral relaxation solution over the alive vertices.
struct LpSolution {
  std::vector<Vertex> zeros;
  std::vector<Vertex> ones;
  std::vector<Vertex> halves;
  double objective() const {
    return static_cast<double>(ones.size()) + static_cast<double>(halves.size()) / 2.0;
  }
};

// Bipartite companion of the current graph: a left and a right copy of
// every vertex, with l_u ~ r_v and l_v ~ r_u for each edge uv. The edge set
// is implicit (it always mirrors the graph); what this class owns is a
// maximum matching on that companion, kept warm across solver mutations.
//
// Matching pairs whose endpoints die together are left in place so a later
// rollback revives them for free; pairs with exactly one dead endpoint are
// dropped at the next repair. When the graph churned more than half of its
// alive vertices since the last repair, the matching is rebuilt from
// scratch instead of patched.
class BipartiteDouble {
 public:
  BipartiteDouble() = default;

  // Re-establishes a maximum matching after arbitrary graph edits and
  // returns its size (counted in matched left copies).
  int repair(const Graph& g);

  bool perfect(const Graph& g) { return repair(g) == g.alive_count(); }

  // Right partner of l_v, or -1.
  Vertex partner_of_left(Vertex v) const { return out_[static_cast<size_t>(v)]; }
  // Left partner of r_v, or -1.
  Vertex partner_of_right(Vertex v) const { return in_[static_cast<size_t>(v)]; }

  // Half-integral optimum read off a maximum matching via alternating
  // reachability from unmatched left copies.
  LpSolution half_integral_solution(const Graph& g);

  // Half-integral optimum with an inclusion-minimal Half set: strongly
  // connected components of the matching's orientation are rounded to
  // integral values, sources first, whenever doing so keeps the solution
  // feasible and optimal.
  LpSolution extreme_solution(const Graph& g);

 private:
  void ensure_size(const Graph& g);
  void compute_reach(const Graph& g);
  bool augment(const Graph& g, Vertex v);

  std::vector<Vertex> in_, out_;
  std::vector<int> level_;
  std::vector<std::uint8_t> reach_left_, reach_right_;
  std::vector<Vertex> queue_;
  Graph::Mark last_sync_ = 0;
  bool ever_synced_ = false;
};

}  // namespace vcs
