#pragma once

#include <optional>
#include <vector>

#include "vcs/graph.hpp"
#include "vcs/matching.hpp"

namespace vcs {

// Lower bound ladder. Counter gives 0, the rest are real bounds; Best takes
// the maximum of all three.
enum class BoundLevel { Counter = 0, CliqueCover = 1, Lp = 2, CycleCover = 3, Best = 4 };

struct CliqueCover {
  std::vector<std::vector<Vertex>> cliques;  // disjoint, covering all alive vertices
  int bound = 0;                             // alive count minus clique count
};

struct CycleCover {
  std::vector<std::vector<Vertex>> cycles;  // disjoint cycles covering all alive vertices
  int bound = 0;                            // sum of ceil(len/2)
};

// Greedy clique cover: vertices ascending by (degree, id); each vertex joins
// the largest clique it is fully adjacent to (ties to the oldest clique),
// else starts a new one.
CliqueCover clique_cover_bound(const Graph& g);

// Relaxation bound: half the maximum matching size of the bipartite
// companion, rounded up.
int lp_bound(const Graph& g, BipartiteDouble& bd);

// Cycle cover read off a perfect matching of the bipartite companion: the
// matched successor function decomposes the alive vertices into cycles.
// Even cycles are split into two odd ones when a chord pair permits, which
// raises the bound by one. Requires a perfect matching; callers that cannot
// guarantee one use lower_bound() which falls back to the relaxation bound.
CycleCover cycle_cover_bound(const Graph& g, BipartiteDouble& bd);

// Bound at the given ladder level (Best = max of the three real bounds).
int lower_bound(const Graph& g, BipartiteDouble& bd, BoundLevel level);

// Structural validation used by tests: partition into real cliques / real
// cycles; throws InternalError on violation.
void validate_clique_cover(const Graph& g, const CliqueCover& cc);
void validate_cycle_cover(const Graph& g, const CycleCover& cc);

}  // namespace vcs
