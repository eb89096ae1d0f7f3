#pragma once

#include <cstdint>
#include <vector>

#include "vcs/bounds.hpp"
#include "vcs/graph.hpp"
#include "vcs/reductions.hpp"

namespace vcs {

struct SolverConfig {
  enum class Branching {
    Random = 0,
    MinDegree = 1,
    MaxDegree = 2,
  };

  Branching branching = Branching::MaxDegree;
  RuleSet rules = RuleSet::ladder(4);
  BoundLevel bound = BoundLevel::Best;
  // Take the forced companions of the branch vertex into the cover on
  // the include side.
  bool mirrors = true;
  // Track packing constraints across branches and reductions.
  bool packing = true;
  // Seed for the random branching policy.
  std::uint64_t seed = 0;
  // Wall-clock budget in seconds; zero means unlimited.
  double time_limit_s = 0.0;
};

struct SolveStats {
  long long branches = 0;
  long long prunes_bound = 0;
  long long prunes_packing = 0;
  ReduceStats fires;
  double elapsed_s = 0.0;
  bool completed = true;
};

struct SolveResult {
  // Size of the best cover found, -1 when the time limit struck before
  // any cover was completed.
  int size = -1;
  std::vector<Vertex> cover;
  bool completed = true;
  SolveStats stats;
};

// Finds a minimum vertex cover of g by branch and reduce.  The result
// names vertices of g; when completed is true the size is optimal.
SolveResult solve_vertex_cover(const Graph& g, const SolverConfig& cfg = {});

}  // namespace vcs
