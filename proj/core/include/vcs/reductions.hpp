#pragma once

#include <array>
#include <cstddef>

#include "vcs/graph.hpp"
#include "vcs/matching.hpp"
#include "vcs/packing.hpp"

namespace vcs {

enum class Rule : int {
  Degree1 = 0,
  Dominance,
  Unconfined,
  Lp,
  Fold2,
  Twin,
  Funnel,
  Desk,
  Packing,
};

inline constexpr int kRuleCount = 9;

// Which reductions the solver may apply.  ladder(level) reproduces the
// cumulative presets exposed on the command line: level 0 is none,
// 1 adds the degree and dominance rules plus degree-2 folding, 2 adds
// the relaxation fixing, 3 adds the neighborhood rules, 4 adds the
// constraint-driven rules.
struct RuleSet {
  std::array<bool, kRuleCount> on{};

  bool enabled(Rule r) const { return on[static_cast<std::size_t>(r)]; }
  RuleSet& set(Rule r, bool value) {
    on[static_cast<std::size_t>(r)] = value;
    return *this;
  }
  static RuleSet none() { return {}; }
  static RuleSet ladder(int level);
};

// Fire counts per rule, accumulated across a whole solve.
struct ReduceStats {
  long long degree1 = 0;
  long long dominance = 0;
  long long unconfined = 0;
  long long lp = 0;
  long long fold2 = 0;
  long long twin = 0;
  long long funnel = 0;
  long long desk = 0;
  long long packing_rhs_zero = 0;
  long long packing_rhs_positive = 0;
};

struct ReduceOutcome {
  bool pruned = false;
};

// Applies the enabled rules to a fixpoint, restarting from the first
// rule after every fire.  Returns pruned when a packing constraint
// shows the current branch cannot reach a valid cover.  The store may
// be null; the matching is reused across calls for incremental repair.
ReduceOutcome run_reductions(Graph& g, const RuleSet& rules,
                             BipartiteDouble& bd, ConstraintStore* store,
                             ReduceStats& stats);

// Single-batch entry points, exposed for targeted tests.  Each returns
// true when it changed the graph.
bool reduce_degree1(Graph& g, ReduceStats& stats);
bool reduce_dominance(Graph& g, ReduceStats& stats);
bool reduce_unconfined(Graph& g, ConstraintStore* store, ReduceStats& stats);
bool reduce_lp(Graph& g, BipartiteDouble& bd, ReduceStats& stats);
bool reduce_fold2(Graph& g, ReduceStats& stats);
bool reduce_twin(Graph& g, ReduceStats& stats);
bool reduce_funnel(Graph& g, ReduceStats& stats);
bool reduce_desk(Graph& g, ReduceStats& stats);

}  // namespace vcs
