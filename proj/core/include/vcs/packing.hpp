#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vcs/graph.hpp"

namespace vcs {

// One packing constraint: the number of included vertices among vars
// and suspended must stay at most rhs in any cover the current branch
// can still reach.  vars holds alive vertices; suspended holds
// vertices a fold rewrite removed before their value was decided.
// Both lists stay sorted and only name vertices of the original graph.
struct PackingConstraint {
  std::vector<Vertex> vars;
  std::vector<Vertex> suspended;
  int rhs = 0;
};

// Outcome of one packing reduction sweep.
struct PackingReduceResult {
  bool pruned = false;
  long long fires_rhs_zero = 0;
  long long fires_rhs_positive = 0;
};

// Set of packing constraints kept in lockstep with a Graph.  The store
// watches the graph journal: including a vertex drops it from every
// constraint and lowers the rhs by one, excluding drops it with the
// rhs unchanged, and a fold removal moves it to the suspended list.
// Every store edit is journaled so the solver can snapshot the store
// together with the graph and unwind both on backtrack.
class ConstraintStore {
 public:
  explicit ConstraintStore(const Graph& g);

  // Adds a constraint over the given vertices, which must be alive.
  // Returns false without storing anything when the constraint cannot
  // be tracked (a variable introduced by a fold) or can never bind
  // (rhs at least the variable count).  Duplicates are merged.
  bool create(const Graph& g, std::vector<Vertex> vars, int rhs);

  // Consumes graph events recorded since the last call and updates the
  // constraints.  Must run before unsatisfied() whenever the graph
  // changed.
  void sync(const Graph& g);

  // True when some constraint can no longer be satisfied.  Constraints
  // holding suspended variables are checked by resolving the fold case
  // splits against the decisions journaled so far.
  bool unsatisfied(const Graph& g);

  // Applies the two constraint-driven reductions until neither fires:
  // a constraint with rhs zero excludes all its variables (an edge
  // between two of them meaning a dead end), and a vertex adjacent to
  // more than rhs variables of one constraint gets included.  Both
  // spawn follow-up constraints.  Mutates the graph; callers re-run
  // their own reductions afterwards.
  PackingReduceResult reduce(Graph& g);

  // Snapshot of the store's edit journal.  Take a mark only after
  // sync(), and when unwinding roll the graph back first so the two
  // journals line up again.
  using Mark = std::size_t;
  Mark mark() const { return edits_.size(); }
  void rollback_to(Mark m, const Graph& g);

  // Number of constraints that still hold variables.
  std::size_t live_count() const;
  // Sum of list lengths over all constraints, for budget assertions.
  std::size_t footprint() const;
  // Constraints that still hold variables, in creation order, for
  // state-snapshot comparisons in tests.
  std::vector<PackingConstraint> live_constraints() const;

 private:
  enum class EditKind : std::uint8_t {
    Created,
    DroppedInclude,
    DroppedExclude,
    Suspended,
  };
  struct Edit {
    EditKind kind;
    int cid = -1;
    Vertex var = -1;
  };

  void drop_var(int cid, Vertex v, bool include);
  void suspend_var(int cid, Vertex v);

  int original_count_ = 0;
  std::vector<PackingConstraint> pool_;
  std::vector<std::vector<int>> by_var_;
  std::vector<Edit> edits_;
  std::size_t cursor_ = 0;
  int unsat_count_ = 0;
  int suspended_live_ = 0;

  std::uint64_t eval_version_ = 0;
  bool eval_result_ = false;
  bool eval_valid_ = false;
};

}  // namespace vcs
