#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcs {

using Vertex = int;

// Thrown when an internal invariant is violated. The CLI maps this to a
// dedicated exit code so corrupted state never masquerades as a result.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

#define VCS_CHECK(cond, msg) \
  do {                       \
    if (!(cond)) throw ::vcs::InternalError(msg); \
  } while (0)

enum class EventKind : std::uint8_t {
  IncludeVertex,  // removed and counted into the cover
  ExcludeVertex,  // removed, definitely not in the cover
  DeferVertex,    // removed, membership decided later by a fold record
  AddEdge,
  NewVertex,      // fresh slot appended by a fold-type rewrite
  FoldRecord,     // pure bookkeeping marker, no structural effect
};

struct Event {
  EventKind kind;
  Vertex a = -1;  // vertex, or left endpoint, or fold index
  Vertex b = -1;  // right endpoint for AddEdge
};

// Reversible rewrites that defer cover membership of the removed vertices.
enum class FoldKind : std::uint8_t {
  Degree2,      // inner = {v}, outer = its two neighbors, one new vertex
  Twin,         // inner = {u, v}, outer = their three common neighbors, one new vertex
  Alternative,  // inner = A, outer = B, no new vertex (funnel and desk rewrites)
};

struct Fold {
  FoldKind kind;
  std::vector<Vertex> inner;
  std::vector<Vertex> outer;
  // Alternative only: boundary sets N(A)\N[B] and N(B)\N[A] at rewrite time.
  std::vector<Vertex> side_a;
  std::vector<Vertex> side_b;
  Vertex introduced = -1;
  int extra_cover = 0;
};

// Vertex assignment values used during journal replay.
inline constexpr std::int8_t kUnassigned = -1;

// Undirected graph under a branch-and-reduce search: vertices are removed
// and revived constantly, so removal is a lazy alive-flag flip while
// adjacency vectors stay sorted and physically stable. Every mutation is
// journaled; rollback(mark) restores the exact prior state bit for bit.
class Graph {
 public:
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

  int slot_count() const { return static_cast<int>(adj_.size()); }
  int original_count() const { return original_count_; }
  int alive_count() const { return alive_count_; }
  long long alive_edge_count() const;
  int cover_weight() const { return cover_weight_; }

  bool alive(Vertex v) const { return alive_[static_cast<size_t>(v)] != 0; }
  int degree(Vertex v) const { return degree_[static_cast<size_t>(v)]; }
  bool has_edge(Vertex u, Vertex v) const;

  // Alive neighbors of v in ascending id order.
  template <class F>
  void for_neighbors(Vertex v, F&& f) const {
    for (Vertex u : adj_[static_cast<size_t>(v)])
      if (alive_[static_cast<size_t>(u)]) f(u);
  }
  std::vector<Vertex> neighbors(Vertex v) const;
  std::vector<Vertex> alive_vertices() const;

  // Mutations. include removes v and counts it; discard removes an isolated
  // vertex without counting it; exclude removes v by including all its
  // neighbors first; defer removes v pending a fold record's case split.
  void include_vertex(Vertex v);
  void discard_vertex(Vertex v);
  void exclude_vertex(Vertex v);
  void defer_vertex(Vertex v);
  void add_edge(Vertex u, Vertex v);
  Vertex new_vertex(std::vector<Vertex> nbrs);
  void record_fold(Fold fold);

  using Mark = std::size_t;
  Mark mark() const { return journal_.size(); }
  void rollback(Mark m);

  // Monotonic edit serial; ticks on every mutation and on every undone
  // event, so equal versions imply identical state.
  std::uint64_t version() const { return version_; }

  const std::vector<Event>& journal() const { return journal_; }
  const std::vector<Fold>& folds() const { return folds_; }

  // Connected components over alive vertices, each sorted ascending,
  // ordered by decreasing size with ties broken by smallest member id.
  std::vector<std::vector<Vertex>> components() const;

  // Replays the journal into a per-slot assignment: forward pass applies
  // include/exclude events, then fold records resolve deferred vertices
  // newest first. `overlay` pre-assigns vertices the journal never touched
  // (used when component subproblems were solved out of line).
  std::vector<std::int8_t> resolve_assignment(
      const std::vector<std::pair<Vertex, std::int8_t>>& overlay = {}) const;

  // Included original vertices implied by the journal; requires that every
  // original vertex resolves to a definite value.
  std::vector<Vertex> assemble_cover(
      const std::vector<std::pair<Vertex, std::int8_t>>& overlay = {}) const;

 private:
  void kill(Vertex v);
  void revive(Vertex v);

  int original_count_ = 0;
  int alive_count_ = 0;
  int cover_weight_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint8_t> alive_;
  std::vector<int> degree_;
  std::vector<Event> journal_;
  std::vector<Fold> folds_;
  std::uint64_t version_ = 0;
};

// Applies one fold record's case split to a partial assignment, in place.
// Values it cannot determine yet stay kUnassigned.
void apply_fold_case(const Fold& fold, std::vector<std::int8_t>& x);

}  // namespace vcs
