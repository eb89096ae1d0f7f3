#include "vcs/solver.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <memory>
#include <random>
#include <utility>

#include "vcs/matching.hpp"
#include "vcs/packing.hpp"

namespace vcs {
namespace {

using Clock = std::chrono::steady_clock;

// State one solve call threads through itself and every component
// subproblem: counters, the branching rng, and the wall-clock budget.
struct Shared {
  SolveStats stats;
  std::mt19937 rng;
  bool has_deadline = false;
  Clock::time_point deadline;
};

class Searcher {
 public:
  Searcher(Graph g, const SolverConfig& cfg, Shared& shared)
      : g_(std::move(g)), cfg_(cfg), shared_(shared) {
    if (cfg_.packing) store_ = std::make_unique<ConstraintStore>(g_);
  }

  // Explores every configuration that reaches a cover cheaper than
  // budget and returns the cheapest total, or budget when none exists.
  // On success best_assignment() holds the witness.
  int search(int budget) {
    if (store_) {
      slot_extra_ = store_->footprint();
      slot_budget_ =
          2 * static_cast<std::size_t>(g_.alive_edge_count()) + slot_extra_;
    }
    return solve(budget);
  }

  bool found() const { return best_size_ >= 0; }
  int best_size() const { return best_size_; }
  const std::vector<std::int8_t>& best_assignment() const {
    return best_assignment_;
  }

 private:
  bool out_of_time() {
    if (!shared_.has_deadline) return false;
    if (!shared_.stats.completed) return true;
    if (Clock::now() >= shared_.deadline) {
      shared_.stats.completed = false;
      return true;
    }
    return false;
  }

  void record(int total,
              const std::vector<std::pair<Vertex, std::int8_t>>& overlay) {
    if (best_size_ >= 0 && total >= best_size_) return;
    std::vector<std::int8_t> x = g_.resolve_assignment(overlay);
    const int n = g_.original_count();
    x.resize(static_cast<std::size_t>(n));
    int ones = 0;
    for (int v = 0; v < n; ++v) {
      VCS_CHECK(x[static_cast<std::size_t>(v)] != kUnassigned,
                "incomplete assignment at a solution");
      if (x[static_cast<std::size_t>(v)] == 1) ++ones;
    }
    VCS_CHECK(ones == total, "cover weight drifted from the assignment");
    best_size_ = total;
    best_assignment_ = std::move(x);
  }

  bool clique_among(const std::vector<Vertex>& vs) const {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (!g_.has_edge(vs[i], vs[j])) return false;
    return true;
  }

  // Vertices at distance two from v that every cover containing v must
  // contain as well: u qualifies when the neighbors of v it misses
  // induce a clique (or it misses none).
  void collect_mirrors(Vertex v, std::vector<Vertex>& take) const {
    const std::size_t n = static_cast<std::size_t>(g_.slot_count());
    std::vector<std::uint8_t> in_nv(n, 0), seen(n, 0);
    g_.for_neighbors(v, [&](Vertex u) { in_nv[static_cast<std::size_t>(u)] = 1; });
    seen[static_cast<std::size_t>(v)] = 1;
    std::vector<Vertex> cand;
    g_.for_neighbors(v, [&](Vertex u) {
      g_.for_neighbors(u, [&](Vertex w) {
        const std::size_t s = static_cast<std::size_t>(w);
        if (seen[s] || in_nv[s]) return;
        seen[s] = 1;
        cand.push_back(w);
      });
    });
    std::sort(cand.begin(), cand.end());
    std::vector<std::uint8_t> in_nu(n, 0);
    for (Vertex u : cand) {
      in_nu.assign(n, 0);
      g_.for_neighbors(u,
                       [&](Vertex w) { in_nu[static_cast<std::size_t>(w)] = 1; });
      std::vector<Vertex> missed;
      g_.for_neighbors(v, [&](Vertex w) {
        if (!in_nu[static_cast<std::size_t>(w)]) missed.push_back(w);
      });
      if (missed.empty() || clique_among(missed)) take.push_back(u);
    }
  }

  long long edges_in_neighborhood(Vertex v) const {
    std::vector<std::uint8_t> in_nv(static_cast<std::size_t>(g_.slot_count()),
                                    0);
    g_.for_neighbors(v, [&](Vertex u) { in_nv[static_cast<std::size_t>(u)] = 1; });
    long long cnt = 0;
    g_.for_neighbors(v, [&](Vertex x) {
      g_.for_neighbors(x, [&](Vertex y) {
        if (in_nv[static_cast<std::size_t>(y)]) ++cnt;
      });
    });
    return cnt / 2;
  }

  Vertex pick_branch_vertex() {
    const std::vector<Vertex> alive = g_.alive_vertices();
    VCS_CHECK(!alive.empty(), "branching on an empty graph");
    switch (cfg_.branching) {
      case SolverConfig::Branching::Random: {
        std::uniform_int_distribution<std::size_t> pick(0, alive.size() - 1);
        return alive[pick(shared_.rng)];
      }
      case SolverConfig::Branching::MinDegree: {
        Vertex best = alive.front();
        for (Vertex v : alive)
          if (g_.degree(v) < g_.degree(best)) best = v;
        return best;
      }
      case SolverConfig::Branching::MaxDegree:
        break;
    }
    int dmax = 0;
    for (Vertex v : alive) dmax = std::max(dmax, g_.degree(v));
    Vertex best = -1;
    long long best_cross = LLONG_MAX;
    for (Vertex v : alive) {
      if (g_.degree(v) != dmax) continue;
      const long long cross = edges_in_neighborhood(v);
      if (cross < best_cross) {
        best_cross = cross;
        best = v;
      }
    }
    return best;
  }

  int solve_split(const std::vector<std::vector<Vertex>>& comps, int k) {
    int total = g_.cover_weight();
    std::vector<std::pair<Vertex, std::int8_t>> overlay;
    std::vector<int> index(static_cast<std::size_t>(g_.slot_count()), -1);
    for (const std::vector<Vertex>& comp : comps) {
      const int budget = k - total;
      if (budget <= 0) return k;
      const int n = static_cast<int>(comp.size());
      std::fill(index.begin(), index.end(), -1);
      for (int i = 0; i < n; ++i)
        index[static_cast<std::size_t>(comp[i])] = i;
      std::vector<std::pair<Vertex, Vertex>> edges;
      for (int i = 0; i < n; ++i)
        g_.for_neighbors(comp[static_cast<std::size_t>(i)], [&](Vertex u) {
          const int j = index[static_cast<std::size_t>(u)];
          VCS_CHECK(j >= 0, "edge leaving a connected component");
          if (i < j) edges.emplace_back(i, j);
        });
      Searcher child(Graph(n, edges), cfg_, shared_);
      if (child.store_ && store_) {
        for (const PackingConstraint& c : store_->live_constraints()) {
          if (!c.suspended.empty()) continue;
          bool inside = true;
          std::vector<Vertex> mapped;
          mapped.reserve(c.vars.size());
          for (Vertex x : c.vars) {
            const int j = index[static_cast<std::size_t>(x)];
            if (j < 0) {
              inside = false;
              break;
            }
            mapped.push_back(j);
          }
          if (inside) child.store_->create(child.g_, std::move(mapped), c.rhs);
        }
      }
      const int got = child.search(budget);
      if (!shared_.stats.completed) return k;
      if (got >= budget) return k;
      total += got;
      const std::vector<std::int8_t>& assign = child.best_assignment();
      for (int i = 0; i < n; ++i)
        overlay.emplace_back(comp[static_cast<std::size_t>(i)],
                             assign[static_cast<std::size_t>(i)]);
    }
    record(total, overlay);
    return total;
  }

  int branch(int k) {
    const Vertex v = pick_branch_vertex();
    ++shared_.stats.branches;
    // Rewrites that add edges can push the graph past its starting size;
    // the linear-footprint budget tracks the high-water mark.
    if (store_)
      slot_budget_ = std::max(
          slot_budget_,
          2 * static_cast<std::size_t>(g_.alive_edge_count()) + slot_extra_);

    std::vector<Vertex> take = {v};
    if (cfg_.mirrors) collect_mirrors(v, take);
    const std::vector<Vertex> around = g_.neighbors(v);

    {
      const Graph::Mark m1 = g_.mark();
      ConstraintStore::Mark s1 = 0;
      if (store_) {
        store_->sync(g_);
        s1 = store_->mark();
        store_->create(g_, around, static_cast<int>(around.size()) - 1);
        VCS_CHECK(store_->footprint() <= slot_budget_,
                  "packing constraints exceed the linear size budget");
      }
      for (Vertex u : take) g_.include_vertex(u);
      const int r = solve(k);
      g_.rollback(m1);
      if (store_) store_->rollback_to(s1, g_);
      k = std::min(k, r);
    }

    bool feasible = true;
    std::vector<std::vector<Vertex>> residues;
    if (store_) {
      std::vector<std::uint8_t> closed(
          static_cast<std::size_t>(g_.slot_count()), 0);
      closed[static_cast<std::size_t>(v)] = 1;
      for (Vertex u : around) closed[static_cast<std::size_t>(u)] = 1;
      for (Vertex w : around) {
        std::vector<Vertex> residue;
        g_.for_neighbors(w, [&](Vertex x) {
          if (!closed[static_cast<std::size_t>(x)]) residue.push_back(x);
        });
        if (residue.empty()) {
          feasible = false;
          break;
        }
        residues.push_back(std::move(residue));
      }
    }
    if (!feasible) {
      ++shared_.stats.prunes_packing;
      return k;
    }
    {
      const Graph::Mark m2 = g_.mark();
      ConstraintStore::Mark s2 = 0;
      if (store_) {
        store_->sync(g_);
        s2 = store_->mark();
        for (std::vector<Vertex>& residue : residues) {
          const int rhs = static_cast<int>(residue.size()) - 1;
          store_->create(g_, std::move(residue), rhs);
        }
        VCS_CHECK(store_->footprint() <= slot_budget_,
                  "packing constraints exceed the linear size budget");
      }
      g_.exclude_vertex(v);
      const int r = solve(k);
      g_.rollback(m2);
      if (store_) store_->rollback_to(s2, g_);
      k = std::min(k, r);
    }
    return k;
  }

  int solve(int k) {
    if (out_of_time()) return k;

    const Graph::Mark m0 = g_.mark();
    ConstraintStore::Mark s0 = 0;
    if (store_) {
      store_->sync(g_);
      s0 = store_->mark();
    }
    auto unwind = [&]() {
      g_.rollback(m0);
      if (store_) store_->rollback_to(s0, g_);
    };

    if (run_reductions(g_, cfg_.rules, bd_, store_.get(), shared_.stats.fires)
            .pruned) {
      ++shared_.stats.prunes_packing;
      unwind();
      return k;
    }
    for (Vertex v : g_.alive_vertices())
      if (g_.degree(v) == 0) g_.discard_vertex(v);
    if (store_) store_->sync(g_);

    const int weight = g_.cover_weight();
    if (weight + lower_bound(g_, bd_, cfg_.bound) >= k) {
      ++shared_.stats.prunes_bound;
      unwind();
      return k;
    }

    if (g_.alive_count() == 0) {
      record(weight, {});
      unwind();
      return weight;
    }

    const std::vector<std::vector<Vertex>> comps = g_.components();
    int r = 0;
    if (comps.size() > 1)
      r = solve_split(comps, k);
    else
      r = branch(k);
    unwind();
    return r;
  }

  Graph g_;
  SolverConfig cfg_;
  Shared& shared_;
  std::unique_ptr<ConstraintStore> store_;
  BipartiteDouble bd_;
  std::size_t slot_budget_ = 0;
  std::size_t slot_extra_ = 0;
  int best_size_ = -1;
  std::vector<std::int8_t> best_assignment_;
};

}  // namespace

SolveResult solve_vertex_cover(const Graph& g, const SolverConfig& cfg) {
  VCS_CHECK(g.mark() == 0, "solver expects an untouched graph");
  Shared shared;
  shared.rng.seed(static_cast<std::mt19937::result_type>(cfg.seed));
  const auto t0 = Clock::now();
  if (cfg.time_limit_s > 0) {
    shared.has_deadline = true;
    shared.deadline =
        t0 + std::chrono::duration_cast<Clock::duration>(
                 std::chrono::duration<double>(cfg.time_limit_s));
  }

  Searcher root(g, cfg, shared);
  root.search(g.alive_count() + 1);

  SolveResult res;
  res.completed = shared.stats.completed;
  res.stats = shared.stats;
  res.stats.elapsed_s =
      std::chrono::duration<double>(Clock::now() - t0).count();
  res.stats.completed = res.completed;
  if (res.completed)
    VCS_CHECK(root.found(), "search finished without reaching a cover");
  if (root.found()) {
    res.size = root.best_size();
    const std::vector<std::int8_t>& assign = root.best_assignment();
    for (int v = 0; v < g.original_count(); ++v)
      if (assign[static_cast<std::size_t>(v)] == 1) res.cover.push_back(v);
    VCS_CHECK(static_cast<int>(res.cover.size()) == res.size,
              "cover size disagrees with its vertex list");
    for (Vertex v = 0; v < g.slot_count(); ++v)
      g.for_neighbors(v, [&](Vertex u) {
        if (u > v)
          VCS_CHECK(assign[static_cast<std::size_t>(v)] == 1 ||
                        assign[static_cast<std::size_t>(u)] == 1,
                    "final cover leaves an edge uncovered");
      });
  }
  return res;
}

}  // namespace vcs
