#include "vcs/matching.hpp"

#include <algorithm>
#include <cstdlib>

namespace vcs {

void BipartiteDouble::ensure_size(const Graph& g) {
  const size_t n = static_cast<size_t>(g.slot_count());
  if (in_.size() > n) {
    // Slots past the current tail were rolled back; drop pairs into them.
    for (size_t v = 0; v < n; ++v) {
      if (out_[v] >= static_cast<Vertex>(n)) out_[v] = -1;
      if (in_[v] >= static_cast<Vertex>(n)) in_[v] = -1;
    }
    in_.resize(n);
    out_.resize(n);
  } else if (in_.size() < n) {
    in_.resize(n, -1);
    out_.resize(n, -1);
  }
  level_.assign(n, -1);
  reach_left_.assign(n, 0);
  reach_right_.assign(n, 0);
}

bool BipartiteDouble::augment(const Graph& g, Vertex v) {
  bool found = false;
  Vertex chosen = -1;
  g.for_neighbors(v, [&](Vertex u) {
    if (found) return;
    Vertex w = in_[static_cast<size_t>(u)];
    if (w == -1 || (level_[static_cast<size_t>(w)] == level_[static_cast<size_t>(v)] + 1 &&
                    augment(g, w))) {
      found = true;
      chosen = u;
    }
  });
  if (found) {
    out_[static_cast<size_t>(v)] = chosen;
    in_[static_cast<size_t>(chosen)] = v;
    return true;
  }
  level_[static_cast<size_t>(v)] = -1;
  return false;
}

int BipartiteDouble::repair(const Graph& g) {
  ensure_size(g);
  const int n = g.slot_count();

  const long long churn = !ever_synced_
                              ? static_cast<long long>(n)
                              : std::llabs(static_cast<long long>(g.mark()) -
                                           static_cast<long long>(last_sync_));
  if (2 * churn > g.alive_count()) {
    std::fill(in_.begin(), in_.end(), -1);
    std::fill(out_.begin(), out_.end(), -1);
  } else {
    for (Vertex v = 0; v < n; ++v) {
      Vertex u = out_[static_cast<size_t>(v)];
      if (u == -1) continue;
      bool va = g.alive(v), ua = g.alive(u);
      // Pairs that died together may be revived wholesale by a rollback;
      // anything else (one side dead, or the edge undone) is stale.
      bool keep = (va && ua && g.has_edge(v, u)) || (!va && !ua);
      if (!keep) {
        in_[static_cast<size_t>(u)] = -1;
        out_[static_cast<size_t>(v)] = -1;
      }
    }
  }
  ever_synced_ = true;
  last_sync_ = g.mark();

  std::vector<Vertex>& queue = queue_;
  for (;;) {
    queue.clear();
    std::fill(level_.begin(), level_.end(), -1);
    for (Vertex v = 0; v < n; ++v)
      if (g.alive(v) && out_[static_cast<size_t>(v)] == -1) {
        level_[static_cast<size_t>(v)] = 0;
        queue.push_back(v);
      }
    bool found = false;
    for (size_t qh = 0; qh < queue.size(); ++qh) {
      Vertex v = queue[qh];
      g.for_neighbors(v, [&](Vertex u) {
        Vertex w = in_[static_cast<size_t>(u)];
        if (w == -1) {
          found = true;
        } else if (level_[static_cast<size_t>(w)] == -1) {
          level_[static_cast<size_t>(w)] = level_[static_cast<size_t>(v)] + 1;
          queue.push_back(w);
        }
      });
    }
    if (!found) break;
    for (Vertex v = 0; v < n; ++v)
      if (g.alive(v) && out_[static_cast<size_t>(v)] == -1 && level_[static_cast<size_t>(v)] == 0)
        augment(g, v);
  }

  int size = 0;
  for (Vertex v = 0; v < n; ++v)
    if (g.alive(v) && out_[static_cast<size_t>(v)] != -1) ++size;
  return size;
}

void BipartiteDouble::compute_reach(const Graph& g) {
  const int n = g.slot_count();
  std::fill(reach_left_.begin(), reach_left_.end(), 0);
  std::fill(reach_right_.begin(), reach_right_.end(), 0);
  std::vector<Vertex>& queue = queue_;
  queue.clear();
  for (Vertex v = 0; v < n; ++v)
    if (g.alive(v) && out_[static_cast<size_t>(v)] == -1) {
      reach_left_[static_cast<size_t>(v)] = 1;
      queue.push_back(v);
    }
  for (size_t qh = 0; qh < queue.size(); ++qh) {
    Vertex v = queue[qh];
    g.for_neighbors(v, [&](Vertex u) {
      if (reach_right_[static_cast<size_t>(u)]) return;
      reach_right_[static_cast<size_t>(u)] = 1;
      Vertex w = in_[static_cast<size_t>(u)];
      if (w != -1 && !reach_left_[static_cast<size_t>(w)]) {
        reach_left_[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
    });
  }
}

LpSolution BipartiteDouble::half_integral_solution(const Graph& g) {
  repair(g);
  compute_reach(g);
  LpSolution sol;
  for (Vertex v = 0; v < g.slot_count(); ++v) {
    if (!g.alive(v)) continue;
    bool rl = reach_left_[static_cast<size_t>(v)] != 0;
    bool rr = reach_right_[static_cast<size_t>(v)] != 0;
    if (rl && !rr) sol.zeros.push_back(v);
    else if (!rl && rr) sol.ones.push_back(v);
    else sol.halves.push_back(v);
  }
  return sol;
}

namespace {

// Value codes used while rounding: 0, 1, or 2 for one half.
constexpr std::int8_t kHalf = 2;

struct SccRounder {
  const Graph& g;
  const std::vector<Vertex>& in;
  std::vector<std::int8_t>& val;
  std::vector<Vertex> half_of_node;  // node -> vertex; even nodes are left copies
  std::vector<int> node_of_left, node_of_right;

  std::vector<int> comp_of;
  int comp_count = 0;
  std::vector<int> tarjan_index, tarjan_low;
  std::vector<std::uint8_t> on_stack;
  std::vector<int> scc_stack;

  explicit SccRounder(const Graph& graph, const std::vector<Vertex>& in_arr,
                      std::vector<std::int8_t>& values)
      : g(graph), in(in_arr), val(values) {}

  template <class F>
  void for_arcs(int node, F&& f) {
    Vertex v = half_of_node[static_cast<size_t>(node)];
    if ((node & 1) == 0) {
      // Left copy: one arc per companion edge into a half right copy.
      g.for_neighbors(v, [&](Vertex u) {
        if (val[static_cast<size_t>(u)] == kHalf && node_of_right[static_cast<size_t>(u)] >= 0)
          f(node_of_right[static_cast<size_t>(u)]);
      });
    } else {
      // Right copy: one arc along the matched edge back to its left copy.
      Vertex w = in[static_cast<size_t>(v)];
      if (w != -1 && val[static_cast<size_t>(w)] == kHalf &&
          node_of_left[static_cast<size_t>(w)] >= 0)
        f(node_of_left[static_cast<size_t>(w)]);
    }
  }

  // Iterative Tarjan; components are numbered in reverse topological order
  // (sinks get the smallest numbers).
  void tarjan(int start, int& next_index) {
    struct Frame {
      int node;
      int arc_pos;
    };
    std::vector<int> arcs_buf;
    std::vector<Frame> stack;
    std::vector<std::vector<int>> arc_lists;
    stack.push_back({start, 0});
    tarjan_index[static_cast<size_t>(start)] = tarjan_low[static_cast<size_t>(start)] =
        next_index++;
    scc_stack.push_back(start);
    on_stack[static_cast<size_t>(start)] = 1;
    arc_lists.emplace_back();
    for_arcs(start, [&](int t) { arc_lists.back().push_back(t); });
    while (!stack.empty()) {
      Frame& fr = stack.back();
      auto& arcs = arc_lists[stack.size() - 1];
      if (fr.arc_pos < static_cast<int>(arcs.size())) {
        int t = arcs[static_cast<size_t>(fr.arc_pos++)];
        if (tarjan_index[static_cast<size_t>(t)] == -1) {
          tarjan_index[static_cast<size_t>(t)] = tarjan_low[static_cast<size_t>(t)] =
              next_index++;
          scc_stack.push_back(t);
          on_stack[static_cast<size_t>(t)] = 1;
          stack.push_back({t, 0});
          if (arc_lists.size() < stack.size()) arc_lists.emplace_back();
          arc_lists[stack.size() - 1].clear();
          for_arcs(t, [&](int s) { arc_lists[stack.size() - 1].push_back(s); });
        } else if (on_stack[static_cast<size_t>(t)]) {
          tarjan_low[static_cast<size_t>(fr.node)] =
              std::min(tarjan_low[static_cast<size_t>(fr.node)],
                       tarjan_index[static_cast<size_t>(t)]);
        }
      } else {
        int node = fr.node;
        if (tarjan_low[static_cast<size_t>(node)] == tarjan_index[static_cast<size_t>(node)]) {
          for (;;) {
            int t = scc_stack.back();
            scc_stack.pop_back();
            on_stack[static_cast<size_t>(t)] = 0;
            comp_of[static_cast<size_t>(t)] = comp_count;
            if (t == node) break;
          }
          ++comp_count;
        }
        stack.pop_back();
        if (!stack.empty())
          tarjan_low[static_cast<size_t>(stack.back().node)] =
              std::min(tarjan_low[static_cast<size_t>(stack.back().node)],
                       tarjan_low[static_cast<size_t>(node)]);
      }
    }
    (void)arcs_buf;
  }
};

}  // namespace

LpSolution BipartiteDouble::extreme_solution(const Graph& g) {
  LpSolution base = half_integral_solution(g);
  const size_t n = static_cast<size_t>(g.slot_count());
  std::vector<std::int8_t> val(n, kUnassigned);
  for (Vertex v : base.zeros) val[static_cast<size_t>(v)] = 0;
  for (Vertex v : base.ones) val[static_cast<size_t>(v)] = 1;
  for (Vertex v : base.halves) val[static_cast<size_t>(v)] = kHalf;

  for (;;) {
    std::vector<Vertex> halves;
    for (Vertex v = 0; v < g.slot_count(); ++v)
      if (g.alive(v) && val[static_cast<size_t>(v)] == kHalf) halves.push_back(v);
    if (halves.empty()) break;

    SccRounder r(g, in_, val);
    r.node_of_left.assign(n, -1);
    r.node_of_right.assign(n, -1);
    for (Vertex v : halves) {
      // Rounding walks matched pairs; a half vertex missing a live partner
      // on either side simply stays half.
      Vertex o = out_[static_cast<size_t>(v)], i = in_[static_cast<size_t>(v)];
      if (o == -1 || val[static_cast<size_t>(o)] != kHalf) continue;
      if (i == -1 || val[static_cast<size_t>(i)] != kHalf) continue;
      r.node_of_left[static_cast<size_t>(v)] = static_cast<int>(r.half_of_node.size());
      r.half_of_node.push_back(v);
      r.node_of_right[static_cast<size_t>(v)] = static_cast<int>(r.half_of_node.size());
      r.half_of_node.push_back(v);
    }
    const int nodes = static_cast<int>(r.half_of_node.size());
    if (nodes == 0) break;
    r.comp_of.assign(static_cast<size_t>(nodes), -1);
    r.tarjan_index.assign(static_cast<size_t>(nodes), -1);
    r.tarjan_low.assign(static_cast<size_t>(nodes), 0);
    r.on_stack.assign(static_cast<size_t>(nodes), 0);
    int next_index = 0;
    for (int s = 0; s < nodes; ++s)
      if (r.tarjan_index[static_cast<size_t>(s)] == -1) r.tarjan(s, next_index);

    // Components numbered sinks-first; walk them sources-first and round
    // each component's left copies to 1 and right copies to 0 unless that
    // conflicts with the component itself, an earlier decision, or a bad
    // upstream component.
    std::vector<std::vector<int>> members(static_cast<size_t>(r.comp_count));
    for (int t = 0; t < nodes; ++t)
      members[static_cast<size_t>(r.comp_of[static_cast<size_t>(t)])].push_back(t);
    std::vector<std::uint8_t> bad(static_cast<size_t>(r.comp_count), 0);
    bool changed = false;
    for (int c = r.comp_count - 1; c >= 0; --c) {
      bool ok = !bad[static_cast<size_t>(c)];
      int lefts = 0, rights = 0;
      if (ok) {
        for (int t : members[static_cast<size_t>(c)]) {
          Vertex v = r.half_of_node[static_cast<size_t>(t)];
          bool is_left = (t & 1) == 0;
          (is_left ? lefts : rights)++;
          std::int8_t want = is_left ? 1 : 0;
          std::int8_t other = is_left ? 0 : 1;
          if (val[static_cast<size_t>(v)] == other) ok = false;
          int mirror = is_left ? r.node_of_right[static_cast<size_t>(v)]
                               : r.node_of_left[static_cast<size_t>(v)];
          if (mirror >= 0 && r.comp_of[static_cast<size_t>(mirror)] == c && !is_left) ok = false;
          (void)want;
        }
      }
      VCS_CHECK(!ok || lefts == rights, "rounded component is not a pair union");
      if (ok) {
        for (int t : members[static_cast<size_t>(c)]) {
          Vertex v = r.half_of_node[static_cast<size_t>(t)];
          std::int8_t want = (t & 1) == 0 ? 1 : 0;
          if (val[static_cast<size_t>(v)] == kHalf) changed = true;
          val[static_cast<size_t>(v)] = want;
        }
      } else {
        bad[static_cast<size_t>(c)] = 1;
      }
      // Taint downstream components once this one's fate is known.
      if (!ok)
        for (int t : members[static_cast<size_t>(c)])
          r.for_arcs(t, [&](int s) {
            int sc = r.comp_of[static_cast<size_t>(s)];
            if (sc != c) bad[static_cast<size_t>(sc)] = 1;
          });
    }
    if (!changed) break;
  }

  // The rounding must never lose feasibility or optimality.
  long long doubled = 0;
  for (Vertex v = 0; v < g.slot_count(); ++v) {
    if (!g.alive(v)) continue;
    std::int8_t a = val[static_cast<size_t>(v)];
    VCS_CHECK(a == 0 || a == 1 || a == kHalf, "unlabeled alive vertex");
    doubled += a == kHalf ? 1 : a * 2;
    if (a == 0)
      g.for_neighbors(v, [&](Vertex u) {
        VCS_CHECK(val[static_cast<size_t>(u)] == 1, "zero vertex with an uncovered edge");
      });
  }
  long long base_doubled =
      2 * static_cast<long long>(base.ones.size()) + static_cast<long long>(base.halves.size());
  VCS_CHECK(doubled == base_doubled, "rounding changed the relaxation objective");

  LpSolution sol;
  for (Vertex v = 0; v < g.slot_count(); ++v) {
    if (!g.alive(v)) continue;
    std::int8_t a = val[static_cast<size_t>(v)];
    if (a == 0) sol.zeros.push_back(v);
    else if (a == 1) sol.ones.push_back(v);
    else sol.halves.push_back(v);
  }
  return sol;
}

}  // namespace vcs
