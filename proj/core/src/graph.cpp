#include "vcs/graph.hpp"

#include <algorithm>
#include <numeric>

namespace vcs {

Graph::Graph(int n) : original_count_(n), alive_count_(n) {
  VCS_CHECK(n >= 0, "negative vertex count");
  adj_.resize(static_cast<size_t>(n));
  alive_.assign(static_cast<size_t>(n), 1);
  degree_.assign(static_cast<size_t>(n), 0);
}

Graph::Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) : Graph(n) {
  for (auto [u, v] : edges) {
    VCS_CHECK(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
    VCS_CHECK(u != v, "self loop");
    adj_[static_cast<size_t>(u)].push_back(v);
    adj_[static_cast<size_t>(v)].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& a = adj_[static_cast<size_t>(v)];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    degree_[static_cast<size_t>(v)] = static_cast<int>(a.size());
  }
}

long long Graph::alive_edge_count() const {
  long long twice = 0;
  for (int v = 0; v < slot_count(); ++v)
    if (alive(v)) twice += degree(v);
  return twice / 2;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& a = adj_[static_cast<size_t>(u)];
  const auto& b = adj_[static_cast<size_t>(v)];
  const auto& sm = a.size() <= b.size() ? a : b;
  Vertex want = a.size() <= b.size() ? v : u;
  return std::binary_search(sm.begin(), sm.end(), want);
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(static_cast<size_t>(degree(v)));
  for_neighbors(v, [&](Vertex u) { out.push_back(u); });
  return out;
}

std::vector<Vertex> Graph::alive_vertices() const {
  std::vector<Vertex> out;
  out.reserve(static_cast<size_t>(alive_count_));
  for (int v = 0; v < slot_count(); ++v)
    if (alive(v)) out.push_back(v);
  return out;
}

void Graph::kill(Vertex v) {
  VCS_CHECK(alive(v), "removing a dead vertex");
  alive_[static_cast<size_t>(v)] = 0;
  --alive_count_;
  for (Vertex u : adj_[static_cast<size_t>(v)])
    if (alive(u)) --degree_[static_cast<size_t>(u)];
}

void Graph::revive(Vertex v) {
  VCS_CHECK(!alive(v), "reviving a live vertex");
  alive_[static_cast<size_t>(v)] = 1;
  ++alive_count_;
  int d = 0;
  for (Vertex u : adj_[static_cast<size_t>(v)])
    if (alive(u)) {
      ++degree_[static_cast<size_t>(u)];
      ++d;
    }
  degree_[static_cast<size_t>(v)] = d;
}

void Graph::include_vertex(Vertex v) {
  kill(v);
  ++cover_weight_;
  ++version_;
  journal_.push_back({EventKind::IncludeVertex, v, -1});
}

void Graph::discard_vertex(Vertex v) {
  VCS_CHECK(degree(v) == 0, "discarding a vertex with live edges");
  kill(v);
  ++version_;
  journal_.push_back({EventKind::ExcludeVertex, v, -1});
}

void Graph::exclude_vertex(Vertex v) {
  std::vector<Vertex> nbrs = neighbors(v);
  for (Vertex u : nbrs) include_vertex(u);
  discard_vertex(v);
}

void Graph::defer_vertex(Vertex v) {
  kill(v);
  ++version_;
  journal_.push_back({EventKind::DeferVertex, v, -1});
}

void Graph::add_edge(Vertex u, Vertex v) {
  VCS_CHECK(u != v, "self loop");
  VCS_CHECK(alive(u) && alive(v), "adding edge between dead vertices");
  VCS_CHECK(!has_edge(u, v), "adding a duplicate edge");
  auto& au = adj_[static_cast<size_t>(u)];
  au.insert(std::lower_bound(au.begin(), au.end(), v), v);
  auto& av = adj_[static_cast<size_t>(v)];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++degree_[static_cast<size_t>(u)];
  ++degree_[static_cast<size_t>(v)];
  ++version_;
  journal_.push_back({EventKind::AddEdge, u, v});
}

Vertex Graph::new_vertex(std::vector<Vertex> nbrs) {
  std::sort(nbrs.begin(), nbrs.end());
  nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  Vertex w = slot_count();
  for (Vertex u : nbrs) {
    VCS_CHECK(alive(u), "new vertex attached to a dead neighbor");
    auto& au = adj_[static_cast<size_t>(u)];
    au.insert(std::lower_bound(au.begin(), au.end(), w), w);
    ++degree_[static_cast<size_t>(u)];
  }
  degree_.push_back(static_cast<int>(nbrs.size()));
  adj_.push_back(std::move(nbrs));
  alive_.push_back(1);
  ++alive_count_;
  ++version_;
  journal_.push_back({EventKind::NewVertex, w, -1});
  return w;
}

void Graph::record_fold(Fold fold) {
  cover_weight_ += fold.extra_cover;
  ++version_;
  journal_.push_back({EventKind::FoldRecord, static_cast<Vertex>(folds_.size()), -1});
  folds_.push_back(std::move(fold));
}

void Graph::rollback(Mark m) {
  VCS_CHECK(m <= journal_.size(), "rollback past the journal tail");
  while (journal_.size() > m) {
    const Event ev = journal_.back();
    journal_.pop_back();
    ++version_;
    switch (ev.kind) {
      case EventKind::IncludeVertex:
        revive(ev.a);
        --cover_weight_;
        break;
      case EventKind::ExcludeVertex:
      case EventKind::DeferVertex:
        revive(ev.a);
        break;
      case EventKind::AddEdge: {
        auto& au = adj_[static_cast<size_t>(ev.a)];
        au.erase(std::lower_bound(au.begin(), au.end(), ev.b));
        auto& av = adj_[static_cast<size_t>(ev.b)];
        av.erase(std::lower_bound(av.begin(), av.end(), ev.a));
        --degree_[static_cast<size_t>(ev.a)];
        --degree_[static_cast<size_t>(ev.b)];
        break;
      }
      case EventKind::NewVertex: {
        Vertex w = ev.a;
        VCS_CHECK(w == slot_count() - 1 && alive(w), "new vertex undo out of order");
        for (Vertex u : adj_[static_cast<size_t>(w)]) {
          VCS_CHECK(alive(u), "new vertex neighbor died before undo");
          auto& au = adj_[static_cast<size_t>(u)];
          au.erase(std::lower_bound(au.begin(), au.end(), w));
          --degree_[static_cast<size_t>(u)];
        }
        adj_.pop_back();
        alive_.pop_back();
        degree_.pop_back();
        --alive_count_;
        break;
      }
      case EventKind::FoldRecord:
        cover_weight_ -= folds_.back().extra_cover;
        folds_.pop_back();
        break;
    }
  }
}

std::vector<std::vector<Vertex>> Graph::components() const {
  std::vector<std::vector<Vertex>> comps;
  std::vector<std::uint8_t> seen(static_cast<size_t>(slot_count()), 0);
  std::vector<Vertex> stack;
  for (int s = 0; s < slot_count(); ++s) {
    if (!alive(s) || seen[static_cast<size_t>(s)]) continue;
    std::vector<Vertex> comp;
    seen[static_cast<size_t>(s)] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for_neighbors(v, [&](Vertex u) {
        if (!seen[static_cast<size_t>(u)]) {
          seen[static_cast<size_t>(u)] = 1;
          stack.push_back(u);
        }
      });
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return comps;
}

void apply_fold_case(const Fold& fold, std::vector<std::int8_t>& x) {
  auto set_all = [&x](const std::vector<Vertex>& vs, std::int8_t val) {
    for (Vertex v : vs) x[static_cast<size_t>(v)] = val;
  };
  switch (fold.kind) {
    case FoldKind::Degree2:
    case FoldKind::Twin: {
      std::int8_t w = x[static_cast<size_t>(fold.introduced)];
      if (w == 1) {
        set_all(fold.outer, 1);
        set_all(fold.inner, 0);
      } else if (w == 0) {
        set_all(fold.inner, 1);
        set_all(fold.outer, 0);
      }
      break;
    }
    case FoldKind::Alternative: {
      // Case split of the rewrite: if N(B)\N[A] ended up fully covered the
      // A side joins the cover, otherwise the B side does. A vertex of
      // side_b assigned 0 decides for B in every completion; side_b fully
      // assigned 1 decides for A (the tie break checks side_b first, so
      // later assignments cannot flip it). Anything else stays open.
      bool all_one = true, any_zero = false;
      for (Vertex v : fold.side_b) {
        std::int8_t val = x[static_cast<size_t>(v)];
        if (val != 1) all_one = false;
        if (val == 0) any_zero = true;
      }
      if (all_one) {
        set_all(fold.inner, 1);
        set_all(fold.outer, 0);
      } else if (any_zero) {
        set_all(fold.outer, 1);
        set_all(fold.inner, 0);
      }
      break;
    }
  }
}

std::vector<std::int8_t> Graph::resolve_assignment(
    const std::vector<std::pair<Vertex, std::int8_t>>& overlay) const {
  std::vector<std::int8_t> x(static_cast<size_t>(slot_count()), kUnassigned);
  for (const Event& ev : journal_) {
    if (ev.kind == EventKind::IncludeVertex) x[static_cast<size_t>(ev.a)] = 1;
    else if (ev.kind == EventKind::ExcludeVertex) x[static_cast<size_t>(ev.a)] = 0;
  }
  for (auto [v, val] : overlay) {
    VCS_CHECK(x[static_cast<size_t>(v)] == kUnassigned, "overlay clashes with the journal");
    x[static_cast<size_t>(v)] = val;
  }
  for (auto it = folds_.rbegin(); it != folds_.rend(); ++it) apply_fold_case(*it, x);
  return x;
}

std::vector<Vertex> Graph::assemble_cover(
    const std::vector<std::pair<Vertex, std::int8_t>>& overlay) const {
  std::vector<std::int8_t> x = resolve_assignment(overlay);
  std::vector<Vertex> cover;
  for (int v = 0; v < original_count_; ++v) {
    VCS_CHECK(x[static_cast<size_t>(v)] != kUnassigned, "unresolved vertex in cover assembly");
    if (x[static_cast<size_t>(v)] == 1) cover.push_back(v);
  }
  return cover;
}

}  // namespace vcs
