#include "vcs/packing.hpp"

#include <algorithm>

namespace vcs {

ConstraintStore::ConstraintStore(const Graph& g)
    : original_count_(g.original_count()),
      by_var_(static_cast<std::size_t>(g.original_count())),
      cursor_(g.journal().size()) {}

bool ConstraintStore::create(const Graph& g, std::vector<Vertex> vars,
                             int rhs) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (Vertex v : vars)
    if (v >= original_count_) return false;
  if (rhs >= static_cast<int>(vars.size())) return false;
  VCS_CHECK(rhs >= 0, "creating an unsatisfiable constraint");
  for (Vertex v : vars)
    VCS_CHECK(g.alive(v), "constraint over a removed vertex");
  const int cid = static_cast<int>(pool_.size());
  pool_.push_back({std::move(vars), {}, rhs});
  for (Vertex v : pool_.back().vars)
    by_var_[static_cast<std::size_t>(v)].push_back(cid);
  edits_.push_back({EditKind::Created, cid, -1});
  eval_valid_ = false;
  return true;
}

void ConstraintStore::drop_var(int cid, Vertex v, bool include) {
  PackingConstraint& c = pool_[static_cast<std::size_t>(cid)];
  auto it = std::lower_bound(c.vars.begin(), c.vars.end(), v);
  VCS_CHECK(it != c.vars.end() && *it == v,
            "dropping a variable the constraint does not hold");
  c.vars.erase(it);
  if (include) {
    --c.rhs;
    if (c.rhs == -1) ++unsat_count_;
  }
  edits_.push_back(
      {include ? EditKind::DroppedInclude : EditKind::DroppedExclude, cid, v});
  eval_valid_ = false;
}

void ConstraintStore::suspend_var(int cid, Vertex v) {
  PackingConstraint& c = pool_[static_cast<std::size_t>(cid)];
  auto it = std::lower_bound(c.vars.begin(), c.vars.end(), v);
  VCS_CHECK(it != c.vars.end() && *it == v,
            "suspending a variable the constraint does not hold");
  c.vars.erase(it);
  c.suspended.insert(
      std::lower_bound(c.suspended.begin(), c.suspended.end(), v), v);
  if (c.suspended.size() == 1) ++suspended_live_;
  edits_.push_back({EditKind::Suspended, cid, v});
  eval_valid_ = false;
}

void ConstraintStore::sync(const Graph& g) {
  const auto& journal = g.journal();
  VCS_CHECK(cursor_ <= journal.size(), "constraint store ran ahead");
  for (; cursor_ < journal.size(); ++cursor_) {
    const Event& ev = journal[cursor_];
    if (ev.kind != EventKind::IncludeVertex &&
        ev.kind != EventKind::ExcludeVertex &&
        ev.kind != EventKind::DeferVertex)
      continue;
    const Vertex v = ev.a;
    if (v >= original_count_) continue;
    const auto& watchers = by_var_[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < watchers.size(); ++i) {
      const int cid = watchers[i];
      switch (ev.kind) {
        case EventKind::IncludeVertex:
          drop_var(cid, v, true);
          break;
        case EventKind::ExcludeVertex:
          drop_var(cid, v, false);
          break;
        default:
          suspend_var(cid, v);
          break;
      }
    }
  }
}

bool ConstraintStore::unsatisfied(const Graph& g) {
  VCS_CHECK(cursor_ == g.journal().size(), "store consulted before sync");
  if (unsat_count_ > 0) return true;
  if (suspended_live_ == 0) return false;
  if (eval_valid_ && eval_version_ == g.version()) return eval_result_;
  const std::vector<std::int8_t> x = g.resolve_assignment();
  bool violated = false;
  for (const PackingConstraint& c : pool_) {
    if (c.suspended.empty()) continue;
    int forced = 0;
    for (Vertex v : c.suspended)
      if (x[static_cast<std::size_t>(v)] == 1) ++forced;
    if (forced > c.rhs) {
      violated = true;
      break;
    }
  }
  eval_valid_ = true;
  eval_version_ = g.version();
  eval_result_ = violated;
  return violated;
}

PackingReduceResult ConstraintStore::reduce(Graph& g) {
  PackingReduceResult res;
  sync(g);
  if (unsatisfied(g)) {
    res.pruned = true;
    return res;
  }
  std::vector<std::int8_t> in_set(static_cast<std::size_t>(g.slot_count()));
  std::vector<int> contacts(static_cast<std::size_t>(g.slot_count()));
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t cid = 0; cid < pool_.size() && !progress; ++cid) {
      if (pool_[cid].vars.empty() || !pool_[cid].suspended.empty()) continue;
      const int rhs = pool_[cid].rhs;
      const std::vector<Vertex> set = pool_[cid].vars;
      in_set.assign(static_cast<std::size_t>(g.slot_count()), 0);
      contacts.assign(static_cast<std::size_t>(g.slot_count()), 0);
      for (Vertex v : set) in_set[static_cast<std::size_t>(v)] = 1;
      std::vector<Vertex> boundary;
      for (Vertex v : set)
        g.for_neighbors(v, [&](Vertex u) {
          if (in_set[static_cast<std::size_t>(u)]) return;
          if (contacts[static_cast<std::size_t>(u)]++ == 0)
            boundary.push_back(u);
        });
      std::sort(boundary.begin(), boundary.end());

      if (rhs == 0) {
        for (Vertex v : set)
          g.for_neighbors(v, [&](Vertex u) {
            if (in_set[static_cast<std::size_t>(u)]) res.pruned = true;
          });
        if (res.pruned) return res;
        ++res.fires_rhs_zero;
        for (Vertex u : boundary) {
          if (contacts[static_cast<std::size_t>(u)] != 1) continue;
          std::vector<Vertex> rest;
          g.for_neighbors(u, [&](Vertex w) {
            if (!in_set[static_cast<std::size_t>(w)] &&
                contacts[static_cast<std::size_t>(w)] == 0)
              rest.push_back(w);
          });
          if (rest.empty()) {
            res.pruned = true;
            return res;
          }
          const int new_rhs = static_cast<int>(rest.size()) - 1;
          create(g, std::move(rest), new_rhs);
        }
        for (Vertex v : set) g.exclude_vertex(v);
        sync(g);
        if (unsatisfied(g)) {
          res.pruned = true;
          return res;
        }
        progress = true;
      } else {
        for (Vertex u : boundary) {
          if (contacts[static_cast<std::size_t>(u)] <= rhs) continue;
          std::vector<Vertex> around;
          g.for_neighbors(u, [&](Vertex w) { around.push_back(w); });
          create(g, std::move(around), g.degree(u) - 2);
          g.include_vertex(u);
          ++res.fires_rhs_positive;
          sync(g);
          if (unsatisfied(g)) {
            res.pruned = true;
            return res;
          }
          progress = true;
          break;
        }
      }
    }
  }
  return res;
}

void ConstraintStore::rollback_to(Mark m, const Graph& g) {
  VCS_CHECK(m <= edits_.size(), "rollback past the store journal tail");
  VCS_CHECK(g.journal().size() <= cursor_,
            "store rollback before the graph rollback");
  while (edits_.size() > m) {
    const Edit e = edits_.back();
    edits_.pop_back();
    PackingConstraint& c = pool_[static_cast<std::size_t>(e.cid)];
    switch (e.kind) {
      case EditKind::Created: {
        VCS_CHECK(e.cid == static_cast<int>(pool_.size()) - 1,
                  "constraint undo out of order");
        VCS_CHECK(c.suspended.empty(),
                  "constraint destroyed with pending variables");
        for (Vertex v : c.vars) {
          auto& watchers = by_var_[static_cast<std::size_t>(v)];
          VCS_CHECK(!watchers.empty() && watchers.back() == e.cid,
                    "watcher list out of order");
          watchers.pop_back();
        }
        pool_.pop_back();
        break;
      }
      case EditKind::DroppedInclude:
        if (c.rhs == -1) --unsat_count_;
        ++c.rhs;
        c.vars.insert(std::lower_bound(c.vars.begin(), c.vars.end(), e.var),
                      e.var);
        break;
      case EditKind::DroppedExclude:
        c.vars.insert(std::lower_bound(c.vars.begin(), c.vars.end(), e.var),
                      e.var);
        break;
      case EditKind::Suspended: {
        auto it = std::lower_bound(c.suspended.begin(), c.suspended.end(),
                                   e.var);
        VCS_CHECK(it != c.suspended.end() && *it == e.var,
                  "suspended variable missing on undo");
        c.suspended.erase(it);
        if (c.suspended.empty()) --suspended_live_;
        c.vars.insert(std::lower_bound(c.vars.begin(), c.vars.end(), e.var),
                      e.var);
        break;
      }
    }
  }
  cursor_ = g.journal().size();
  eval_valid_ = false;
}

std::size_t ConstraintStore::live_count() const {
  std::size_t n = 0;
  for (const PackingConstraint& c : pool_)
    if (!c.vars.empty() || !c.suspended.empty()) ++n;
  return n;
}

std::size_t ConstraintStore::footprint() const {
  std::size_t n = 0;
  for (const PackingConstraint& c : pool_)
    n += c.vars.size() + c.suspended.size();
  return n;
}

std::vector<PackingConstraint> ConstraintStore::live_constraints() const {
  std::vector<PackingConstraint> out;
  for (const PackingConstraint& c : pool_)
    if (!c.vars.empty() || !c.suspended.empty()) out.push_back(c);
  return out;
}

}  // namespace vcs
