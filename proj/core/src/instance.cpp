#include "vcs/instance.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <utility>

namespace vcs {
namespace {

// Draws on the raw engine so sequences are identical on every
// platform; the standard pins down mt19937 output but not the
// distribution adaptors.
int uniform_below(std::mt19937& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint32_t>(n));
}

bool coin(std::mt19937& rng, double p) {
  return static_cast<double>(rng()) < p * 4294967296.0;
}

Instance build(int n, const std::set<std::pair<Vertex, Vertex>>& edges,
               std::vector<std::string> labels) {
  std::vector<std::pair<Vertex, Vertex>> list(edges.begin(), edges.end());
  Instance inst;
  inst.graph = Graph(n, list);
  if (labels.empty())
    for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v));
  inst.labels = std::move(labels);
  return inst;
}

std::pair<Vertex, Vertex> ordered(Vertex u, Vertex v) {
  return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

}  // namespace

Instance parse_edge_list(std::istream& in) {
  std::map<std::string, Vertex> ids;
  std::vector<std::string> labels;
  auto vertex_of = [&](const std::string& token) {
    auto [it, fresh] = ids.try_emplace(token, static_cast<Vertex>(ids.size()));
    if (fresh) labels.push_back(token);
    return it->second;
  };
  std::set<std::pair<Vertex, Vertex>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) {
      vertex_of(a);
      continue;
    }
    if (ls >> extra)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected at most two tokens");
    const Vertex u = vertex_of(a), v = vertex_of(b);
    if (u == v)
      throw ParseError("line " + std::to_string(lineno) + ": self loop on '" +
                       a + "'");
    edges.insert(ordered(u, v));
  }
  return build(static_cast<int>(ids.size()), edges, std::move(labels));
}

Instance parse_dimacs(std::istream& in) {
  int n = -1;
  std::set<std::pair<Vertex, Vertex>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "c") continue;
    if (head == "p") {
      std::string kind;
      long long m = 0;
      if (n != -1 || !(ls >> kind >> n >> m) || kind != "edge" || n < 0)
        throw ParseError("line " + std::to_string(lineno) +
                         ": malformed problem header");
      continue;
    }
    if (head == "e") {
      long long u = 0, v = 0;
      if (n == -1)
        throw ParseError("line " + std::to_string(lineno) +
                         ": edge before the problem header");
      if (!(ls >> u >> v) || u < 1 || v < 1 || u > n || v > n)
        throw ParseError("line " + std::to_string(lineno) +
                         ": edge endpoints out of range");
      if (u == v)
        throw ParseError("line " + std::to_string(lineno) + ": self loop");
      edges.insert(ordered(static_cast<Vertex>(u - 1),
                           static_cast<Vertex>(v - 1)));
      continue;
    }
    throw ParseError("line " + std::to_string(lineno) +
                     ": unrecognized line '" + head + "'");
  }
  if (n == -1) throw ParseError("missing problem header");
  std::vector<std::string> labels;
  for (int v = 1; v <= n; ++v) labels.push_back(std::to_string(v));
  return build(n, edges, std::move(labels));
}

Cnf parse_cnf(std::istream& in) {
  Cnf cnf;
  int declared = 0;
  std::vector<int> pending;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "c") continue;
    if (head == "p") {
      std::string kind;
      long long m = 0;
      if (!(ls >> kind >> declared >> m) || kind != "cnf" || declared < 0)
        throw ParseError("line " + std::to_string(lineno) +
                         ": malformed problem header");
      continue;
    }
    std::istringstream nums(line);
    long long lit = 0;
    while (nums >> lit) {
      if (lit == 0) {
        if (pending.size() != 3)
          throw ParseError("line " + std::to_string(lineno) +
                           ": clauses must hold exactly three literals");
        cnf.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      const long long var = lit < 0 ? -lit : lit;
      if (var > 1000000)
        throw ParseError("line " + std::to_string(lineno) +
                         ": variable id out of range");
      cnf.variables = std::max(cnf.variables, static_cast<int>(var));
      pending.push_back(static_cast<int>(lit));
      if (pending.size() > 3)
        throw ParseError("line " + std::to_string(lineno) +
                         ": clauses must hold exactly three literals");
    }
    if (nums.fail() && !nums.eof())
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected integers");
  }
  if (!pending.empty()) throw ParseError("unterminated final clause");
  cnf.variables = std::max(cnf.variables, declared);
  return cnf;
}

void write_edge_list(std::ostream& out, const Instance& inst) {
  const Graph& g = inst.graph;
  std::vector<std::uint8_t> touched(static_cast<std::size_t>(g.slot_count()),
                                    0);
  for (Vertex v = 0; v < g.slot_count(); ++v)
    g.for_neighbors(v, [&](Vertex u) {
      if (u > v) {
        out << inst.labels[static_cast<std::size_t>(v)] << ' '
            << inst.labels[static_cast<std::size_t>(u)] << '\n';
        touched[static_cast<std::size_t>(v)] = 1;
        touched[static_cast<std::size_t>(u)] = 1;
      }
    });
  for (Vertex v = 0; v < g.slot_count(); ++v)
    if (g.alive(v) && !touched[static_cast<std::size_t>(v)])
      out << inst.labels[static_cast<std::size_t>(v)] << '\n';
}

void write_dimacs(std::ostream& out, const Instance& inst) {
  const Graph& g = inst.graph;
  out << "p edge " << g.slot_count() << ' ' << g.alive_edge_count() << '\n';
  for (Vertex v = 0; v < g.slot_count(); ++v)
    g.for_neighbors(v, [&](Vertex u) {
      if (u > v) out << "e " << v + 1 << ' ' << u + 1 << '\n';
    });
}

void write_cnf(std::ostream& out, const Cnf& cnf) {
  out << "p cnf " << cnf.variables << ' ' << cnf.clauses.size() << '\n';
  for (const auto& cl : cnf.clauses)
    out << cl[0] << ' ' << cl[1] << ' ' << cl[2] << " 0\n";
}

Instance complement_of(const Instance& inst) {
  const Graph& g = inst.graph;
  const int n = g.slot_count();
  std::set<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u = v + 1; u < n; ++u)
      if (!g.has_edge(v, u)) edges.insert({v, u});
  return build(n, edges, inst.labels);
}

Instance gen_gnp(int n, double p, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  std::set<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u = v + 1; u < n; ++u)
      if (coin(rng, p)) edges.insert({v, u});
  return build(n, edges, {});
}

Instance gen_tree(int n, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  std::set<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v < n; ++v)
    edges.insert(ordered(static_cast<Vertex>(uniform_below(rng, v)), v));
  return build(n, edges, {});
}

Instance gen_power_law(int n, int attach, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  std::set<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> pool = {0};
  for (Vertex v = 1; v < n; ++v) {
    const int want = std::min(attach, static_cast<int>(v));
    std::set<Vertex> targets;
    while (static_cast<int>(targets.size()) < want)
      targets.insert(pool[static_cast<std::size_t>(
          uniform_below(rng, static_cast<int>(pool.size())))]);
    for (Vertex t : targets) {
      edges.insert(ordered(t, v));
      pool.push_back(t);
      pool.push_back(v);
    }
    if (targets.empty()) pool.push_back(v);
  }
  return build(n, edges, {});
}

Cnf gen_cnf(int variables, int clauses, std::uint64_t seed) {
  VCS_CHECK(variables >= 3, "three distinct variables per clause");
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  Cnf cnf;
  cnf.variables = variables;
  for (int j = 0; j < clauses; ++j) {
    std::set<int> vars;
    while (static_cast<int>(vars.size()) < 3)
      vars.insert(1 + uniform_below(rng, variables));
    std::array<int, 3> clause{};
    int t = 0;
    for (int var : vars) {
      clause[static_cast<std::size_t>(t++)] = coin(rng, 0.5) ? var : -var;
    }
    cnf.clauses.push_back(clause);
  }
  return cnf;
}

Instance gadget_from_cnf(const Cnf& cnf) {
  const int n = cnf.variables;
  const int m = static_cast<int>(cnf.clauses.size());
  std::set<std::pair<Vertex, Vertex>> edges;
  std::vector<std::string> labels(static_cast<std::size_t>(2 * n + 3 * m));
  for (int i = 0; i < n; ++i) {
    edges.insert({2 * i, 2 * i + 1});
    labels[static_cast<std::size_t>(2 * i)] = std::to_string(i + 1);
    labels[static_cast<std::size_t>(2 * i + 1)] = std::to_string(-(i + 1));
  }
  for (int j = 0; j < m; ++j) {
    const Vertex base = 2 * n + 3 * j;
    edges.insert({base, base + 1});
    edges.insert({base, base + 2});
    edges.insert({base + 1, base + 2});
    for (int t = 0; t < 3; ++t) {
      const int lit = cnf.clauses[static_cast<std::size_t>(j)]
                                 [static_cast<std::size_t>(t)];
      VCS_CHECK(lit != 0 && lit >= -n && lit <= n, "literal out of range");
      const int var = lit < 0 ? -lit : lit;
      const Vertex lit_vertex = 2 * (var - 1) + (lit < 0 ? 1 : 0);
      edges.insert(ordered(base + t, lit_vertex));
      labels[static_cast<std::size_t>(base + t)] =
          "c" + std::to_string(j + 1) + "_" + std::to_string(t + 1);
    }
  }
  return build(2 * n + 3 * m, edges, std::move(labels));
}

Instance oct_double(const Instance& inst) {
  const Graph& g = inst.graph;
  const int n = g.slot_count();
  std::set<std::pair<Vertex, Vertex>> edges;
  std::vector<std::string> labels(static_cast<std::size_t>(2 * n));
  for (Vertex v = 0; v < n; ++v) {
    edges.insert({v, n + v});
    labels[static_cast<std::size_t>(v)] = inst.labels[static_cast<std::size_t>(v)];
    labels[static_cast<std::size_t>(n + v)] =
        inst.labels[static_cast<std::size_t>(v)] + "'";
    g.for_neighbors(v, [&](Vertex u) {
      if (u > v) {
        edges.insert({v, u});
        edges.insert({n + v, n + u});
      }
    });
  }
  return build(2 * n, edges, std::move(labels));
}

std::vector<Vertex> oct_from_double_cover(int n,
                                          const std::vector<Vertex>& cover) {
  std::vector<std::uint8_t> in(static_cast<std::size_t>(2 * n), 0);
  for (Vertex v : cover) {
    VCS_CHECK(v >= 0 && v < 2 * n, "cover vertex outside the doubled graph");
    in[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<Vertex> oct;
  for (Vertex v = 0; v < n; ++v)
    if (in[static_cast<std::size_t>(v)] && in[static_cast<std::size_t>(n + v)])
      oct.push_back(v);
  return oct;
}

}  // namespace vcs
