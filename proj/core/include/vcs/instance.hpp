#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcs/graph.hpp"

namespace vcs {

// Raised on malformed input files.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A problem instance: the graph plus one printable name per vertex.
struct Instance {
  Graph graph{0};
  std::vector<std::string> labels;
};

// A 3-CNF formula.  Literals are 1-based variable ids, negative when
// negated.
struct Cnf {
  int variables = 0;
  std::vector<std::array<int, 3>> clauses;
};

// Whitespace-separated token pairs, one edge per line; a line with a
// single token declares an isolated vertex; '#' starts a comment.
// Vertices are numbered by first appearance and keep their token as
// label.  Duplicate edges collapse.
Instance parse_edge_list(std::istream& in);

// 'c' comment lines, one 'p edge <n> <m>' header, then 'e <u> <v>'
// lines with 1-based endpoints.
Instance parse_dimacs(std::istream& in);

// DIMACS cnf with exactly three literals per clause.
Cnf parse_cnf(std::istream& in);

void write_edge_list(std::ostream& out, const Instance& inst);
void write_dimacs(std::ostream& out, const Instance& inst);
void write_cnf(std::ostream& out, const Cnf& cnf);

// Same vertices, complemented edge set.
Instance complement_of(const Instance& inst);

// Generators; every call is deterministic in its arguments.
Instance gen_gnp(int n, double p, std::uint64_t seed);
Instance gen_tree(int n, std::uint64_t seed);
Instance gen_power_law(int n, int attach, std::uint64_t seed);
Cnf gen_cnf(int variables, int clauses, std::uint64_t seed);

// Hardness construction: two adjacent vertices per variable, a
// triangle per clause, and one edge from each triangle corner to the
// literal it carries.  The graph has 2n+3m vertices and n+6m edges,
// and its minimum cover has size n+2m exactly when the formula is
// satisfiable.
Instance gadget_from_cnf(const Cnf& cnf);

// Doubled graph for odd cycle transversal: vertices v and n+v per
// original vertex, both copies of every edge, plus the rung {v, n+v}.
Instance oct_double(const Instance& inst);

// Vertices whose both copies sit in a minimum cover of the doubled
// graph form a minimum odd cycle transversal.
std::vector<Vertex> oct_from_double_cover(int n,
                                          const std::vector<Vertex>& cover);

}  // namespace vcs
