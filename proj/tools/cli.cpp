#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "vcs/bounds.hpp"
#include "vcs/instance.hpp"
#include "vcs/reductions.hpp"
#include "vcs/solver.hpp"

namespace {

using vcs::Instance;
using vcs::ParseError;
using vcs::SolveResult;
using vcs::SolverConfig;
using vcs::Vertex;

struct SolveOptions {
  std::string input;
  std::string format = "edgelist";
  std::string output;
  bool complement = false;
  int branching = 2;
  int reductions = 4;
  int bounds = 4;
  bool no_mirror = false;
  bool no_packing = false;
  double time_limit = 0;
  std::uint64_t seed = 0;
  bool stats = false;
  bool no_timing = false;
};

struct GenerateOptions {
  std::string type;
  int n = 10;
  double p = 0.5;
  int clauses = 20;
  int attach = 2;
  std::uint64_t seed = 0;
  std::string format = "edgelist";
  std::string output;
};

struct AblateOptions {
  std::string dir;
  std::string format = "edgelist";
  std::string output;
  int jobs = 1;
  std::uint64_t seed = 0;
  double time_limit = 0;
  bool no_timing = false;
};

std::string fixed6(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

Instance load_graph(const std::string& path, const std::string& format,
                    bool complement) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw ParseError("cannot open " + path);
    in = &file;
  }
  Instance inst;
  if (format == "cnf") {
    inst = vcs::gadget_from_cnf(vcs::parse_cnf(*in));
  } else if (format == "dimacs") {
    inst = vcs::parse_dimacs(*in);
  } else {
    inst = vcs::parse_edge_list(*in);
  }
  return complement ? vcs::complement_of(inst) : inst;
}

SolverConfig search_config(const SolveOptions& opt) {
  SolverConfig cfg;
  cfg.branching = static_cast<SolverConfig::Branching>(opt.branching);
  cfg.rules = vcs::RuleSet::ladder(opt.reductions);
  cfg.bound = static_cast<vcs::BoundLevel>(opt.bounds);
  cfg.mirrors = !opt.no_mirror;
  cfg.packing = !opt.no_packing && cfg.rules.enabled(vcs::Rule::Packing);
  cfg.seed = opt.seed;
  cfg.time_limit_s = opt.time_limit;
  return cfg;
}

void add_search_options(CLI::App* cmd, SolveOptions& opt) {
  cmd->add_option("--branching", opt.branching,
                  "0 seeded random, 1 lowest degree, 2 highest degree")
      ->check(CLI::Range(0, 2));
  cmd->add_option("--reductions", opt.reductions,
                  "Reduction preset from 0 (none) to 4 (all rules)")
      ->check(CLI::Range(0, 4));
  cmd->add_option("--bounds", opt.bounds,
                  "Lower bound from 0 (none) to 4 (strongest of all)")
      ->check(CLI::Range(0, 4));
  cmd->add_flag("--no-mirror", opt.no_mirror,
                "Branch on the chosen vertex alone, without its mirrors");
  cmd->add_flag("--no-packing", opt.no_packing, "Drop packing constraints");
  cmd->add_option("--time-limit", opt.time_limit,
                  "Wall clock budget in seconds, 0 for none");
  cmd->add_option("--seed", opt.seed, "Seed for random branching");
  cmd->add_flag("--stats", opt.stats,
                "Print search statistics after the result");
  cmd->add_flag("--no-timing", opt.no_timing,
                "Report elapsed time as zero for reproducible output");
}

void print_stats(std::ostream& out, const SolveResult& res, bool no_timing) {
  const vcs::ReduceStats& f = res.stats.fires;
  out << "size=" << res.size << '\n';
  out << "branches=" << res.stats.branches << '\n';
  out << "prunes_bound=" << res.stats.prunes_bound << '\n';
  out << "prunes_packing=" << res.stats.prunes_packing << '\n';
  out << "fires_degree1=" << f.degree1 << '\n';
  out << "fires_dominance=" << f.dominance << '\n';
  out << "fires_unconfined=" << f.unconfined << '\n';
  out << "fires_lp=" << f.lp << '\n';
  out << "fires_fold2=" << f.fold2 << '\n';
  out << "fires_twin=" << f.twin << '\n';
  out << "fires_funnel=" << f.funnel << '\n';
  out << "fires_desk=" << f.desk << '\n';
  out << "fires_packing_rhs_zero=" << f.packing_rhs_zero << '\n';
  out << "fires_packing_rhs_positive=" << f.packing_rhs_positive << '\n';
  out << "elapsed_s=" << fixed6(no_timing ? 0.0 : res.stats.elapsed_s) << '\n';
  out << "completed=" << (res.completed ? 1 : 0) << '\n';
}

// Opens opt.output for the result document, or falls back to `out`.
std::ostream* open_doc(const std::string& path, std::ofstream& file,
                       std::ostream& out) {
  if (path.empty()) return &out;
  file.open(path);
  if (!file) throw ParseError("cannot open " + path);
  return &file;
}

int run_solve(const SolveOptions& opt, std::ostream& out) {
  const Instance inst = load_graph(opt.input, opt.format, opt.complement);
  const SolveResult res = vcs::solve_vertex_cover(inst.graph, search_config(opt));
  std::ofstream file;
  std::ostream* doc = open_doc(opt.output, file, out);
  *doc << "size " << res.size << '\n';
  for (Vertex v : res.cover) *doc << inst.labels[static_cast<std::size_t>(v)] << '\n';
  if (opt.stats) print_stats(out, res, opt.no_timing);
  return res.completed ? 0 : 2;
}

int run_oct(const SolveOptions& opt, std::ostream& out) {
  const Instance inst = load_graph(opt.input, opt.format, opt.complement);
  const Instance doubled = vcs::oct_double(inst);
  const SolveResult res =
      vcs::solve_vertex_cover(doubled.graph, search_config(opt));
  std::ofstream file;
  std::ostream* doc = open_doc(opt.output, file, out);
  if (res.size < 0) {
    *doc << "size -1\n";
  } else {
    const std::vector<Vertex> oct =
        vcs::oct_from_double_cover(inst.graph.slot_count(), res.cover);
    *doc << "size " << oct.size() << '\n';
    for (Vertex v : oct) *doc << inst.labels[static_cast<std::size_t>(v)] << '\n';
  }
  if (opt.stats) print_stats(out, res, opt.no_timing);
  return res.completed ? 0 : 2;
}

int run_generate(const GenerateOptions& opt, std::ostream& out) {
  std::ofstream file;
  std::ostream* doc = open_doc(opt.output, file, out);
  if (opt.format == "cnf" && opt.type != "cnf")
    throw ParseError("--format cnf is only valid with --type cnf");
  if (opt.type == "cnf" || opt.type == "gadget") {
    if (opt.n < 3) throw ParseError("--type " + opt.type + " needs --n of at least 3");
    if (opt.clauses < 1) throw ParseError("--clauses must be positive");
    const vcs::Cnf cnf = vcs::gen_cnf(opt.n, opt.clauses, opt.seed);
    if (opt.type == "cnf") {
      vcs::write_cnf(*doc, cnf);
      return 0;
    }
    const Instance inst = vcs::gadget_from_cnf(cnf);
    if (opt.format == "dimacs") vcs::write_dimacs(*doc, inst);
    else vcs::write_edge_list(*doc, inst);
    return 0;
  }
  if (opt.n < 0) throw ParseError("--n must not be negative");
  Instance inst;
  if (opt.type == "gnp") {
    inst = vcs::gen_gnp(opt.n, opt.p, opt.seed);
  } else if (opt.type == "tree") {
    if (opt.n < 1) throw ParseError("--type tree needs --n of at least 1");
    inst = vcs::gen_tree(opt.n, opt.seed);
  } else {
    if (opt.n < 1) throw ParseError("--type powerlaw needs --n of at least 1");
    if (opt.attach < 1) throw ParseError("--attach must be positive");
    inst = vcs::gen_power_law(opt.n, opt.attach, opt.seed);
  }
  if (opt.format == "dimacs") vcs::write_dimacs(*doc, inst);
  else vcs::write_edge_list(*doc, inst);
  return 0;
}

int run_ablate(const AblateOptions& opt, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  {
    std::error_code ec;
    fs::directory_iterator it(opt.dir, ec);
    if (ec) throw ParseError("cannot read directory " + opt.dir);
    for (const fs::directory_entry& entry : it)
      if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ParseError("no instance files in " + opt.dir);

  std::vector<Instance> instances;
  instances.reserve(files.size());
  for (const fs::path& p : files)
    instances.push_back(load_graph(p.string(), opt.format, false));

  struct Cell {
    std::size_t instance;
    int b, r, l;
  };
  std::vector<Cell> cells;
  cells.reserve(instances.size() * 75);
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (int b = 0; b <= 2; ++b)
      for (int r = 0; r <= 4; ++r)
        for (int l = 0; l <= 4; ++l) cells.push_back({i, b, r, l});

  struct Row {
    int size = -1;
    long long branches = 0;
    double elapsed = 0;
    bool completed = false;
  };
  std::vector<Row> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  std::string failure;

  auto worker = [&]() {
    for (;;) {
      if (failed.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      SolverConfig cfg;
      cfg.branching = static_cast<SolverConfig::Branching>(cell.b);
      cfg.rules = vcs::RuleSet::ladder(cell.r);
      cfg.bound = static_cast<vcs::BoundLevel>(cell.l);
      cfg.packing = cfg.rules.enabled(vcs::Rule::Packing);
      cfg.seed = opt.seed;
      cfg.time_limit_s = opt.time_limit;
      try {
        const SolveResult res =
            vcs::solve_vertex_cover(instances[cell.instance].graph, cfg);
        rows[i] = {res.size, res.stats.branches, res.stats.elapsed_s,
                   res.completed};
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        if (failure.empty()) failure = e.what();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  for (int t = 1; t < opt.jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failed.load()) {
    err << "internal error: " << failure << '\n';
    return 3;
  }

  std::ofstream file;
  std::ostream* doc = open_doc(opt.output, file, out);
  *doc << "instance,config,size,branches,elapsed_s,completed\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    const Row& row = rows[i];
    *doc << files[cell.instance].filename().string() << ",b" << cell.b << "-r"
         << cell.r << "-l" << cell.l << ',' << row.size << ',' << row.branches
         << ',' << fixed6(opt.no_timing ? 0.0 : row.elapsed) << ','
         << (row.completed ? 1 : 0) << '\n';
  }

  bool any_incomplete = false;
  bool inconsistent = false;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    int agreed = -1;
    bool seen = false;
    for (std::size_t j = i * 75; j < (i + 1) * 75; ++j) {
      if (!rows[j].completed) {
        any_incomplete = true;
        continue;
      }
      if (!seen) {
        agreed = rows[j].size;
        seen = true;
      } else if (rows[j].size != agreed) {
        inconsistent = true;
      }
    }
    if (inconsistent) {
      err << "inconsistent cover sizes for " << files[i].filename().string()
          << '\n';
      return 3;
    }
  }
  return any_incomplete ? 2 : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact minimum vertex cover and odd cycle transversal solver",
               "vcsolver"};
  app.require_subcommand(1);

  const std::vector<std::string> formats = {"edgelist", "dimacs", "cnf"};

  SolveOptions sopt;
  CLI::App* solve = app.add_subcommand("solve", "Compute a minimum vertex cover");
  solve->add_option("input", sopt.input, "Graph file, or - for stdin")->required();
  solve->add_option("--format", sopt.format,
                    "edgelist, dimacs, or cnf (cnf solves its hardness graph)")
      ->check(CLI::IsMember(formats));
  solve->add_flag("--complement", sopt.complement,
                  "Work on the complement of the input graph");
  solve->add_option("--output", sopt.output,
                    "Write the cover to this file instead of stdout");
  add_search_options(solve, sopt);

  SolveOptions oopt;
  CLI::App* oct =
      app.add_subcommand("oct", "Compute a minimum odd cycle transversal");
  oct->add_option("input", oopt.input, "Graph file, or - for stdin")->required();
  oct->add_option("--format", oopt.format, "edgelist, dimacs, or cnf")
      ->check(CLI::IsMember(formats));
  oct->add_flag("--complement", oopt.complement,
                "Work on the complement of the input graph");
  oct->add_option("--output", oopt.output,
                  "Write the transversal to this file instead of stdout");
  add_search_options(oct, oopt);

  GenerateOptions gopt;
  CLI::App* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--type", gopt.type, "gnp, tree, powerlaw, cnf, or gadget")
      ->required()
      ->check(CLI::IsMember({"gnp", "tree", "powerlaw", "cnf", "gadget"}));
  generate->add_option("--n", gopt.n,
                       "Vertex count, or variable count for cnf and gadget");
  generate->add_option("--p", gopt.p, "Edge probability for gnp")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--clauses", gopt.clauses,
                       "Clause count for cnf and gadget");
  generate->add_option("--attach", gopt.attach,
                       "Edges per new vertex for powerlaw");
  generate->add_option("--seed", gopt.seed, "Generator seed");
  generate->add_option("--format", gopt.format,
                       "edgelist or dimacs (cnf type always writes cnf)")
      ->check(CLI::IsMember(formats));
  generate->add_option("--output", gopt.output, "Write here instead of stdout");

  AblateOptions aopt;
  CLI::App* ablate = app.add_subcommand(
      "ablate", "Sweep branching, reduction, and bound settings over a corpus");
  ablate->add_option("--dir", aopt.dir, "Directory of instance files")->required();
  ablate->add_option("--format", aopt.format, "Format of every corpus file")
      ->check(CLI::IsMember(formats));
  ablate->add_option("--output", aopt.output,
                     "Write the csv to this file instead of stdout");
  ablate->add_option("--jobs", aopt.jobs, "Worker threads")
      ->check(CLI::Range(1, 1024));
  ablate->add_option("--seed", aopt.seed, "Seed for random branching");
  ablate->add_option("--time-limit", aopt.time_limit,
                     "Per-cell wall clock budget in seconds, 0 for none");
  ablate->add_flag("--no-timing", aopt.no_timing,
                   "Report elapsed times as zero for reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return run_solve(sopt, out);
    if (oct->parsed()) return run_oct(oopt, out);
    if (generate->parsed()) return run_generate(gopt, out);
    return run_ablate(aopt, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const vcs::InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}
