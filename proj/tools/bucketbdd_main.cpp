// Command-line front end: solve, generate, experiment.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bucketbdd/bucket_elimination.hpp"
#include "bucketbdd/experiment.hpp"
#include "bucketbdd/generators.hpp"

using namespace bucketbdd;

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitLimit = 30;
constexpr int kExitError = 1;

VarOrder read_order_file(const std::string &path, std::size_t num_vars) {
  std::istringstream in(read_text_file(path));
  std::vector<VarId> seq;
  long long v = 0;
  while (in >> v) {
    if (v < 1)
      throw ValidationError("order file '" + path + "' has non-positive entry");
    seq.push_back(static_cast<VarId>(v));
  }
  if (!in.eof())
    throw ValidationError("order file '" + path + "' has a non-integer token");
  if (seq.size() != num_vars)
    throw ValidationError("order file '" + path + "' lists " +
                          std::to_string(seq.size()) + " variables, formula has " +
                          std::to_string(num_vars));
  return VarOrder(std::move(seq));
}

VarOrder resolve_order(const std::string &which, const CnfFormula &f) {
  if (which == "row" || which == "col") {
    if (!f.name_map)
      throw ValidationError("order '" + which +
                            "' needs a matrix formula; pass an order file instead");
    return which == "row" ? row_order(f) : col_order(f);
  }
  return read_order_file(which, f.num_vars);
}

std::string order_to_text(const VarOrder &o) {
  std::ostringstream out;
  for (std::size_t k = 0; k < o.size(); ++k)
    out << (k ? " " : "") << o.at(k);
  out << '\n';
  return out.str();
}

struct SolveArgs {
  std::string cnf, gphp;
  std::optional<int> php_n, gphp_t2;
  std::string bdd_order, elim_order, trace, conjoin = "insertion";
  bool single = false;
  std::optional<std::size_t> node_limit;
};

int cmd_solve(const SolveArgs &a) {
  CnfFormula f;
  std::vector<std::string> warnings;
  if (!a.cnf.empty())
    f = read_dimacs_file(a.cnf, &warnings);
  else if (a.php_n)
    f = php(*a.php_n);
  else if (!a.gphp.empty())
    f = gphp(parse_graph(read_text_file(a.gphp)));
  else
    f = gphp(theorem2_graph(*a.gphp_t2));
  for (const auto &w : warnings)
    std::cerr << "c warning: " << w << '\n';

  auto pick = [&](const std::string &given, const char *matrix_default) {
    if (!given.empty())
      return resolve_order(given, f);
    return f.name_map ? resolve_order(matrix_default, f) : VarOrder::natural(f.num_vars);
  };

  Schedule s;
  if (a.single) {
    const std::string &given = !a.bdd_order.empty() ? a.bdd_order : a.elim_order;
    s = Schedule::single(pick(given, "col"));
  } else {
    s = Schedule{pick(a.bdd_order, "row"), pick(a.elim_order, "col")};
  }

  RunOptions opts;
  opts.node_limit = a.node_limit;
  opts.conjoin_order =
      a.conjoin == "smallest-first" ? ConjoinOrder::SmallestFirst : ConjoinOrder::Insertion;
  const RunResult r = run(f, s, opts);

  if (!a.trace.empty())
    write_text_file(a.trace, trace_to_csv(r, f));

  switch (r.decision) {
  case Decision::Sat:
    std::cout << "s SATISFIABLE\n";
    break;
  case Decision::Unsat:
    std::cout << "s UNSATISFIABLE\n";
    break;
  case Decision::Limit:
    std::cout << "s UNKNOWN\n";
    break;
  }
  std::cout << "c variables " << f.num_vars << " clauses " << f.clauses.size() << '\n'
            << "c max_intermediate_size " << r.max_intermediate_size << '\n'
            << "c peak_nodes " << r.peak_allocated_nodes << '\n'
            << "c steps " << r.trace.size() << '\n'
            << "c wall_ms " << std::fixed << std::setprecision(3)
            << std::chrono::duration<double, std::milli>(r.wall_time).count() << '\n';
  switch (r.decision) {
  case Decision::Sat:
    return kExitSat;
  case Decision::Unsat:
    return kExitUnsat;
  case Decision::Limit:
    return kExitLimit;
  }
  return kExitError;
}

struct GenerateArgs {
  std::optional<int> php_n, gphp_t2;
  std::string graph, out, order_row, order_col;
};

int cmd_generate(const GenerateArgs &a) {
  CnfFormula f;
  if (a.php_n)
    f = php(*a.php_n);
  else if (a.gphp_t2)
    f = gphp(theorem2_graph(*a.gphp_t2));
  else
    f = gphp(parse_graph(read_text_file(a.graph)));
  write_text_file(a.out, write_dimacs(f));
  if (!a.order_row.empty())
    write_text_file(a.order_row, order_to_text(row_order(f)));
  if (!a.order_col.empty())
    write_text_file(a.order_col, order_to_text(col_order(f)));
  std::cout << "c wrote " << a.out << " (" << f.num_vars << " variables, "
            << f.clauses.size() << " clauses)\n";
  return 0;
}

struct ExperimentArgs {
  std::string suite, out;
  std::optional<int> n_min, n_max;
  std::size_t node_limit = kDefaultNodeLimit;
  bool serial = false;
};

std::pair<int, int> default_range(Suite s) {
  switch (s) {
  case Suite::Theorem1:
    return {2, 40};
  case Suite::Theorem2:
    return {4, 13};
  case Suite::LemmaCol:
    return {4, 14};
  case Suite::LemmaRow:
    return {4, 12};
  case Suite::Lemma1:
    return {2, 16};
  case Suite::OracleFuzz:
    return {1, 500};
  }
  return {1, 1};
}

int cmd_experiment(const ExperimentArgs &a) {
  SuiteConfig c;
  c.suite = parse_suite(a.suite);
  const auto [lo, hi] = default_range(c.suite);
  c.n_min = a.n_min.value_or(lo);
  c.n_max = a.n_max.value_or(hi);
  c.node_limit = a.node_limit;
  c.parallel = !a.serial;
  if (const char *env = std::getenv("BUCKETBDD_SEED"))
    c.seed = std::stoull(env, nullptr, 0);

  const auto rows = run_suite(c);
  const std::string csv = rows_to_csv(c.suite, rows);
  std::ostream *report = &std::cout;
  if (a.out.empty()) {
    std::cout << csv;
    report = &std::cerr;
  } else {
    write_text_file(a.out, csv);
  }
  const Verdict v = evaluate(c.suite, rows);
  for (const auto &note : v.notes)
    *report << "# " << note << '\n';
  *report << "verdict " << to_string(c.suite) << ' ' << (v.pass ? "PASS" : "FAIL")
          << '\n';
  return v.pass ? 0 : 2;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"BDD-based bucket elimination with separate BDD and elimination orders"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto *sc = app.add_subcommand("solve", "decide a CNF by bucket elimination");
  auto *input = sc->add_option_group("input");
  input->add_option("--cnf", solve.cnf, "DIMACS CNF file")->check(CLI::ExistingFile);
  input->add_option("--php", solve.php_n, "pigeonhole formula PHP_n");
  input->add_option("--gphp", solve.gphp, "graph file for G-PHP")->check(CLI::ExistingFile);
  input->add_option("--gphp-t2", solve.gphp_t2, "G-PHP on the exponential-case graph");
  input->require_option(1);
  sc->add_option("--bdd-order", solve.bdd_order, "row | col | order file");
  sc->add_option("--elim-order", solve.elim_order, "row | col | order file");
  sc->add_flag("--single-order", solve.single, "use one order for BDDs and elimination");
  sc->add_option("--node-limit", solve.node_limit, "cap on live BDD nodes");
  sc->add_option("--trace", solve.trace, "write the step trace as CSV");
  sc->add_option("--conjoin-order", solve.conjoin, "bucket conjunction order")
      ->check(CLI::IsMember({"insertion", "smallest-first"}));

  GenerateArgs gen;
  auto *gc = app.add_subcommand("generate", "write pigeonhole formulas and orders");
  auto *gin = gc->add_option_group("input");
  gin->add_option("--php", gen.php_n, "pigeonhole formula PHP_n");
  gin->add_option("--gphp-t2", gen.gphp_t2, "G-PHP on the exponential-case graph");
  gin->add_option("--graph", gen.graph, "graph file for G-PHP")->check(CLI::ExistingFile);
  gin->require_option(1);
  gc->add_option("--out", gen.out, "DIMACS output file")->required();
  gc->add_option("--order-out-row", gen.order_row, "write the row-wise order");
  gc->add_option("--order-out-col", gen.order_col, "write the column-wise order");

  ExperimentArgs exp;
  auto *ec = app.add_subcommand("experiment", "run a scaling experiment");
  ec->add_option("--suite", exp.suite, "theorem1 | theorem2 | lemma-col | lemma-row | "
                                       "lemma1 | oracle-fuzz")
      ->required();
  ec->add_option("--n-min", exp.n_min, "first n (instance index for oracle-fuzz)");
  ec->add_option("--n-max", exp.n_max, "last n");
  ec->add_option("--node-limit", exp.node_limit, "cap on live BDD nodes per row");
  ec->add_option("--out", exp.out, "CSV output file (default: stdout)");
  ec->add_flag("--serial", exp.serial, "run rows one after another");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*sc)
      return cmd_solve(solve);
    if (*gc)
      return cmd_generate(gen);
    return cmd_experiment(exp);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
