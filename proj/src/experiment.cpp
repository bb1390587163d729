#include "bucketbdd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "bucketbdd/generators.hpp"

namespace bucketbdd {

const char *to_string(Suite s) noexcept {
  switch (s) {
  case Suite::Theorem1:
    return "theorem1";
  case Suite::Theorem2:
    return "theorem2";
  case Suite::LemmaCol:
    return "lemma-col";
  case Suite::LemmaRow:
    return "lemma-row";
  case Suite::Lemma1:
    return "lemma1";
  case Suite::OracleFuzz:
    return "oracle-fuzz";
  }
  return "?";
}

Suite parse_suite(std::string_view name) {
  for (const Suite s : {Suite::Theorem1, Suite::Theorem2, Suite::LemmaCol,
                        Suite::LemmaRow, Suite::Lemma1, Suite::OracleFuzz})
    if (name == to_string(s))
      return s;
  throw ValidationError("unknown suite '" + std::string(name) + "'");
}

int max_n(Suite s) noexcept {
  switch (s) {
  case Suite::Theorem1:
    return 40;
  case Suite::Theorem2:
    return 13;
  case Suite::LemmaCol:
  case Suite::LemmaRow:
    return 14;
  case Suite::Lemma1:
    return 16;
  case Suite::OracleFuzz:
    return 100'000;
  }
  return 0;
}

void validate(const SuiteConfig &c) {
  if (c.n_min < 1 || c.n_min > c.n_max)
    throw ValidationError("need 1 <= n-min <= n-max");
  if (c.n_max > max_n(c.suite))
    throw ValidationError(std::string("suite ") + to_string(c.suite) +
                          " accepts n up to " + std::to_string(max_n(c.suite)));
}

CnfFormula fuzz_instance(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n)));
  const std::size_t vars = 1 + rng() % 12;
  const std::size_t clauses = rng() % 41;
  return random_cnf(vars, clauses, 4, rng());
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

void take_run(ExperimentRow &row, const RunResult &r) {
  row.decision = r.decision;
  row.max_intermediate_size = r.max_intermediate_size;
  row.peak_nodes = r.peak_allocated_nodes;
}

ExperimentRow lemma1_row(int n, std::size_t node_limit) {
  ExperimentRow row;
  row.n = n;
  const auto chain = and_or_chain(n);
  try {
    Manager block(chain.blockwise, node_limit);
    const NodeRef fb = cnf_to_bdd(block, chain.formula);
    row.blockwise_size = block.node_count(fb);
    Manager inter(chain.interleaved, node_limit);
    const NodeRef fi = cnf_to_bdd(inter, chain.formula);
    row.interleaved_size = inter.node_count(fi);
    row.decision = fb.is_false() ? Decision::Unsat : Decision::Sat;
    row.max_intermediate_size = *row.blockwise_size;
    row.peak_nodes = std::max(block.stats().peak_live_nodes,
                              inter.stats().peak_live_nodes);
  } catch (const NodeLimitExceeded &) {
    row.decision = Decision::Limit;
  }
  return row;
}

ExperimentRow fuzz_row(int n, std::size_t node_limit, std::uint64_t seed) {
  ExperimentRow row;
  row.n = n;
  const CnfFormula f = fuzz_instance(n, seed);
  const bool expected = brute_force_sat(f);
  bool agrees = true;
  RunOptions opts;
  opts.node_limit = node_limit;
  for (int k = 0; k < kFuzzSchedules; ++k) {
    const std::uint64_t s = seed + 1000003ULL * static_cast<std::uint64_t>(n) +
                            2ULL * static_cast<std::uint64_t>(k);
    const Schedule sched{random_order(f.num_vars, s), random_order(f.num_vars, s + 1)};
    const RunResult r = run(f, sched, opts);
    if (k == 0)
      take_run(row, r);
    row.max_intermediate_size = std::max(row.max_intermediate_size, r.max_intermediate_size);
    row.peak_nodes = std::max(row.peak_nodes, r.peak_allocated_nodes);
    const bool got_sat = r.decision == Decision::Sat;
    if (r.decision == Decision::Limit || got_sat != expected)
      agrees = false;
  }
  row.oracle_agrees = agrees;
  return row;
}

} // namespace

ExperimentRow run_row(Suite suite, int n, std::size_t node_limit, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRow row;
  row.n = n;
  RunOptions opts;
  opts.node_limit = node_limit;
  switch (suite) {
  case Suite::Theorem1: {
    const CnfFormula f = php(n);
    take_run(row, run(f, Schedule{row_order(f), col_order(f)}, opts));
    break;
  }
  case Suite::Theorem2: {
    const CnfFormula f = gphp(theorem2_graph(n));
    const RunResult r = run(f, Schedule{row_order(f), col_order(f)}, opts);
    take_run(row, r);
    row.probe_size = probe_named_step(r, *find_matrix_var(f, 2 * n, n + 1));
    break;
  }
  case Suite::LemmaCol: {
    const CnfFormula f = php(n);
    take_run(row, run_single_order(f, col_order(f), opts));
    break;
  }
  case Suite::LemmaRow: {
    const CnfFormula f = php(n);
    take_run(row, run_single_order(f, row_order(f), opts));
    break;
  }
  case Suite::Lemma1:
    row = lemma1_row(n, node_limit);
    break;
  case Suite::OracleFuzz:
    row = fuzz_row(n, node_limit, seed);
    break;
  }
  row.wall_ms = elapsed_ms(start);
  return row;
}

std::vector<ExperimentRow> run_suite(const SuiteConfig &c) {
  validate(c);
  const int count = c.n_max - c.n_min + 1;
  std::vector<ExperimentRow> rows(static_cast<std::size_t>(count));
  if (c.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < count; ++k)
      rows[static_cast<std::size_t>(k)] = run_row(c.suite, c.n_min + k, c.node_limit, c.seed);
  } else {
    for (int k = 0; k < count; ++k)
      rows[static_cast<std::size_t>(k)] = run_row(c.suite, c.n_min + k, c.node_limit, c.seed);
  }
  return rows;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw ValidationError("slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

namespace {

std::string row_tag(const ExperimentRow &r) { return "n=" + std::to_string(r.n) + ": "; }

double pow2(int e) { return std::ldexp(1.0, e); }

} // namespace

Verdict evaluate(Suite suite, const std::vector<ExperimentRow> &rows) {
  Verdict v;
  auto fail = [&](std::string why) {
    v.pass = false;
    v.notes.push_back(std::move(why));
  };
  if (rows.empty()) {
    fail("no rows");
    return v;
  }
  switch (suite) {
  case Suite::Theorem1: {
    std::vector<double> xs, ys;
    for (const auto &r : rows) {
      if (r.decision != Decision::Unsat)
        fail(row_tag(r) + "expected UNSAT, got " + to_string(r.decision));
      if (r.n >= 10 && r.n <= 40) {
        xs.push_back(r.n);
        ys.push_back(static_cast<double>(r.max_intermediate_size));
      }
    }
    if (xs.size() >= 2) {
      const double slope = loglog_slope(xs, ys);
      std::ostringstream s;
      s << std::fixed << std::setprecision(3) << "log-log slope over n in [10,40] = "
        << slope << " (bound 3.5)";
      v.notes.push_back(s.str());
      if (!(slope <= 3.5))
        fail("slope exceeds 3.5");
    } else {
      v.notes.push_back("fewer than two rows in [10,40]; slope check skipped");
    }
    break;
  }
  case Suite::Theorem2: {
    const int largest = rows.back().n;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto &r = rows[k];
      const bool limit_ok = r.decision == Decision::Limit && r.n == largest;
      if (r.decision != Decision::Unsat && !limit_ok)
        fail(row_tag(r) + "expected UNSAT, got " + to_string(r.decision));
      if (!r.probe_size) {
        fail(row_tag(r) + "step before quantifying p_{2n,n+1} never reached");
        continue;
      }
      if (static_cast<double>(*r.probe_size) < pow2(r.n - 1))
        fail(row_tag(r) + "probe size " + std::to_string(*r.probe_size) +
             " below 2^(n-1)");
      if (k > 0 && r.n >= 8 && rows[k - 1].probe_size && rows[k - 1].n == r.n - 1) {
        const double ratio = static_cast<double>(*r.probe_size) /
                             static_cast<double>(*rows[k - 1].probe_size);
        if (ratio < 1.8)
          fail(row_tag(r) + "growth ratio " + std::to_string(ratio) + " below 1.8");
      }
    }
    break;
  }
  case Suite::LemmaCol:
  case Suite::LemmaRow:
    for (const auto &r : rows) {
      if (r.decision == Decision::Sat)
        fail(row_tag(r) + "PHP reported satisfiable");
      if (static_cast<double>(r.max_intermediate_size) < pow2(r.n))
        fail(row_tag(r) + "largest intermediate BDD " +
             std::to_string(r.max_intermediate_size) + " below 2^n");
    }
    break;
  case Suite::Lemma1:
    for (const auto &r : rows) {
      if (!r.blockwise_size || !r.interleaved_size) {
        fail(row_tag(r) + "node limit reached");
        continue;
      }
      if (static_cast<double>(*r.blockwise_size) < pow2(r.n))
        fail(row_tag(r) + "blockwise size below 2^n");
      if (*r.interleaved_size > 3 * static_cast<std::size_t>(r.n) + 2)
        fail(row_tag(r) + "interleaved size above 3n+2");
    }
    break;
  case Suite::OracleFuzz: {
    std::size_t agree = 0;
    for (const auto &r : rows)
      if (r.oracle_agrees.value_or(false))
        ++agree;
    v.notes.push_back(std::to_string(agree) + "/" + std::to_string(rows.size()) +
                      " instances agree with brute force");
    if (agree != rows.size())
      fail("decision disagreement with brute force");
    break;
  }
  }
  return v;
}

std::string rows_to_csv(Suite suite, const std::vector<ExperimentRow> &rows) {
  std::ostringstream out;
  out << "suite,n,decision,max_intermediate_size,peak_nodes,wall_ms";
  if (suite == Suite::Lemma1)
    out << ",blockwise_size,interleaved_size";
  if (suite == Suite::Theorem2)
    out << ",probe_size";
  if (suite == Suite::OracleFuzz)
    out << ",oracle_agrees";
  out << '\n';
  for (const auto &r : rows) {
    out << to_string(suite) << ',' << r.n << ',' << to_string(r.decision) << ','
        << r.max_intermediate_size << ',' << r.peak_nodes << ',' << std::fixed
        << std::setprecision(3) << r.wall_ms;
    if (suite == Suite::Lemma1)
      out << ',' << (r.blockwise_size ? std::to_string(*r.blockwise_size) : "")
          << ',' << (r.interleaved_size ? std::to_string(*r.interleaved_size) : "");
    if (suite == Suite::Theorem2)
      out << ',' << (r.probe_size ? std::to_string(*r.probe_size) : "");
    if (suite == Suite::OracleFuzz)
      out << ',' << (r.oracle_agrees.value_or(false) ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

} // namespace bucketbdd
