#include <gtest/gtest.h>

#include <random>

#include "bucketbdd/bucket_elimination.hpp"
#include "bucketbdd/generators.hpp"
#include "support/truth_table.hpp"

using namespace bucketbdd;

namespace {

Schedule theorem_schedule(const CnfFormula &f) { return {row_order(f), col_order(f)}; }

std::size_t max_event_size(const RunResult &r) {
  std::size_t best = 0;
  for (const auto &e : r.trace)
    best = std::max(best, e.result_size);
  return best;
}

} // namespace

TEST(FirstVarTest, UsesEliminationOrder) {
  Manager m(VarOrder::natural(3));
  const NodeRef f = m.apply_or(m.make_literal(1, true), m.make_literal(3, true));
  EXPECT_EQ(first_var(m, f, VarOrder({3, 2, 1})), 3U);
  EXPECT_EQ(first_var(m, f, VarOrder({2, 1, 3})), 1U);
  EXPECT_FALSE(first_var(m, m.make_true(), VarOrder::natural(3)));
}

TEST(RunTest, RefutesSmallPigeonholes) {
  for (int n = 1; n <= 8; ++n) {
    const auto f = php(n);
    const RunResult r = run(f, theorem_schedule(f));
    EXPECT_EQ(r.decision, Decision::Unsat) << "n=" << n;
    EXPECT_GE(r.max_intermediate_size, 1U);
    EXPECT_EQ(r.max_intermediate_size, max_event_size(r));
    EXPECT_GE(r.peak_allocated_nodes, r.max_intermediate_size);
  }
}

TEST(RunTest, EmptyFormulaAndEmptyClause) {
  CnfFormula empty;
  empty.num_vars = 3;
  const RunResult sat = run_single_order(empty, VarOrder::natural(3));
  EXPECT_EQ(sat.decision, Decision::Sat);
  // Every bucket is empty; each still reports its quantification.
  ASSERT_EQ(sat.trace.size(), 3U);
  for (const auto &e : sat.trace) {
    EXPECT_EQ(e.phase, Phase::Quantify);
    EXPECT_EQ(e.result_size, 1U);
  }

  const BipartiteGraph lonely(1, 2, {{1, 1}});
  const RunResult unsat = run_single_order(gphp(lonely), VarOrder::natural(1));
  EXPECT_EQ(unsat.decision, Decision::Unsat);
  EXPECT_TRUE(unsat.trace.empty());
}

TEST(RunTest, ScheduleMustMatchFormula) {
  const auto f = php(2);
  EXPECT_THROW(run_single_order(f, VarOrder::natural(5)), ValidationError);
  EXPECT_THROW(run(f, {VarOrder::natural(6), VarOrder::natural(7)}), ValidationError);
}

TEST(RunTest, TraceStepsAreSequentialAndQuantifyMatchesOrder) {
  const auto f = php(3);
  const Schedule s = theorem_schedule(f);
  RunOptions opts;
  opts.early_exit = false;
  const RunResult r = run(f, s, opts);
  EXPECT_EQ(r.decision, Decision::Unsat);
  std::vector<VarId> quantified;
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    EXPECT_EQ(r.trace[k].step, k);
    if (r.trace[k].phase == Phase::Quantify)
      quantified.push_back(r.trace[k].var);
  }
  EXPECT_EQ(quantified, s.elim_order.sequence());
}

TEST(RunTest, OracleFuzzAgainstBruteForce) {
  std::mt19937_64 rng(42);
  RunOptions checked;
  checked.check_invariants = true;
  int instances = 0;
  for (; instances < 500; ++instances) {
    const std::size_t n = 1 + rng() % 12;
    const CnfFormula f = random_cnf(n, rng() % 41, 1 + rng() % 4, rng());
    const Decision expected = brute_force_sat(f) ? Decision::Sat : Decision::Unsat;
    for (int s = 0; s < 5; ++s) {
      const Schedule sched{random_order(n, rng()), random_order(n, rng())};
      const RunOptions &opts = instances % 10 == 0 ? checked : RunOptions{};
      ASSERT_EQ(run(f, sched, opts).decision, expected)
          << "instance " << instances << " schedule " << s;
    }
  }
  EXPECT_EQ(instances, 500);
}

TEST(RunTest, EarlyExitDoesNotChangeTheDecision) {
  std::mt19937_64 rng(8);
  RunOptions late;
  late.early_exit = false;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng() % 10;
    const CnfFormula f = random_cnf(n, rng() % 30, 3, rng());
    const Schedule s{random_order(n, rng()), random_order(n, rng())};
    const RunResult a = run(f, s);
    const RunResult b = run(f, s, late);
    EXPECT_EQ(a.decision, b.decision);
    EXPECT_GE(b.trace.size(), a.trace.size());
  }
}

TEST(RunTest, SmallestFirstAgreesWithInsertion) {
  std::mt19937_64 rng(31);
  RunOptions smallest;
  smallest.conjoin_order = ConjoinOrder::SmallestFirst;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng() % 10;
    const CnfFormula f = random_cnf(n, rng() % 30, 3, rng());
    const Schedule s{random_order(n, rng()), random_order(n, rng())};
    EXPECT_EQ(run(f, s).decision, run(f, s, smallest).decision);
  }
}

TEST(RunTest, Deterministic) {
  const auto f = gphp(theorem2_graph(5));
  const RunResult a = run(f, theorem_schedule(f));
  const RunResult b = run(f, theorem_schedule(f));
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    EXPECT_EQ(a.trace[k].result_size, b.trace[k].result_size);
    EXPECT_EQ(a.trace[k].live_nodes, b.trace[k].live_nodes);
    EXPECT_EQ(a.trace[k].apply_calls, b.trace[k].apply_calls);
  }
  EXPECT_EQ(a.peak_allocated_nodes, b.peak_allocated_nodes);
}

TEST(RunTest, NodeLimitKeepsPartialTrace) {
  const auto f = php(6);
  RunOptions opts;
  opts.node_limit = 1000;
  const RunResult r = run_single_order(f, col_order(f), opts);
  EXPECT_EQ(r.decision, Decision::Limit);
  EXPECT_FALSE(r.trace.empty());
  EXPECT_LE(r.peak_allocated_nodes, 1000U);
}

TEST(RunTest, SingleOrderPhp4HasExponentialStep) {
  const auto f = php(4);
  const RunResult col = run_single_order(f, col_order(f));
  const RunResult row = run_single_order(f, row_order(f));
  EXPECT_EQ(col.decision, Decision::Unsat);
  EXPECT_EQ(row.decision, Decision::Unsat);
  EXPECT_GE(max_event_size(col), 16U);
  EXPECT_GE(max_event_size(row), 16U);
}

TEST(ProbeTest, SparseGraphSmallInstances) {
  for (int n = 3; n <= 6; ++n) {
    const auto f = gphp(theorem2_graph(n));
    const RunResult r = run(f, theorem_schedule(f));
    EXPECT_EQ(r.decision, Decision::Unsat);
    const auto target = find_matrix_var(f, 2 * n, n + 1);
    ASSERT_TRUE(target);
    const auto probe = probe_named_step(r, *target);
    ASSERT_TRUE(probe) << "n=" << n;
    EXPECT_GE(*probe, std::size_t{1} << (n - 1)) << "n=" << n;
    EXPECT_LE(*probe, r.max_intermediate_size);
  }
  EXPECT_FALSE(find_matrix_var(gphp(theorem2_graph(3)), 1, 7));
}

TEST(ProbeTest, PicksLastConjoinBeforeQuantify) {
  RunResult r;
  r.trace = {{0, Phase::Conjoin, 4, {3, 3}, 5, 0, 0},
             {1, Phase::Conjoin, 4, {5, 3}, 9, 0, 0},
             {2, Phase::Quantify, 4, {9}, 4, 0, 0},
             {3, Phase::Quantify, 2, {}, 1, 0, 0}};
  EXPECT_EQ(probe_named_step(r, 4), 9U);
  EXPECT_FALSE(probe_named_step(r, 2));
  EXPECT_FALSE(probe_named_step(r, 7));
}

TEST(TraceCsvTest, HeaderAndMatrixCoordinates) {
  const auto f = php(1);
  const RunResult r = run(f, theorem_schedule(f));
  const std::string csv = trace_to_csv(r, f);
  EXPECT_EQ(csv.rfind("step,phase,var_i,var_j,var_id,operand_sizes,result_size,"
                      "live_nodes,apply_calls\n",
                      0),
            0U);
  EXPECT_NE(csv.find("conjoin,1,1,1,"), std::string::npos);
}

// Conjoin every clause on column 1 of PHP_3, quantify that column away and
// zero column 4. The result holds exactly when some row i has
// p_{i,2} = p_{i,3} = 0.
TEST(ColumnEliminationTest, FirstColumnResultMatchesOracle) {
  const int n = 3;
  const auto f = php(n);
  const Schedule s = theorem_schedule(f);
  Manager m(s.bdd_order);
  auto p = [&](int i, int j) { return *find_matrix_var(f, i, j); };

  NodeRef acc = m.make_true();
  for (const auto &c : f.clauses) {
    bool touches_col1 = false;
    for (const auto &lit : c.literals())
      touches_col1 = touches_col1 || (*f.name_map)[lit.var - 1].col == 1;
    if (touches_col1)
      acc = m.apply_and(acc, clause_to_bdd(m, c));
  }
  for (int i = 1; i <= n; ++i)
    acc = m.exists(acc, p(i, 1));
  for (int i = 1; i <= n; ++i)
    for (int j = 4; j <= n + 1; ++j)
      acc = m.restrict(acc, p(i, j), false);

  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
    const Assignment a = Assignment::from_bits(f.num_vars, bits);
    bool expected = false;
    for (int i = 1; i <= n; ++i)
      expected = expected || (!*a.get(p(i, 2)) && !*a.get(p(i, 3)));
    ASSERT_EQ(m.evaluate(acc, a), expected) << "bits " << bits;
  }
  EXPECT_TRUE(m.check_invariants(acc).empty());
}

TEST(ObserverTest, SeesEveryEventWithItsBdd) {
  const auto f = php(3);
  std::size_t events = 0;
  RunOptions opts;
  opts.observer = [&](const Manager &m, const TraceEvent &e, NodeRef g) {
    EXPECT_EQ(m.node_count(g), e.result_size);
    EXPECT_EQ(e.step, events);
    ++events;
  };
  const RunResult r = run(f, theorem_schedule(f), opts);
  EXPECT_EQ(events, r.trace.size());
}

TEST(ObserverTest, PigeonholeLevelWidthsStayPolynomial) {
  // Widest level across all intermediate BDDs grows far slower than 2^n.
  auto widest = [](int n) {
    const auto f = php(n);
    std::size_t best = 0;
    RunOptions opts;
    opts.observer = [&](const Manager &m, const TraceEvent &, NodeRef g) {
      for (const auto &[var, w] : m.level_widths(g))
        best = std::max(best, w);
    };
    EXPECT_EQ(run(f, theorem_schedule(f), opts).decision, Decision::Unsat);
    return best;
  };
  const std::size_t w8 = widest(8);
  const std::size_t w12 = widest(12);
  EXPECT_LT(w12, std::size_t{1} << 12);
  EXPECT_LE(w12, w8 * 4);
}
