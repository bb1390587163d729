// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "bucketbdd/experiment.hpp"
#include "bucketbdd/generators.hpp"

using namespace bucketbdd;

namespace {

// Satisfiable instances force a full scan unless a model turns up early, so
// use unsatisfiable ones for a fixed amount of work.
CnfFormula unsat_instance(std::size_t vars) {
  CnfFormula f = random_cnf(vars, 4 * vars, 3, 1234 + vars);
  f.clauses.push_back(Clause({{1, true}}));
  f.clauses.push_back(Clause({{1, false}}));
  return f;
}

void BM_BruteForceParallel(benchmark::State &state) {
  const CnfFormula f = unsat_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_sat(f));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_BruteForceSerial(benchmark::State &state) {
  const CnfFormula f = unsat_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_sat_serial(f));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void run_rows(benchmark::State &state, Suite suite, int hi, bool parallel) {
  SuiteConfig c{suite, 2, hi};
  c.parallel = parallel;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_suite(c));
}

void BM_Theorem1RowsParallel(benchmark::State &s) { run_rows(s, Suite::Theorem1, 16, true); }
void BM_Theorem1RowsSerial(benchmark::State &s) { run_rows(s, Suite::Theorem1, 16, false); }
void BM_FuzzRowsParallel(benchmark::State &s) { run_rows(s, Suite::OracleFuzz, 100, true); }
void BM_FuzzRowsSerial(benchmark::State &s) { run_rows(s, Suite::OracleFuzz, 100, false); }

} // namespace

BENCHMARK(BM_BruteForceParallel)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Theorem1RowsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Theorem1RowsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FuzzRowsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FuzzRowsSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
