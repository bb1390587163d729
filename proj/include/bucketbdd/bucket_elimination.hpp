#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bucketbdd/bdd.hpp"
#include "bucketbdd/cnf.hpp"

namespace bucketbdd {

/// BDD structure follows bdd_order; buckets and quantification follow
/// elim_order. Both must be permutations of the formula's variables.
struct Schedule {
  VarOrder bdd_order;
  VarOrder elim_order;

  static Schedule single(const VarOrder &order) { return {order, order}; }
};

enum class Decision { Sat, Unsat, Limit };
enum class Phase { Conjoin, Quantify };
enum class ConjoinOrder { Insertion, SmallestFirst };

const char *to_string(Decision d) noexcept;
const char *to_string(Phase p) noexcept;

struct TraceEvent {
  std::size_t step = 0;
  Phase phase = Phase::Conjoin;
  VarId var = 0;
  std::vector<std::size_t> operand_sizes;
  std::size_t result_size = 1;
  std::size_t live_nodes = 0;
  std::size_t apply_calls = 0; // cumulative
};

struct RunResult {
  Decision decision = Decision::Sat;
  std::size_t max_intermediate_size = 0;
  std::vector<TraceEvent> trace;
  std::chrono::nanoseconds wall_time{0};
  std::size_t peak_allocated_nodes = 0;
};

struct RunOptions {
  std::optional<std::size_t> node_limit;
  ConjoinOrder conjoin_order = ConjoinOrder::Insertion;
  /// Stop as soon as a conjunction collapses to 0.
  bool early_exit = true;
  /// Assert the bucket invariants after every step (slow).
  bool check_invariants = false;
  /// Called after every trace event with the BDD the event produced.
  std::function<void(const Manager &, const TraceEvent &, NodeRef)> observer;
};

/// The elim_order-first variable in the support of f; nullopt for constants.
std::optional<VarId> first_var(const Manager &m, NodeRef f,
                               const VarOrder &elim_order);

/// Bucket elimination with separate BDD and elimination orders.
///
/// Each clause BDD goes into the bucket of its first variable in elimination
/// order. Buckets are processed in elimination order: their contents are
/// conjoined left to right in insertion order (or smallest-first when
/// requested), a 0 result ends the run as UNSAT, and otherwise the bucket
/// variable is quantified away and the result is filed into the bucket of its
/// own first variable. Throws ValidationError on a schedule that does not
/// match the formula.
RunResult run(const CnfFormula &f, const Schedule &s, const RunOptions &opts = {});

/// run() with one order for both roles.
RunResult run_single_order(const CnfFormula &f, const VarOrder &order,
                           const RunOptions &opts = {});

/// result_size of the last conjoin event for `target`, i.e. the bucket
/// conjunction just before target is quantified. nullopt if never reached.
std::optional<std::size_t> probe_named_step(const RunResult &r, VarId target);

/// VarId of the matrix variable p_{i,j}; nullopt if f has no such variable.
std::optional<VarId> find_matrix_var(const CnfFormula &f, int row, int col);

/// Trace CSV with header
/// step,phase,var_i,var_j,var_id,operand_sizes,result_size,live_nodes,apply_calls
std::string trace_to_csv(const RunResult &r, const CnfFormula &f);

} // namespace bucketbdd
