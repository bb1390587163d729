#include "bucketbdd/bucket_elimination.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bucketbdd {

const char *to_string(Decision d) noexcept {
  switch (d) {
  case Decision::Sat:
    return "SAT";
  case Decision::Unsat:
    return "UNSAT";
  case Decision::Limit:
    return "LIMIT";
  }
  return "?";
}

const char *to_string(Phase p) noexcept {
  return p == Phase::Conjoin ? "conjoin" : "quantify";
}

std::optional<VarId> first_var(const Manager &m, NodeRef f,
                               const VarOrder &elim_order) {
  if (f.is_terminal())
    return std::nullopt;
  std::optional<VarId> best;
  std::size_t best_pos = 0;
  for (const VarId v : m.support(f)) {
    const std::size_t p = elim_order.position(v);
    if (!best || p < best_pos) {
      best = v;
      best_pos = p;
    }
  }
  return best;
}

namespace {

class BucketRunner {
public:
  BucketRunner(const CnfFormula &f, const Schedule &s, const RunOptions &opts)
      : formula_(f), elim_(s.elim_order), opts_(opts),
        manager_(s.bdd_order, opts.node_limit), buckets_(f.num_vars) {}

  void execute(RunResult &out) {
    for (const Clause &c : formula_.clauses) {
      const NodeRef b = clause_to_bdd(manager_, c);
      if (b.is_true())
        continue;
      file(b, 0);
    }
    if (opts_.check_invariants)
      verify_buckets(0);

    bool refuted = false;
    for (std::size_t k = 0; k < buckets_.size(); ++k) {
      const VarId x = elim_.at(k);
      std::vector<NodeRef> bucket = std::move(buckets_[k]);
      buckets_[k].clear();
      if (bucket.empty()) {
        emit(out, Phase::Quantify, x, {}, 1, manager_.make_true());
        continue;
      }
      if (opts_.conjoin_order == ConjoinOrder::SmallestFirst) {
        std::stable_sort(bucket.begin(), bucket.end(), [&](NodeRef a, NodeRef b) {
          return manager_.node_count(a) < manager_.node_count(b);
        });
      }

      NodeRef conj = bucket.front();
      std::size_t conj_size = manager_.node_count(conj);
      if (bucket.size() == 1)
        emit(out, Phase::Conjoin, x, {conj_size}, conj_size, conj);
      for (std::size_t t = 1; t < bucket.size(); ++t) {
        const std::size_t lhs = conj_size;
        const std::size_t rhs = manager_.node_count(bucket[t]);
        conj = manager_.apply_and(conj, bucket[t]);
        conj_size = manager_.node_count(conj);
        emit(out, Phase::Conjoin, x, {lhs, rhs}, conj_size, conj);
        if (conj.is_false() && opts_.early_exit) {
          out.decision = Decision::Unsat;
          return;
        }
      }
      if (conj.is_false())
        refuted = true;

      const NodeRef quantified = manager_.exists(conj, x);
      emit(out, Phase::Quantify, x, {conj_size}, manager_.node_count(quantified),
           quantified);
      if (!quantified.is_terminal())
        file(quantified, k + 1);

      sweep(k + 1);
      if (opts_.check_invariants)
        verify_buckets(k + 1);
    }
    out.decision = refuted ? Decision::Unsat : Decision::Sat;
  }

  std::size_t peak() const { return manager_.stats().peak_live_nodes; }

private:
  void file(NodeRef b, std::size_t min_pos) {
    const auto v = first_var(manager_, b, elim_);
    const std::size_t pos = elim_.position(*v);
    if (pos < min_pos)
      throw std::logic_error("bucket elimination filed a BDD into a processed bucket");
    buckets_[pos].push_back(b);
  }

  void sweep(std::size_t from) {
    std::vector<NodeRef> roots;
    for (std::size_t k = from; k < buckets_.size(); ++k)
      roots.insert(roots.end(), buckets_[k].begin(), buckets_[k].end());
    manager_.clear_dead(roots);
  }

  void verify_buckets(std::size_t from) const {
    for (std::size_t k = from; k < buckets_.size(); ++k) {
      for (const NodeRef b : buckets_[k]) {
        const auto v = first_var(manager_, b, elim_);
        if (!v || *v != elim_.at(k))
          throw std::logic_error("bucket invariant violated for variable " +
                                 std::to_string(elim_.at(k)));
        if (const auto why = manager_.check_invariants(b); !why.empty())
          throw std::logic_error("BDD invariant violated: " + why);
      }
    }
  }

  void emit(RunResult &out, Phase phase, VarId x, std::vector<std::size_t> operands,
            std::size_t result, NodeRef bdd) {
    TraceEvent ev;
    ev.step = out.trace.size();
    ev.phase = phase;
    ev.var = x;
    ev.operand_sizes = std::move(operands);
    ev.result_size = result;
    ev.live_nodes = manager_.stats().live_nodes;
    ev.apply_calls = manager_.stats().apply_calls;
    out.trace.push_back(std::move(ev));
    if (opts_.observer)
      opts_.observer(manager_, out.trace.back(), bdd);
  }

  const CnfFormula &formula_;
  const VarOrder &elim_;
  RunOptions opts_;
  Manager manager_;
  std::vector<std::vector<NodeRef>> buckets_; // indexed by elimination position
};

} // namespace

RunResult run(const CnfFormula &f, const Schedule &s, const RunOptions &opts) {
  f.validate();
  if (s.bdd_order.size() != f.num_vars || s.elim_order.size() != f.num_vars)
    throw ValidationError("schedule covers " + std::to_string(s.bdd_order.size()) +
                          "/" + std::to_string(s.elim_order.size()) +
                          " variables but the formula has " +
                          std::to_string(f.num_vars));

  const auto start = std::chrono::steady_clock::now();
  RunResult out;
  if (f.has_empty_clause()) {
    out.decision = Decision::Unsat;
    out.peak_allocated_nodes = 2;
  } else {
    BucketRunner runner(f, s, opts);
    try {
      runner.execute(out);
    } catch (const NodeLimitExceeded &) {
      out.decision = Decision::Limit;
    }
    out.peak_allocated_nodes = runner.peak();
  }
  for (const TraceEvent &ev : out.trace)
    out.max_intermediate_size = std::max(out.max_intermediate_size, ev.result_size);
  out.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return out;
}

RunResult run_single_order(const CnfFormula &f, const VarOrder &order,
                           const RunOptions &opts) {
  return run(f, Schedule::single(order), opts);
}

std::optional<std::size_t> probe_named_step(const RunResult &r, VarId target) {
  std::optional<std::size_t> size;
  for (const TraceEvent &ev : r.trace) {
    if (ev.var != target)
      continue;
    if (ev.phase == Phase::Conjoin)
      size = ev.result_size;
    else
      return size;
  }
  return size;
}

std::optional<VarId> find_matrix_var(const CnfFormula &f, int row, int col) {
  if (!f.name_map)
    return std::nullopt;
  const auto &map = *f.name_map;
  const auto it = std::find(map.begin(), map.end(), MatrixCoord{row, col});
  if (it == map.end())
    return std::nullopt;
  return static_cast<VarId>(it - map.begin() + 1);
}

std::string trace_to_csv(const RunResult &r, const CnfFormula &f) {
  std::ostringstream out;
  out << "step,phase,var_i,var_j,var_id,operand_sizes,result_size,live_nodes,"
         "apply_calls\n";
  for (const TraceEvent &ev : r.trace) {
    out << ev.step << ',' << to_string(ev.phase) << ',';
    if (f.name_map && ev.var >= 1 && ev.var <= f.name_map->size()) {
      const MatrixCoord c = (*f.name_map)[ev.var - 1];
      out << c.row << ',' << c.col;
    } else {
      out << ',';
    }
    out << ',' << ev.var << ',';
    for (std::size_t k = 0; k < ev.operand_sizes.size(); ++k)
      out << (k ? ";" : "") << ev.operand_sizes[k];
    out << ',' << ev.result_size << ',' << ev.live_nodes << ',' << ev.apply_calls
        << '\n';
  }
  return out.str();
}

} // namespace bucketbdd
