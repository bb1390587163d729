// Test-only oracles: explicit truth tables and random Boolean functions.
// Nothing here goes through the BDD apply machinery except where a test
// deliberately builds the BDD side of a comparison.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bucketbdd/bdd.hpp"
#include "bucketbdd/cnf.hpp"

namespace bucketbdd::oracle {

/// Function over variables 1..n stored as 2^n bits; bit v-1 of the row index
/// is the value of variable v.
class TruthTable {
public:
  TruthTable() = default;
  TruthTable(std::size_t n, bool value)
      : n_(n), bits_(std::size_t{1} << n, value ? 1 : 0) {}

  static TruthTable literal(std::size_t n, VarId v, bool positive) {
    TruthTable t(n, false);
    for (std::size_t a = 0; a < t.rows(); ++a)
      t.bits_[a] = (((a >> (v - 1)) & 1U) != 0) == positive;
    return t;
  }

  static TruthTable of_cnf(const CnfFormula &f) {
    TruthTable t(f.num_vars, false);
    for (std::size_t a = 0; a < t.rows(); ++a)
      t.bits_[a] = satisfies(f, a);
    return t;
  }

  std::size_t num_vars() const { return n_; }
  std::size_t rows() const { return bits_.size(); }
  bool at(std::size_t a) const { return bits_[a] != 0; }
  void set(std::size_t a, bool b) { bits_[a] = b ? 1 : 0; }

  TruthTable operator&(const TruthTable &o) const { return zip(o, [](bool x, bool y) { return x && y; }); }
  TruthTable operator|(const TruthTable &o) const { return zip(o, [](bool x, bool y) { return x || y; }); }
  TruthTable operator~() const {
    TruthTable t = *this;
    for (auto &b : t.bits_)
      b = !b;
    return t;
  }

  TruthTable restrict(VarId v, bool value) const {
    TruthTable t(n_, false);
    const std::size_t mask = std::size_t{1} << (v - 1);
    for (std::size_t a = 0; a < rows(); ++a)
      t.bits_[a] = bits_[value ? (a | mask) : (a & ~mask)];
    return t;
  }
  TruthTable exists(VarId v) const { return restrict(v, false) | restrict(v, true); }

  bool depends_on(VarId v) const {
    return restrict(v, false).bits_ != restrict(v, true).bits_;
  }

  friend bool operator==(const TruthTable &, const TruthTable &) = default;

private:
  template <typename F>
  TruthTable zip(const TruthTable &o, F f) const {
    TruthTable t(n_, false);
    for (std::size_t a = 0; a < rows(); ++a)
      t.bits_[a] = f(at(a), o.at(a));
    return t;
  }

  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// A BDD built through and/or/not together with its truth table.
struct RandomFunction {
  NodeRef bdd;
  TruthTable table;
};

/// Random expression tree of the given depth over variables 1..n.
inline RandomFunction random_function(Manager &m, std::size_t n, int depth,
                                      std::mt19937_64 &rng) {
  if (depth <= 0 || rng() % 5 == 0) {
    const auto v = static_cast<VarId>(1 + rng() % n);
    const bool pos = (rng() & 1U) != 0;
    return {m.make_literal(v, pos), TruthTable::literal(n, v, pos)};
  }
  switch (rng() % 3) {
  case 0: {
    auto a = random_function(m, n, depth - 1, rng);
    auto b = random_function(m, n, depth - 1, rng);
    return {m.apply_and(a.bdd, b.bdd), a.table & b.table};
  }
  case 1: {
    auto a = random_function(m, n, depth - 1, rng);
    auto b = random_function(m, n, depth - 1, rng);
    return {m.apply_or(a.bdd, b.bdd), a.table | b.table};
  }
  default: {
    auto a = random_function(m, n, depth - 1, rng);
    return {m.negate(a.bdd), ~a.table};
  }
  }
}

/// Evaluates f on every total assignment and compares with the table.
inline bool agrees_everywhere(const Manager &m, NodeRef f, const TruthTable &t) {
  for (std::size_t a = 0; a < t.rows(); ++a)
    if (m.evaluate(f, Assignment::from_bits(t.num_vars(), a)) != t.at(a))
      return false;
  return true;
}

/// BDD for a truth table by Shannon expansion along the manager's order,
/// assembled from literals with and/or only.
inline NodeRef from_truth_table(Manager &m, const TruthTable &t,
                                std::size_t level = 0) {
  if (level == m.order().size()) {
    // Every variable has been fixed; the table is constant by now.
    return m.make_const(t.at(0));
  }
  const VarId x = m.order().at(level);
  const NodeRef lo = from_truth_table(m, t.restrict(x, false), level + 1);
  const NodeRef hi = from_truth_table(m, t.restrict(x, true), level + 1);
  return m.apply_or(m.apply_and(m.make_literal(x, false), lo),
                    m.apply_and(m.make_literal(x, true), hi));
}

} // namespace bucketbdd::oracle
