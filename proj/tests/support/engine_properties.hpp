// Randomised property sweep over the BDD engine, shared by the unit tests
// and the acceptance runner. Every BDD result is checked against an explicit
// truth table on all assignments.

#pragma once

#include <random>
#include <sstream>
#include <string>

#include "support/truth_table.hpp"

namespace bucketbdd::oracle {

struct PropertyReport {
  std::size_t checks = 0;
  std::string failure; // empty when every check held

  bool ok() const { return failure.empty(); }
};

namespace detail {

inline void expect(PropertyReport &r, bool cond, const std::string &what) {
  ++r.checks;
  if (!cond && r.failure.empty())
    r.failure = what;
}

inline void expect_valid(PropertyReport &r, const Manager &m, NodeRef f,
                         const std::string &what) {
  const std::string why = m.check_invariants(f);
  expect(r, why.empty(), what + ": " + why);
}

} // namespace detail

/// `rounds` random cases for every variable count 1..max_vars (<= 10).
inline PropertyReport check_engine_properties(std::uint64_t seed, int rounds,
                                              std::size_t max_vars = 10) {
  using detail::expect;
  using detail::expect_valid;
  PropertyReport r;
  std::mt19937_64 rng(seed);
  for (std::size_t n = 1; n <= max_vars && r.ok(); ++n) {
    for (int round = 0; round < rounds && r.ok(); ++round) {
      std::ostringstream tag;
      tag << "n=" << n << " round=" << round << ": ";
      Manager m(round % 2 == 0 ? VarOrder::natural(n)
                               : VarOrder([&] {
                                   std::vector<VarId> s;
                                   for (std::size_t k = n; k >= 1; --k)
                                     s.push_back(static_cast<VarId>(k));
                                   return s;
                                 }()));
      const int depth = 2 + static_cast<int>(rng() % 5);
      const auto a = random_function(m, n, depth, rng);
      const auto b = random_function(m, n, depth, rng);
      const auto c = random_function(m, n, depth, rng);

      // Semantics of every operation, exhaustively.
      expect(r, agrees_everywhere(m, a.bdd, a.table), tag.str() + "random build");
      const NodeRef ab = m.apply_and(a.bdd, b.bdd);
      const NodeRef a_or_b = m.apply_or(a.bdd, b.bdd);
      const NodeRef na = m.negate(a.bdd);
      expect(r, agrees_everywhere(m, ab, a.table & b.table), tag.str() + "and");
      expect(r, agrees_everywhere(m, a_or_b, a.table | b.table), tag.str() + "or");
      expect(r, agrees_everywhere(m, na, ~a.table), tag.str() + "not");
      const auto v = static_cast<VarId>(1 + rng() % n);
      const bool bit = (rng() & 1U) != 0;
      const NodeRef ra = m.restrict(a.bdd, v, bit);
      const NodeRef ea = m.exists(a.bdd, v);
      expect(r, agrees_everywhere(m, ra, a.table.restrict(v, bit)), tag.str() + "restrict");
      expect(r, agrees_everywhere(m, ea, a.table.exists(v)), tag.str() + "exists");

      // Structural invariants on every result.
      for (const NodeRef f : {a.bdd, b.bdd, c.bdd, ab, a_or_b, na, ra, ea})
        expect_valid(r, m, f, tag.str() + "invariants");

      // Canonicity: different constructions, identical handles.
      expect(r, from_truth_table(m, a.table) == a.bdd, tag.str() + "shannon rebuild");
      expect(r,
             m.apply_and(m.apply_and(a.bdd, b.bdd), c.bdd) ==
                 m.apply_and(a.bdd, m.apply_and(b.bdd, c.bdd)),
             tag.str() + "and associativity");
      expect(r, m.negate(ab) == m.apply_or(na, m.negate(b.bdd)), tag.str() + "de morgan");
      expect(r, m.negate(na) == a.bdd, tag.str() + "double negation");

      // Size relations.
      const std::size_t sa = m.node_count(a.bdd);
      const std::size_t sb = m.node_count(b.bdd);
      expect(r, m.node_count(na) == sa, tag.str() + "negation size");
      expect(r, m.node_count(ra) <= sa, tag.str() + "restriction size");
      expect(r, m.node_count(ab) <= sa * sb, tag.str() + "and product bound");
      expect(r, m.node_count(a_or_b) <= sa * sb, tag.str() + "or product bound");

      // Quantification.
      expect(r, ea == m.apply_or(m.restrict(a.bdd, v, false), m.restrict(a.bdd, v, true)),
             tag.str() + "exists == or of restrictions");
      const auto widths = m.level_widths(ea);
      expect(r, widths.find(v) == widths.end(), tag.str() + "exists leaves no v node");
      if (!a.table.depends_on(v))
        expect(r, ea == a.bdd, tag.str() + "exists on independent variable");
    }
  }

  // Determinism: replaying the same seed gives the same node counts.
  if (r.ok()) {
    auto replay = [&](std::uint64_t s) {
      std::mt19937_64 g(s);
      Manager m(VarOrder::natural(8));
      std::vector<std::size_t> counts;
      for (int k = 0; k < 20; ++k) {
        const auto f = random_function(m, 8, 5, g);
        counts.push_back(m.node_count(f.bdd));
        counts.push_back(m.stats().total_allocated);
      }
      return counts;
    };
    expect(r, replay(seed + 17) == replay(seed + 17), "determinism");
  }
  return r;
}

} // namespace bucketbdd::oracle
