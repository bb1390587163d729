#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bucketbdd/bdd.hpp"
#include "bucketbdd/types.hpp"

namespace bucketbdd {

struct Literal {
  VarId var = 0;
  bool positive = true;

  /// DIMACS signed integer form.
  std::int64_t to_dimacs() const noexcept {
    return positive ? static_cast<std::int64_t>(var)
                    : -static_cast<std::int64_t>(var);
  }
  static Literal from_dimacs(std::int64_t lit);

  friend bool operator==(const Literal &, const Literal &) = default;
};

/// A disjunction of literals. Duplicate literals are dropped on
/// construction; a clause holding both x and -x is marked tautological.
class Clause {
public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal> &literals() const noexcept { return literals_; }
  std::size_t size() const noexcept { return literals_.size(); }
  bool empty() const noexcept { return literals_.empty(); }
  bool tautological() const noexcept { return tautological_; }

  friend bool operator==(const Clause &, const Clause &) = default;

private:
  std::vector<Literal> literals_;
  bool tautological_ = false;
};

/// Matrix coordinate (row i, column j) of a pigeonhole variable p_{i,j}.
struct MatrixCoord {
  int row = 0;
  int col = 0;
  friend bool operator==(const MatrixCoord &, const MatrixCoord &) = default;
  friend auto operator<=>(const MatrixCoord &, const MatrixCoord &) = default;
};

struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;
  /// When present, name_map[v-1] is the matrix coordinate of variable v.
  std::optional<std::vector<MatrixCoord>> name_map;
  /// Free-form provenance lines, written as DIMACS comments.
  std::vector<std::string> comments;

  bool has_empty_clause() const noexcept;
  /// Throws ValidationError on out-of-range literals or a non-injective
  /// name map.
  void validate() const;

  /// Structural equality: variables, clause sequence and name map.
  /// Comments are ignored.
  friend bool operator==(const CnfFormula &a, const CnfFormula &b) {
    return a.num_vars == b.num_vars && a.clauses == b.clauses &&
           a.name_map == b.name_map;
  }
};

/// Parses DIMACS CNF. Lines "c map <var> <i> <j>" restore the name map.
/// A clause-count mismatch is tolerated and reported through `warnings`.
CnfFormula parse_dimacs(std::string_view text,
                        std::vector<std::string> *warnings = nullptr);
std::string write_dimacs(const CnfFormula &f);

CnfFormula read_dimacs_file(const std::string &path,
                            std::vector<std::string> *warnings = nullptr);
void write_text_file(const std::string &path, std::string_view text);
std::string read_text_file(const std::string &path);

/// Deletes clauses satisfied by `a` and removes falsified literals from the
/// rest. Variable numbering and the name map are kept.
CnfFormula restrict_cnf(const CnfFormula &f, const Assignment &a);

/// Drops variables assigned by `a` and renumbers the survivors 1..k in
/// increasing order, carrying the name map along. Clauses must no longer
/// mention assigned variables (apply restrict_cnf first).
CnfFormula compact_variables(const CnfFormula &f, const Assignment &a);

/// BDD of the clause's disjunction; tautologies give the 1-terminal.
NodeRef clause_to_bdd(Manager &m, const Clause &c);

/// Conjunction of all clause BDDs, in clause order.
NodeRef cnf_to_bdd(Manager &m, const CnfFormula &f);

inline constexpr std::size_t kBruteForceMaxVars = 24;

/// Exhaustive satisfiability check, parallelised over the assignment space.
/// Throws ValidationError above kBruteForceMaxVars variables.
bool brute_force_sat(const CnfFormula &f);
/// Single-threaded reference implementation of brute_force_sat.
bool brute_force_sat_serial(const CnfFormula &f);

/// True iff the total assignment given by `bits` (bit v-1 for variable v)
/// satisfies every clause.
bool satisfies(const CnfFormula &f, std::uint64_t bits);

} // namespace bucketbdd
