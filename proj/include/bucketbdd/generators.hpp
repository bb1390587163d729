#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "bucketbdd/bdd.hpp"
#include "bucketbdd/cnf.hpp"

namespace bucketbdd {

/// Bipartite graph with A = [a_size], B = [b_size] and edges (i, j).
struct BipartiteGraph {
  int a_size = 0;
  int b_size = 0;
  std::vector<std::pair<int, int>> edges; // kept sorted and unique

  BipartiteGraph() = default;
  /// Throws ValidationError for out-of-range edges. Duplicates are merged.
  BipartiteGraph(int a, int b, std::vector<std::pair<int, int>> e);

  static BipartiteGraph complete(int a, int b);

  bool has_edge(int i, int j) const;
  std::vector<int> neighbours_of_a(int i) const; // ascending j
  std::vector<int> neighbours_of_b(int j) const; // ascending i
};

/// Reads "A B" followed by one "i j" edge per line; '#' starts a comment.
BipartiteGraph parse_graph(std::string_view text);

/// Pigeonhole formula over K_{n,n+1}. Variable p_{i,j} is (i-1)(n+1)+j.
/// Clauses: ALO_j for j = 1..n+1, then AMO_i pairs (j < k) for i = 1..n.
CnfFormula php(int n);

/// Pigeonhole formula restricted to the edges of g; edges are numbered in
/// row-major (i, j) order starting at 1. Isolated B vertices produce an
/// empty ALO clause.
CnfFormula gphp(const BipartiteGraph &g);

/// G = ([2n], [2n+1], E) with E = {(j,j), (n+j,j), (j,n+1+j), (n+j,n+1+j),
/// (j,n+1), (n+j,n+1) | j in [n]}.
BipartiteGraph theorem2_graph(int n);

/// The assignment setting p_{i,j} := 0 for every (i,j) of php(n) that is not
/// an edge of g. Requires g to be a subgraph of K_{n,n+1}.
Assignment non_edge_zero_assignment(int n, const BipartiteGraph &g);

/// Variables sorted by (row, col) / (col, row) of the name map.
VarOrder row_order(const CnfFormula &f);
VarOrder col_order(const CnfFormula &f);

struct AndOrChain {
  CnfFormula formula;   // x_i = i, y_i = n + i
  VarOrder blockwise;   // x_1..x_n, y_1..y_n
  VarOrder interleaved; // x_1, y_1, ..., x_n, y_n
};

/// The function AND_i (x_i OR y_i) with its two reference orders.
AndOrChain and_or_chain(int n);

/// Uniform random CNF; clause lengths uniform in [1, max_clause_len] with
/// distinct variables per clause. Deterministic for a fixed seed.
CnfFormula random_cnf(std::size_t num_vars, std::size_t num_clauses,
                      std::size_t max_clause_len, std::uint64_t seed);

/// Uniformly random permutation of 1..n.
VarOrder random_order(std::size_t n, std::uint64_t seed);

} // namespace bucketbdd
