#include "bucketbdd/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

namespace bucketbdd {

BipartiteGraph::BipartiteGraph(int a, int b, std::vector<std::pair<int, int>> e)
    : a_size(a), b_size(b), edges(std::move(e)) {
  if (a < 0 || b < 0)
    throw ValidationError("negative color class size");
  for (const auto &[i, j] : edges)
    if (i < 1 || i > a || j < 1 || j > b)
      throw ValidationError("edge (" + std::to_string(i) + "," +
                            std::to_string(j) + ") out of range");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

BipartiteGraph BipartiteGraph::complete(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      e.emplace_back(i, j);
  return BipartiteGraph(a, b, std::move(e));
}

bool BipartiteGraph::has_edge(int i, int j) const {
  return std::binary_search(edges.begin(), edges.end(), std::pair{i, j});
}

std::vector<int> BipartiteGraph::neighbours_of_a(int i) const {
  std::vector<int> out;
  for (const auto &[u, v] : edges)
    if (u == i)
      out.push_back(v);
  return out;
}

std::vector<int> BipartiteGraph::neighbours_of_b(int j) const {
  std::vector<int> out;
  for (const auto &[u, v] : edges)
    if (v == j)
      out.push_back(u);
  return out;
}

BipartiteGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_sizes = false;
  int a = 0, b = 0;
  std::vector<std::pair<int, int>> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    int x = 0, y = 0;
    if (!(ls >> x)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        continue;
      throw ValidationError("graph line " + std::to_string(line_no) +
                            ": expected two integers");
    }
    std::string rest;
    if (!(ls >> y) || (ls >> rest))
      throw ValidationError("graph line " + std::to_string(line_no) +
                            ": expected two integers");
    if (!have_sizes) {
      a = x;
      b = y;
      have_sizes = true;
    } else {
      edges.emplace_back(x, y);
    }
  }
  if (!have_sizes)
    throw ValidationError("graph file lacks the 'A B' size line");
  return BipartiteGraph(a, b, std::move(edges));
}

CnfFormula php(int n) {
  if (n < 1)
    throw ValidationError("php needs n >= 1");
  const int cols = n + 1;
  auto var = [cols](int i, int j) {
    return static_cast<VarId>((i - 1) * cols + j);
  };
  CnfFormula f;
  f.num_vars = static_cast<std::size_t>(n) * cols;
  f.comments.push_back("php n=" + std::to_string(n));
  f.name_map.emplace();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= cols; ++j)
      f.name_map->push_back({i, j});
  for (int j = 1; j <= cols; ++j) {
    std::vector<Literal> alo;
    for (int i = 1; i <= n; ++i)
      alo.push_back({var(i, j), true});
    f.clauses.emplace_back(std::move(alo));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= cols; ++j)
      for (int k = j + 1; k <= cols; ++k)
        f.clauses.emplace_back(
            std::vector<Literal>{{var(i, j), false}, {var(i, k), false}});
  return f;
}

CnfFormula gphp(const BipartiteGraph &g) {
  std::vector<std::vector<VarId>> id(static_cast<std::size_t>(g.a_size) + 1,
                                     std::vector<VarId>(g.b_size + 1, 0));
  CnfFormula f;
  f.name_map.emplace();
  for (const auto &[i, j] : g.edges) {
    id[i][j] = static_cast<VarId>(++f.num_vars);
    f.name_map->push_back({i, j});
  }
  f.comments.push_back("gphp A=" + std::to_string(g.a_size) +
                       " B=" + std::to_string(g.b_size) +
                       " E=" + std::to_string(g.edges.size()));
  for (int j = 1; j <= g.b_size; ++j) {
    std::vector<Literal> alo;
    for (const int i : g.neighbours_of_b(j))
      alo.push_back({id[i][j], true});
    f.clauses.emplace_back(std::move(alo));
  }
  for (int i = 1; i <= g.a_size; ++i) {
    const auto nb = g.neighbours_of_a(i);
    for (std::size_t x = 0; x < nb.size(); ++x)
      for (std::size_t y = x + 1; y < nb.size(); ++y)
        f.clauses.emplace_back(std::vector<Literal>{{id[i][nb[x]], false},
                                                    {id[i][nb[y]], false}});
  }
  return f;
}

BipartiteGraph theorem2_graph(int n) {
  if (n < 1)
    throw ValidationError("theorem2_graph needs n >= 1");
  std::vector<std::pair<int, int>> e;
  for (int j = 1; j <= n; ++j) {
    e.emplace_back(j, j);
    e.emplace_back(n + j, j);
    e.emplace_back(j, n + 1 + j);
    e.emplace_back(n + j, n + 1 + j);
    e.emplace_back(j, n + 1);
    e.emplace_back(n + j, n + 1);
  }
  return BipartiteGraph(2 * n, 2 * n + 1, std::move(e));
}

Assignment non_edge_zero_assignment(int n, const BipartiteGraph &g) {
  if (g.a_size > n || g.b_size > n + 1)
    throw ValidationError("graph is not a subgraph of K_{n,n+1}");
  const int cols = n + 1;
  Assignment a(static_cast<std::size_t>(n) * cols);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= cols; ++j)
      if (!g.has_edge(i, j))
        a.set(static_cast<VarId>((i - 1) * cols + j), false);
  return a;
}

namespace {

template <typename Key>
VarOrder matrix_order(const CnfFormula &f, Key key) {
  if (!f.name_map)
    throw ValidationError("row/col orders need a formula with a name map");
  std::vector<VarId> seq(f.num_vars);
  std::iota(seq.begin(), seq.end(), VarId{1});
  std::sort(seq.begin(), seq.end(), [&](VarId x, VarId y) {
    return key((*f.name_map)[x - 1]) < key((*f.name_map)[y - 1]);
  });
  return VarOrder(std::move(seq));
}

} // namespace

VarOrder row_order(const CnfFormula &f) {
  return matrix_order(f, [](const MatrixCoord &c) { return std::pair{c.row, c.col}; });
}

VarOrder col_order(const CnfFormula &f) {
  return matrix_order(f, [](const MatrixCoord &c) { return std::pair{c.col, c.row}; });
}

AndOrChain and_or_chain(int n) {
  if (n < 1)
    throw ValidationError("and_or_chain needs n >= 1");
  CnfFormula f;
  f.num_vars = 2 * static_cast<std::size_t>(n);
  f.comments.push_back("and_or_chain n=" + std::to_string(n));
  std::vector<VarId> block, inter;
  for (int i = 1; i <= n; ++i) {
    const auto x = static_cast<VarId>(i);
    const auto y = static_cast<VarId>(n + i);
    f.clauses.emplace_back(std::vector<Literal>{{x, true}, {y, true}});
    inter.push_back(x);
    inter.push_back(y);
  }
  for (VarId v = 1; v <= f.num_vars; ++v)
    block.push_back(v);
  return {std::move(f), VarOrder(std::move(block)), VarOrder(std::move(inter))};
}

CnfFormula random_cnf(std::size_t num_vars, std::size_t num_clauses,
                      std::size_t max_clause_len, std::uint64_t seed) {
  if (num_vars > kBruteForceMaxVars)
    throw ValidationError("random_cnf supports at most " +
                          std::to_string(kBruteForceMaxVars) + " variables");
  if (num_clauses > 0 && (num_vars == 0 || max_clause_len == 0))
    throw ValidationError("random_cnf needs variables and a positive clause length");
  std::mt19937_64 rng(seed);
  CnfFormula f;
  f.num_vars = num_vars;
  f.comments.push_back("random_cnf vars=" + std::to_string(num_vars) +
                       " clauses=" + std::to_string(num_clauses) +
                       " maxlen=" + std::to_string(max_clause_len) +
                       " seed=" + std::to_string(seed));
  const std::size_t max_len = std::min(max_clause_len, num_vars);
  std::vector<VarId> pool(num_vars);
  std::iota(pool.begin(), pool.end(), VarId{1});
  for (std::size_t c = 0; c < num_clauses; ++c) {
    const std::size_t len = 1 + rng() % max_len;
    // Partial Fisher-Yates for distinct variables.
    for (std::size_t k = 0; k < len; ++k)
      std::swap(pool[k], pool[k + rng() % (num_vars - k)]);
    std::vector<Literal> lits;
    for (std::size_t k = 0; k < len; ++k)
      lits.push_back({pool[k], (rng() & 1U) != 0});
    f.clauses.emplace_back(std::move(lits));
  }
  return f;
}

VarOrder random_order(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<VarId> seq(n);
  std::iota(seq.begin(), seq.end(), VarId{1});
  for (std::size_t k = n; k > 1; --k)
    std::swap(seq[k - 1], seq[rng() % k]);
  return VarOrder(std::move(seq));
}

} // namespace bucketbdd
