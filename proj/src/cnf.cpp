#include "bucketbdd/cnf.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace bucketbdd {

Literal Literal::from_dimacs(std::int64_t lit) {
  if (lit == 0)
    throw ValidationError("literal 0 is reserved as clause terminator");
  return Literal{static_cast<VarId>(lit < 0 ? -lit : lit), lit > 0};
}

Clause::Clause(std::vector<Literal> literals) {
  for (const Literal &l : literals) {
    if (l.var == 0)
      throw ValidationError("literal with variable 0");
    if (std::find(literals_.begin(), literals_.end(), l) != literals_.end())
      continue;
    if (std::find(literals_.begin(), literals_.end(),
                  Literal{l.var, !l.positive}) != literals_.end())
      tautological_ = true;
    literals_.push_back(l);
  }
}

bool CnfFormula::has_empty_clause() const noexcept {
  return std::any_of(clauses.begin(), clauses.end(),
                     [](const Clause &c) { return c.empty(); });
}

void CnfFormula::validate() const {
  for (const Clause &c : clauses)
    for (const Literal &l : c.literals())
      if (l.var > num_vars)
        throw ValidationError("literal " + std::to_string(l.to_dimacs()) +
                              " exceeds variable count " +
                              std::to_string(num_vars));
  if (name_map) {
    if (name_map->size() != num_vars)
      throw ValidationError("name map size differs from variable count");
    std::set<MatrixCoord> seen(name_map->begin(), name_map->end());
    if (seen.size() != name_map->size())
      throw ValidationError("name map is not injective");
  }
}

// ---------------------------------------------------------------------------
// DIMACS

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i)
      out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line_no) {
  std::int64_t v = 0;
  const char *end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ValidationError("line " + std::to_string(line_no) +
                          ": expected integer, got '" + std::string(tok) + "'");
  return v;
}

} // namespace

CnfFormula parse_dimacs(std::string_view text, std::vector<std::string> *warnings) {
  CnfFormula f;
  bool have_header = false;
  std::int64_t declared_clauses = 0;
  std::vector<Literal> pending;
  bool pending_open = false;
  std::vector<std::pair<VarId, MatrixCoord>> map_entries;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto toks = split_ws(line);
    if (toks.empty())
      continue;
    if (toks[0] == "c" || toks[0][0] == 'c') {
      if (toks.size() == 5 && toks[0] == "c" && toks[1] == "map") {
        const auto v = parse_int(toks[2], line_no);
        if (v < 1)
          throw ValidationError("line " + std::to_string(line_no) +
                                ": bad variable in map comment");
        map_entries.push_back(
            {static_cast<VarId>(v),
             MatrixCoord{static_cast<int>(parse_int(toks[3], line_no)),
                         static_cast<int>(parse_int(toks[4], line_no))}});
      } else {
        const auto body = line.find('c');
        std::string_view rest = line.substr(body + 1);
        if (!rest.empty() && rest[0] == ' ')
          rest.remove_prefix(1);
        f.comments.emplace_back(rest);
      }
      continue;
    }
    if (toks[0] == "%")
      break;
    if (toks[0] == "p") {
      if (have_header)
        throw ValidationError("line " + std::to_string(line_no) +
                              ": duplicate problem line");
      if (toks.size() != 4 || toks[1] != "cnf")
        throw ValidationError("line " + std::to_string(line_no) +
                              ": malformed header, expected 'p cnf V C'");
      const auto vars = parse_int(toks[2], line_no);
      declared_clauses = parse_int(toks[3], line_no);
      if (vars < 0 || declared_clauses < 0)
        throw ValidationError("line " + std::to_string(line_no) +
                              ": negative count in header");
      f.num_vars = static_cast<std::size_t>(vars);
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ValidationError("line " + std::to_string(line_no) +
                            ": clause data before 'p cnf' header");
    for (const auto tok : toks) {
      const auto lit = parse_int(tok, line_no);
      if (lit == 0) {
        f.clauses.emplace_back(std::move(pending));
        pending.clear();
        pending_open = false;
        continue;
      }
      const std::uint64_t mag =
          static_cast<std::uint64_t>(lit < 0 ? -lit : lit);
      if (mag > f.num_vars)
        throw ValidationError("line " + std::to_string(line_no) + ": literal " +
                              std::to_string(lit) + " exceeds declared " +
                              std::to_string(f.num_vars) + " variables");
      pending.push_back(Literal::from_dimacs(lit));
      pending_open = true;
    }
  }
  if (!have_header)
    throw ValidationError("missing 'p cnf' header");
  if (pending_open)
    throw ValidationError("last clause is missing its terminating 0");
  if (static_cast<std::int64_t>(f.clauses.size()) != declared_clauses &&
      warnings != nullptr)
    warnings->push_back("header declares " + std::to_string(declared_clauses) +
                        " clauses, found " + std::to_string(f.clauses.size()));

  if (!map_entries.empty()) {
    std::vector<MatrixCoord> map(f.num_vars);
    std::vector<bool> filled(f.num_vars, false);
    bool ok = true;
    for (const auto &[v, coord] : map_entries) {
      if (v > f.num_vars || filled[v - 1]) {
        ok = false;
        break;
      }
      map[v - 1] = coord;
      filled[v - 1] = true;
    }
    ok = ok && std::all_of(filled.begin(), filled.end(), [](bool b) { return b; });
    if (ok) {
      f.name_map = std::move(map);
    } else if (warnings != nullptr) {
      warnings->push_back("ignoring incomplete or inconsistent 'c map' lines");
    }
  }
  f.validate();
  return f;
}

std::string write_dimacs(const CnfFormula &f) {
  std::ostringstream out;
  for (const auto &c : f.comments)
    out << "c " << c << '\n';
  if (f.name_map) {
    for (std::size_t v = 0; v < f.name_map->size(); ++v)
      out << "c map " << v + 1 << ' ' << (*f.name_map)[v].row << ' '
          << (*f.name_map)[v].col << '\n';
  }
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause &c : f.clauses) {
    for (const Literal &l : c.literals())
      out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ValidationError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ValidationError("cannot open '" + path + "' for writing");
  out << text;
  if (!out)
    throw ValidationError("write to '" + path + "' failed");
}

CnfFormula read_dimacs_file(const std::string &path,
                            std::vector<std::string> *warnings) {
  return parse_dimacs(read_text_file(path), warnings);
}

// ---------------------------------------------------------------------------
// Restriction

CnfFormula restrict_cnf(const CnfFormula &f, const Assignment &a) {
  CnfFormula out;
  out.num_vars = f.num_vars;
  out.name_map = f.name_map;
  out.comments = f.comments;
  for (const Clause &c : f.clauses) {
    bool satisfied = false;
    std::vector<Literal> kept;
    for (const Literal &l : c.literals()) {
      const auto value = a.get(l.var);
      if (!value) {
        kept.push_back(l);
      } else if (*value == l.positive) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied)
      out.clauses.emplace_back(std::move(kept));
  }
  return out;
}

CnfFormula compact_variables(const CnfFormula &f, const Assignment &a) {
  std::vector<VarId> renumber(f.num_vars + 1, 0);
  CnfFormula out;
  for (VarId v = 1; v <= f.num_vars; ++v)
    if (!a.contains(v))
      renumber[v] = static_cast<VarId>(++out.num_vars);
  if (f.name_map) {
    out.name_map.emplace();
    for (VarId v = 1; v <= f.num_vars; ++v)
      if (renumber[v] != 0)
        out.name_map->push_back((*f.name_map)[v - 1]);
  }
  for (const Clause &c : f.clauses) {
    std::vector<Literal> lits;
    for (const Literal &l : c.literals()) {
      if (renumber[l.var] == 0)
        throw ValidationError("compact_variables: clause mentions assigned "
                              "variable " + std::to_string(l.var));
      lits.push_back({renumber[l.var], l.positive});
    }
    out.clauses.emplace_back(std::move(lits));
  }
  out.comments = f.comments;
  return out;
}

// ---------------------------------------------------------------------------
// BDD compilation

NodeRef clause_to_bdd(Manager &m, const Clause &c) {
  if (c.tautological())
    return m.make_true();
  for (const Literal &l : c.literals())
    if (!m.order().contains(l.var))
      throw ValidationError("clause variable " + std::to_string(l.var) +
                            " not in manager order");
  // Build bottom-up so every mk call extends the existing path.
  std::vector<Literal> lits = c.literals();
  std::sort(lits.begin(), lits.end(), [&](const Literal &x, const Literal &y) {
    return m.order().position(x.var) > m.order().position(y.var);
  });
  NodeRef acc = m.make_false();
  for (const Literal &l : lits)
    acc = m.apply_or(m.make_literal(l.var, l.positive), acc);
  return acc;
}

NodeRef cnf_to_bdd(Manager &m, const CnfFormula &f) {
  NodeRef acc = m.make_true();
  for (const Clause &c : f.clauses) {
    acc = m.apply_and(acc, clause_to_bdd(m, c));
    if (acc.is_false())
      break;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

struct ClauseMask {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

std::vector<ClauseMask> compile_masks(const CnfFormula &f) {
  if (f.num_vars > kBruteForceMaxVars)
    throw ValidationError("brute force limited to " +
                          std::to_string(kBruteForceMaxVars) + " variables, got " +
                          std::to_string(f.num_vars));
  std::vector<ClauseMask> masks;
  masks.reserve(f.clauses.size());
  for (const Clause &c : f.clauses) {
    ClauseMask m;
    for (const Literal &l : c.literals()) {
      if (l.var > f.num_vars)
        throw ValidationError("literal exceeds variable count");
      (l.positive ? m.pos : m.neg) |= std::uint32_t{1} << (l.var - 1);
    }
    masks.push_back(m);
  }
  return masks;
}

inline bool satisfies_masks(const std::vector<ClauseMask> &masks,
                            std::uint32_t a) noexcept {
  for (const ClauseMask &m : masks)
    if (((a & m.pos) | (~a & m.neg)) == 0)
      return false;
  return true;
}

} // namespace

bool satisfies(const CnfFormula &f, std::uint64_t bits) {
  for (const Clause &c : f.clauses) {
    bool sat = false;
    for (const Literal &l : c.literals())
      if ((((bits >> (l.var - 1)) & 1U) != 0) == l.positive) {
        sat = true;
        break;
      }
    if (!sat)
      return false;
  }
  return true;
}

bool brute_force_sat_serial(const CnfFormula &f) {
  const auto masks = compile_masks(f);
  const std::uint64_t total = std::uint64_t{1} << f.num_vars;
  for (std::uint64_t a = 0; a < total; ++a)
    if (satisfies_masks(masks, static_cast<std::uint32_t>(a)))
      return true;
  return false;
}

bool brute_force_sat(const CnfFormula &f) {
  const auto masks = compile_masks(f);
  const std::int64_t total = std::int64_t{1} << f.num_vars;
  constexpr std::int64_t kBlock = 1 << 12;
  if (total <= kBlock)
    return brute_force_sat_serial(f);
  const std::int64_t blocks = total / kBlock;
  std::atomic<bool> found{false};
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t b = 0; b < blocks; ++b) {
    if (found.load(std::memory_order_relaxed))
      continue;
    const std::int64_t lo = b * kBlock;
    for (std::int64_t a = lo; a < lo + kBlock; ++a) {
      if (satisfies_masks(masks, static_cast<std::uint32_t>(a))) {
        found.store(true, std::memory_order_relaxed);
        break;
      }
    }
  }
  return found.load();
}

} // namespace bucketbdd
