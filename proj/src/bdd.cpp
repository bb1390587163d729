#include "bucketbdd/bdd.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

namespace bucketbdd {

// ---------------------------------------------------------------------------
// VarOrder

VarOrder::VarOrder(std::vector<VarId> sequence) : sequence_(std::move(sequence)) {
  const std::size_t n = sequence_.size();
  position_.assign(n + 1, kUnplaced);
  for (std::size_t k = 0; k < n; ++k) {
    const VarId v = sequence_[k];
    if (v < 1 || v > n)
      throw ValidationError("order entry " + std::to_string(v) +
                            " outside 1.." + std::to_string(n));
    if (position_[v] != kUnplaced)
      throw ValidationError("order lists variable " + std::to_string(v) +
                            " twice");
    position_[v] = static_cast<std::uint32_t>(k);
  }
}

VarOrder VarOrder::natural(std::size_t n) {
  std::vector<VarId> seq(n);
  for (std::size_t k = 0; k < n; ++k)
    seq[k] = static_cast<VarId>(k + 1);
  return VarOrder(std::move(seq));
}

std::size_t VarOrder::position(VarId v) const {
  if (!contains(v))
    throw ValidationError("variable " + std::to_string(v) + " not in order");
  return position_[v];
}

// ---------------------------------------------------------------------------
// Manager

namespace {

constexpr std::size_t kMinTableSize = std::size_t{1} << 12;

inline std::uint64_t mix(std::uint64_t x) noexcept {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

} // namespace

Manager::Manager(VarOrder order, std::optional<std::size_t> node_limit)
    : order_(std::move(order)), limit_(node_limit) {
  nodes_.push_back({kTerminalLevel, 0, 0, kNil});
  nodes_.push_back({kTerminalLevel, 1, 1, kNil});
  unique_.assign(kMinTableSize, kNil);
  cache_.assign(kMinTableSize, CacheEntry{});
  stats_.live_nodes = 2;
  stats_.peak_live_nodes = 2;
}

std::size_t Manager::unique_slot(std::uint32_t level, std::uint32_t low,
                                 std::uint32_t high) const noexcept {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(level) << 40) ^
      (static_cast<std::uint64_t>(low) << 20) ^ static_cast<std::uint64_t>(high) ^
      (static_cast<std::uint64_t>(high) << 44);
  return static_cast<std::size_t>(mix(key)) & (unique_.size() - 1);
}

void Manager::grow_unique_table() {
  const std::size_t size = unique_.size() * 2;
  unique_.assign(size, kNil);
  for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
    Node &n = nodes_[i];
    if (n.level == kFreeLevel)
      continue;
    const std::size_t s = unique_slot(n.level, n.low, n.high);
    n.next = unique_[s];
    unique_[s] = i;
  }
  cache_.assign(size, CacheEntry{});
}

NodeRef Manager::mk(std::uint32_t level, NodeRef low, NodeRef high) {
  if (low == high)
    return low;
  std::size_t slot = unique_slot(level, low.index(), high.index());
  for (std::uint32_t i = unique_[slot]; i != kNil; i = nodes_[i].next) {
    const Node &n = nodes_[i];
    if (n.level == level && n.low == low.index() && n.high == high.index())
      return NodeRef(i);
  }
  if (limit_ && stats_.live_nodes + 1 > *limit_)
    throw NodeLimitExceeded(*limit_);

  std::uint32_t idx;
  if (free_head_ != kNil) {
    idx = free_head_;
    free_head_ = nodes_[idx].next;
    nodes_[idx] = {level, low.index(), high.index(), kNil};
  } else {
    idx = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({level, low.index(), high.index(), kNil});
  }
  ++stats_.live_nodes;
  ++stats_.total_allocated;
  stats_.peak_live_nodes = std::max(stats_.peak_live_nodes, stats_.live_nodes);

  if (stats_.live_nodes > unique_.size()) {
    grow_unique_table(); // relinks idx as well
  } else {
    nodes_[idx].next = unique_[slot];
    unique_[slot] = idx;
  }
  return NodeRef(idx);
}

std::size_t Manager::cache_slot(Op op, std::uint32_t a,
                                std::uint32_t b) const noexcept {
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
  return static_cast<std::size_t>(mix(key ^ (static_cast<std::uint64_t>(op) << 59) ^
                                      static_cast<std::uint64_t>(op))) &
         (cache_.size() - 1);
}

std::optional<NodeRef> Manager::cache_lookup(Op op, std::uint32_t a,
                                             std::uint32_t b) {
  const CacheEntry &e = cache_[cache_slot(op, a, b)];
  if (e.op == static_cast<std::uint32_t>(op) && e.a == a && e.b == b) {
    ++stats_.cache_hits;
    return NodeRef(e.result);
  }
  ++stats_.cache_misses;
  return std::nullopt;
}

void Manager::cache_store(Op op, std::uint32_t a, std::uint32_t b, NodeRef r) {
  cache_[cache_slot(op, a, b)] = {static_cast<std::uint32_t>(op), a, b, r.index()};
}

void Manager::check_node(NodeRef f, const char *what) const {
  if (f.index() >= nodes_.size() || nodes_[f.index()].level == kFreeLevel)
    throw ValidationError(std::string(what) + ": stale or foreign node handle");
}

NodeRef Manager::make_literal(VarId v, bool positive) {
  const auto level = static_cast<std::uint32_t>(order_.position(v));
  return positive ? mk(level, make_false(), make_true())
                  : mk(level, make_true(), make_false());
}

NodeRef Manager::apply_and(NodeRef f, NodeRef g) {
  check_node(f, "and");
  check_node(g, "and");
  return and_rec(f, g);
}

NodeRef Manager::apply_or(NodeRef f, NodeRef g) {
  check_node(f, "or");
  check_node(g, "or");
  return or_rec(f, g);
}

NodeRef Manager::negate(NodeRef f) {
  check_node(f, "not");
  return not_rec(f);
}

NodeRef Manager::restrict(NodeRef f, VarId v, bool b) {
  check_node(f, "restrict");
  return restrict_rec(f, static_cast<std::uint32_t>(order_.position(v)), b);
}

NodeRef Manager::exists(NodeRef f, VarId v) {
  check_node(f, "exists");
  return exists_rec(f, static_cast<std::uint32_t>(order_.position(v)));
}

NodeRef Manager::and_rec(NodeRef f, NodeRef g) {
  if (f.is_false() || g.is_false())
    return make_false();
  if (f.is_true())
    return g;
  if (g.is_true() || f == g)
    return f;
  if (g < f)
    std::swap(f, g);
  if (auto hit = cache_lookup(Op::And, f.index(), g.index()))
    return *hit;
  ++stats_.apply_calls;

  const Node nf = nodes_[f.index()];
  const Node ng = nodes_[g.index()];
  const std::uint32_t top = std::min(nf.level, ng.level);
  const NodeRef f0 = nf.level == top ? NodeRef(nf.low) : f;
  const NodeRef f1 = nf.level == top ? NodeRef(nf.high) : f;
  const NodeRef g0 = ng.level == top ? NodeRef(ng.low) : g;
  const NodeRef g1 = ng.level == top ? NodeRef(ng.high) : g;
  const NodeRef lo = and_rec(f0, g0);
  const NodeRef hi = and_rec(f1, g1);
  const NodeRef r = mk(top, lo, hi);
  cache_store(Op::And, f.index(), g.index(), r);
  return r;
}

NodeRef Manager::or_rec(NodeRef f, NodeRef g) {
  if (f.is_true() || g.is_true())
    return make_true();
  if (f.is_false())
    return g;
  if (g.is_false() || f == g)
    return f;
  if (g < f)
    std::swap(f, g);
  if (auto hit = cache_lookup(Op::Or, f.index(), g.index()))
    return *hit;
  ++stats_.apply_calls;

  const Node nf = nodes_[f.index()];
  const Node ng = nodes_[g.index()];
  const std::uint32_t top = std::min(nf.level, ng.level);
  const NodeRef f0 = nf.level == top ? NodeRef(nf.low) : f;
  const NodeRef f1 = nf.level == top ? NodeRef(nf.high) : f;
  const NodeRef g0 = ng.level == top ? NodeRef(ng.low) : g;
  const NodeRef g1 = ng.level == top ? NodeRef(ng.high) : g;
  const NodeRef lo = or_rec(f0, g0);
  const NodeRef hi = or_rec(f1, g1);
  const NodeRef r = mk(top, lo, hi);
  cache_store(Op::Or, f.index(), g.index(), r);
  return r;
}

NodeRef Manager::not_rec(NodeRef f) {
  if (f.is_terminal())
    return make_const(f.is_false());
  if (auto hit = cache_lookup(Op::Not, f.index(), 0))
    return *hit;
  ++stats_.apply_calls;
  const Node n = nodes_[f.index()];
  const NodeRef lo = not_rec(NodeRef(n.low));
  const NodeRef hi = not_rec(NodeRef(n.high));
  const NodeRef r = mk(n.level, lo, hi);
  cache_store(Op::Not, f.index(), 0, r);
  return r;
}

NodeRef Manager::restrict_rec(NodeRef f, std::uint32_t level, bool b) {
  if (f.is_terminal() || lvl(f.index()) > level)
    return f;
  const Node n = nodes_[f.index()];
  if (n.level == level)
    return NodeRef(b ? n.high : n.low);
  const Op op = b ? Op::Restrict1 : Op::Restrict0;
  if (auto hit = cache_lookup(op, f.index(), level))
    return *hit;
  ++stats_.apply_calls;
  const NodeRef lo = restrict_rec(NodeRef(n.low), level, b);
  const NodeRef hi = restrict_rec(NodeRef(n.high), level, b);
  const NodeRef r = mk(n.level, lo, hi);
  cache_store(op, f.index(), level, r);
  return r;
}

NodeRef Manager::exists_rec(NodeRef f, std::uint32_t level) {
  if (f.is_terminal() || lvl(f.index()) > level)
    return f;
  const Node n = nodes_[f.index()];
  if (n.level == level)
    return or_rec(NodeRef(n.low), NodeRef(n.high));
  if (auto hit = cache_lookup(Op::Exists, f.index(), level))
    return *hit;
  ++stats_.apply_calls;
  const NodeRef lo = exists_rec(NodeRef(n.low), level);
  const NodeRef hi = exists_rec(NodeRef(n.high), level);
  const NodeRef r = mk(n.level, lo, hi);
  cache_store(Op::Exists, f.index(), level, r);
  return r;
}

bool Manager::evaluate(NodeRef f, const Assignment &a) const {
  check_node(f, "evaluate");
  while (!f.is_terminal()) {
    const Node &n = nodes_[f.index()];
    const VarId v = order_.at(n.level);
    const auto value = a.get(v);
    if (!value)
      throw ValidationError("evaluate: variable " + std::to_string(v) +
                            " unassigned");
    f = NodeRef(*value ? n.high : n.low);
  }
  return f.is_true();
}

template <typename Visit>
void Manager::walk(std::span<const NodeRef> roots, Visit &&visit) const {
  if (stamp_.size() < nodes_.size())
    stamp_.resize(nodes_.size(), 0);
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  std::vector<std::uint32_t> stack;
  for (const NodeRef r : roots) {
    check_node(r, "walk");
    stack.push_back(r.index());
  }
  while (!stack.empty()) {
    const std::uint32_t i = stack.back();
    stack.pop_back();
    if (stamp_[i] == epoch_)
      continue;
    stamp_[i] = epoch_;
    visit(i);
    if (i > 1) {
      stack.push_back(nodes_[i].low);
      stack.push_back(nodes_[i].high);
    }
  }
}

std::size_t Manager::node_count(NodeRef f) const {
  return node_count(std::span<const NodeRef>(&f, 1));
}

std::size_t Manager::node_count(std::span<const NodeRef> roots) const {
  std::size_t count = 0;
  walk(roots, [&](std::uint32_t) { ++count; });
  return count;
}

std::map<VarId, std::size_t> Manager::level_widths(NodeRef f) const {
  std::map<VarId, std::size_t> widths;
  walk(std::span<const NodeRef>(&f, 1), [&](std::uint32_t i) {
    if (i > 1)
      ++widths[order_.at(nodes_[i].level)];
  });
  return widths;
}

std::vector<VarId> Manager::support(NodeRef f) const {
  std::vector<std::uint8_t> seen(order_.size(), 0);
  walk(std::span<const NodeRef>(&f, 1), [&](std::uint32_t i) {
    if (i > 1)
      seen[nodes_[i].level] = 1;
  });
  std::vector<VarId> vars;
  for (std::size_t level = 0; level < seen.size(); ++level)
    if (seen[level])
      vars.push_back(order_.at(level));
  std::sort(vars.begin(), vars.end());
  return vars;
}

VarId Manager::var(NodeRef f) const { return order_.at(level(f)); }

std::size_t Manager::level(NodeRef f) const {
  check_node(f, "level");
  if (f.is_terminal())
    throw ValidationError("terminal has no variable");
  return nodes_[f.index()].level;
}

NodeRef Manager::low(NodeRef f) const {
  level(f);
  return NodeRef(nodes_[f.index()].low);
}

NodeRef Manager::high(NodeRef f) const {
  level(f);
  return NodeRef(nodes_[f.index()].high);
}

void Manager::clear_dead(std::span<const NodeRef> roots) {
  std::vector<std::uint8_t> keep(nodes_.size(), 0);
  keep[0] = keep[1] = 1;
  walk(roots, [&](std::uint32_t i) { keep[i] = 1; });

  std::fill(unique_.begin(), unique_.end(), kNil);
  std::size_t live = 2;
  // Descending so the free list hands out low indices first.
  for (std::size_t i = nodes_.size(); i-- > 2;) {
    Node &n = nodes_[i];
    if (n.level == kFreeLevel)
      continue;
    if (!keep[i]) {
      n.level = kFreeLevel;
      continue;
    }
    ++live;
    const std::size_t s = unique_slot(n.level, n.low, n.high);
    n.next = unique_[s];
    unique_[s] = static_cast<std::uint32_t>(i);
  }
  free_head_ = kNil;
  for (std::size_t i = nodes_.size(); i-- > 2;) {
    if (nodes_[i].level == kFreeLevel) {
      nodes_[i].next = free_head_;
      free_head_ = static_cast<std::uint32_t>(i);
    }
  }
  stats_.live_nodes = live;
  std::fill(cache_.begin(), cache_.end(), CacheEntry{});
}

std::string Manager::check_invariants(NodeRef f) const {
  std::string problem;
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
  walk(std::span<const NodeRef>(&f, 1), [&](std::uint32_t i) {
    if (i <= 1 || !problem.empty())
      return;
    const Node &n = nodes_[i];
    if (n.level >= order_.size()) {
      problem = "node " + std::to_string(i) + " has invalid level";
      return;
    }
    if (n.low == n.high) {
      problem = "node " + std::to_string(i) + " is redundant (low == high)";
      return;
    }
    for (const std::uint32_t c : {n.low, n.high}) {
      if (c > 1 && nodes_[c].level <= n.level) {
        problem = "node " + std::to_string(i) + " violates the variable order";
        return;
      }
    }
    if (!seen.emplace(n.level, n.low, n.high).second)
      problem = "node " + std::to_string(i) + " duplicates another node";
  });
  return problem;
}

std::string Manager::to_dot(NodeRef f) const {
  std::ostringstream out;
  out << "digraph bdd {\n";
  walk(std::span<const NodeRef>(&f, 1), [&](std::uint32_t i) {
    if (i <= 1) {
      out << "  n" << i << " [shape=box,label=\"" << i << "\"];\n";
      return;
    }
    const Node &n = nodes_[i];
    out << "  n" << i << " [label=\"x" << order_.at(n.level) << "\"];\n";
    out << "  n" << i << " -> n" << n.high << ";\n";
    out << "  n" << i << " -> n" << n.low << " [style=dashed];\n";
  });
  out << "}\n";
  return out.str();
}

} // namespace bucketbdd
