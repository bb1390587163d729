#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bucketbdd/types.hpp"

namespace bucketbdd {

/// A variable order: a permutation of 1..size() together with its inverse.
class VarOrder {
public:
  VarOrder() = default;
  /// Throws ValidationError unless `sequence` is a permutation of 1..n.
  explicit VarOrder(std::vector<VarId> sequence);

  /// The identity order 1, 2, ..., n.
  static VarOrder natural(std::size_t n);

  std::size_t size() const noexcept { return sequence_.size(); }
  const std::vector<VarId> &sequence() const noexcept { return sequence_; }
  VarId at(std::size_t level) const { return sequence_.at(level); }
  bool contains(VarId v) const noexcept {
    return v >= 1 && v <= sequence_.size();
  }
  /// 0-based level of `v`; throws ValidationError for unknown variables.
  std::size_t position(VarId v) const;

  friend bool operator==(const VarOrder &a, const VarOrder &b) {
    return a.sequence_ == b.sequence_;
  }

private:
  static constexpr std::uint32_t kUnplaced =
      std::numeric_limits<std::uint32_t>::max();
  std::vector<VarId> sequence_;
  std::vector<std::uint32_t> position_; // indexed by VarId, slot 0 unused
};

/// Handle to a node of a particular Manager. Terminals are 0 and 1.
class NodeRef {
public:
  constexpr NodeRef() = default;
  constexpr explicit NodeRef(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const noexcept { return index_; }
  constexpr bool is_terminal() const noexcept { return index_ <= 1; }
  constexpr bool is_false() const noexcept { return index_ == 0; }
  constexpr bool is_true() const noexcept { return index_ == 1; }

  friend constexpr bool operator==(NodeRef, NodeRef) = default;
  friend constexpr auto operator<=>(NodeRef, NodeRef) = default;

private:
  std::uint32_t index_ = 0;
};

struct ManagerStats {
  std::size_t live_nodes = 0;       // terminals included
  std::size_t peak_live_nodes = 0;
  std::size_t total_allocated = 0;  // internal nodes ever created
  std::size_t apply_calls = 0;      // recursive operation steps
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
};

/// Shared reduced ordered BDD store without complement edges.
///
/// Nodes live in an arena and are never moved. Handles stay valid until the
/// manager is destroyed or clear_dead() reclaims them. A manager is not
/// thread-safe; distinct managers are independent.
class Manager {
public:
  /// `node_limit` caps the number of simultaneously live nodes (terminals
  /// included). Exceeding it throws NodeLimitExceeded out of the operation.
  explicit Manager(VarOrder order,
                   std::optional<std::size_t> node_limit = std::nullopt);

  Manager(const Manager &) = delete;
  Manager &operator=(const Manager &) = delete;
  Manager(Manager &&) noexcept = default;
  Manager &operator=(Manager &&) noexcept = default;

  const VarOrder &order() const noexcept { return order_; }
  std::optional<std::size_t> node_limit() const noexcept { return limit_; }

  NodeRef make_const(bool b) const noexcept { return NodeRef(b ? 1 : 0); }
  NodeRef make_false() const noexcept { return NodeRef(0); }
  NodeRef make_true() const noexcept { return NodeRef(1); }
  NodeRef make_literal(VarId v, bool positive);

  NodeRef apply_and(NodeRef f, NodeRef g);
  NodeRef apply_or(NodeRef f, NodeRef g);
  NodeRef negate(NodeRef f);
  NodeRef restrict(NodeRef f, VarId v, bool b);
  NodeRef exists(NodeRef f, VarId v);

  /// Throws ValidationError if a queried variable is unassigned.
  bool evaluate(NodeRef f, const Assignment &a) const;

  /// Distinct nodes reachable from f, terminals included.
  std::size_t node_count(NodeRef f) const;
  /// Distinct nodes reachable from any root, terminals included.
  std::size_t node_count(std::span<const NodeRef> roots) const;
  /// Reachable internal nodes per variable.
  std::map<VarId, std::size_t> level_widths(NodeRef f) const;
  /// Variables labelling some reachable node, ascending by VarId.
  std::vector<VarId> support(NodeRef f) const;

  // Structural accessors; only valid for internal nodes.
  VarId var(NodeRef f) const;
  std::size_t level(NodeRef f) const;
  NodeRef low(NodeRef f) const;
  NodeRef high(NodeRef f) const;

  /// Frees every node unreachable from `roots` and drops the operation
  /// caches. Handles not reachable from `roots` become invalid.
  void clear_dead(std::span<const NodeRef> roots);

  /// Walks all nodes reachable from f and checks orderedness, reducedness
  /// and uniqueness. Returns an empty string when all hold, else a reason.
  std::string check_invariants(NodeRef f) const;

  /// Graphviz rendering: solid edge = high, dashed edge = low.
  std::string to_dot(NodeRef f) const;

  const ManagerStats &stats() const noexcept { return stats_; }

private:
  static constexpr std::uint32_t kTerminalLevel =
      std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kFreeLevel = kTerminalLevel - 1;

  struct Node {
    std::uint32_t level;
    std::uint32_t low;
    std::uint32_t high;
    std::uint32_t next; // unique-table chain or free list
  };

  enum class Op : std::uint32_t { And = 1, Or, Not, Exists, Restrict0, Restrict1 };

  struct CacheEntry {
    std::uint32_t op = 0;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t result = 0;
  };

  std::uint32_t lvl(std::uint32_t n) const noexcept { return nodes_[n].level; }
  NodeRef mk(std::uint32_t level, NodeRef low, NodeRef high);
  void grow_unique_table();
  std::size_t unique_slot(std::uint32_t level, std::uint32_t low,
                          std::uint32_t high) const noexcept;
  std::size_t cache_slot(Op op, std::uint32_t a, std::uint32_t b) const noexcept;
  std::optional<NodeRef> cache_lookup(Op op, std::uint32_t a, std::uint32_t b);
  void cache_store(Op op, std::uint32_t a, std::uint32_t b, NodeRef r);
  void check_node(NodeRef f, const char *what) const;

  NodeRef and_rec(NodeRef f, NodeRef g);
  NodeRef or_rec(NodeRef f, NodeRef g);
  NodeRef not_rec(NodeRef f);
  NodeRef restrict_rec(NodeRef f, std::uint32_t level, bool b);
  NodeRef exists_rec(NodeRef f, std::uint32_t level);

  /// Calls visit(index) once for every node reachable from roots.
  template <typename Visit>
  void walk(std::span<const NodeRef> roots, Visit &&visit) const;

  VarOrder order_;
  std::optional<std::size_t> limit_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> unique_; // bucket heads
  std::uint32_t free_head_ = kNil;
  std::vector<CacheEntry> cache_;
  ManagerStats stats_;

  mutable std::vector<std::uint32_t> stamp_;
  mutable std::uint32_t epoch_ = 0;
};

} // namespace bucketbdd
