#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bucketbdd {

/// 1-based variable index, identical to DIMACS numbering.
using VarId = std::uint32_t;

/// Raised for malformed orders, unknown variables, bad input files and
/// other violations of an operation's preconditions.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a manager would exceed its node budget.
class NodeLimitExceeded : public std::runtime_error {
public:
  explicit NodeLimitExceeded(std::size_t limit)
      : std::runtime_error("node limit of " + std::to_string(limit) +
                           " exceeded"),
        limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

private:
  std::size_t limit_;
};

/// Partial assignment VarId -> bit over variables 1..num_vars.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars) : values_(num_vars + 1, kUnset) {}

  /// Total assignment over 1..num_vars taking bit v-1 of `bits` for variable v.
  static Assignment from_bits(std::size_t num_vars, std::uint64_t bits) {
    Assignment a(num_vars);
    for (std::size_t v = 1; v <= num_vars; ++v)
      a.set(static_cast<VarId>(v), ((bits >> (v - 1)) & 1U) != 0);
    return a;
  }

  std::size_t num_vars() const noexcept {
    return values_.empty() ? 0 : values_.size() - 1;
  }

  void set(VarId v, bool b) {
    if (v == 0 || v >= values_.size())
      throw ValidationError("assignment variable " + std::to_string(v) +
                            " out of range");
    values_[v] = b ? 1 : 0;
  }
  void unset(VarId v) {
    if (v != 0 && v < values_.size())
      values_[v] = kUnset;
  }
  bool contains(VarId v) const noexcept {
    return v != 0 && v < values_.size() && values_[v] != kUnset;
  }
  std::optional<bool> get(VarId v) const noexcept {
    if (!contains(v))
      return std::nullopt;
    return values_[v] == 1;
  }

private:
  static constexpr std::int8_t kUnset = -1;
  std::vector<std::int8_t> values_;
};

} // namespace bucketbdd
