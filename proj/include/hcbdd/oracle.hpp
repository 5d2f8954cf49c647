/// @file  oracle.hpp
/// @brief Brute-force truth tables: ground truth for both backends.
///
/// Tables are computed by evaluating one assignment at a time, either by
/// direct recursion over a formula or by walking a BDD path. Nothing here
/// calls a backend's apply, negation or node constructor.
///
/// Bit order: entry k of a table over n variables is the value under the
/// assignment where bit i of k gives x(i+1) (little-endian in the variable
/// index). The hex form packs entries four per digit, entry 4j in the least
/// significant bit of digit j, with the highest digit printed first; tables
/// with fewer than four entries use a single digit.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <hcbdd/core.hpp>
#include <hcbdd/interned.hpp>
#include <hcbdd/pure.hpp>

namespace hcbdd::oracle {

inline constexpr unsigned kDefaultMaxVars = 20;

class TruthTable {
public:
  /// All-false table over n variables. Throws TableTooLarge above `cap`.
  explicit TruthTable(unsigned n, unsigned cap = kDefaultMaxVars);

  unsigned vars() const noexcept { return n_; }
  std::size_t entries() const noexcept { return bits_.size(); }
  bool operator[](std::size_t k) const { return bits_[k]; }
  void set(std::size_t k, bool value) { bits_[k] = value; }
  std::size_t count() const;

  friend bool operator==(const TruthTable &, const TruthTable &) = default;

private:
  unsigned n_;
  std::vector<bool> bits_;
};

/// Throws VarOutOfRange if f mentions a variable above n.
TruthTable formula_truth_table(const Formula &f, unsigned n,
                               unsigned cap = kDefaultMaxVars);

/// Direct recursive evaluation of a formula.
bool evaluate(const Formula &f, const Assignment &a);

/// Throws VarOutOfRange for a node variable above n, DanglingRef for
/// missing ids.
TruthTable bdd_truth_table(const pure::Store &st, NodeRef e, unsigned n,
                           unsigned cap = kDefaultMaxVars);
TruthTable bdd_truth_table(const interned::Manager &m, interned::Handle h,
                           unsigned n, unsigned cap = kDefaultMaxVars);

/// Throws ArityMismatch when the variable counts differ.
bool tables_equal(const TruthTable &a, const TruthTable &b);

/// Pointwise operations. Throw ArityMismatch like tables_equal.
TruthTable pointwise(BinOp op, const TruthTable &a, const TruthTable &b);
TruthTable pointwise_not(const TruthTable &a);

std::string to_hex(const TruthTable &t);
/// Inverse of to_hex for a known variable count.
TruthTable from_hex(std::string_view hex, unsigned n);

/// Table from an explicit list of entries (size must be a power of two).
TruthTable from_bits(const std::vector<bool> &bits);

} // namespace hcbdd::oracle
