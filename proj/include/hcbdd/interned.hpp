/// @file  interned.hpp
/// @brief Mutable BDD manager with a unique table (maximal sharing),
///        unique identifiers and memoized not/and/or/xor.
///
/// Every node lives in the manager's pool exactly once; a `Handle` is a
/// (manager tag, uid) token, so equality of functions is equality of uids.
///
/// A manager and its handles form a single-owner unit: calls on one manager
/// must be serialized by the caller. Distinct managers are independent.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <hcbdd/core.hpp>

namespace hcbdd::interned {

using Uid = std::uint32_t;

/// Reserved uids of the two leaves.
inline constexpr Uid kTrueUid = 1;
inline constexpr Uid kFalseUid = 2;

class Handle {
public:
  /// A handle that belongs to no manager.
  Handle() = default;

  Uid uid() const noexcept { return uid_; }
  std::uint64_t owner() const noexcept { return owner_; }

  friend bool operator==(const Handle &, const Handle &) = default;

private:
  friend class Manager;
  friend struct ManagerBackdoor;
  Handle(std::uint64_t owner, Uid uid) noexcept : owner_(owner), uid_(uid) {}

  std::uint64_t owner_ = 0;
  Uid uid_ = 0;
};

inline Uid uid(Handle h) noexcept { return h.uid(); }

/// Constant-time equality; `a` and `b` must come from the same manager.
inline bool structural_eq(Handle a, Handle b) noexcept {
  return a.uid() == b.uid();
}

/// What a pool entry is: a leaf, or an inner node over child uids.
struct Shape {
  enum class Kind : std::uint8_t { LeafFalse, LeafTrue, Inner };

  Kind kind = Kind::LeafFalse;
  std::uint32_t var = 0; ///< variable index; 0 for leaves
  Uid low = 0;
  Uid high = 0;

  static Shape leaf(bool value) noexcept {
    return {value ? Kind::LeafTrue : Kind::LeafFalse, 0, 0, 0};
  }
  static Shape inner(Var v, Uid low, Uid high) noexcept {
    return {Kind::Inner, v.index(), low, high};
  }

  bool is_leaf() const noexcept { return kind != Kind::Inner; }
  bool is_inner() const noexcept { return kind == Kind::Inner; }
  Var variable() const { return Var(var); }

  friend bool operator==(const Shape &, const Shape &) = default;
};

struct ShapeHash {
  std::size_t operator()(const Shape &s) const noexcept {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(s.kind) ^
                            (static_cast<std::uint64_t>(s.var) << 8));
    h = mix64(h ^ s.low);
    return static_cast<std::size_t>(mix64(h ^ s.high));
  }
};

struct UidPair {
  Uid first;
  Uid second;

  friend bool operator==(const UidPair &, const UidPair &) = default;
};

struct UidPairHash {
  std::size_t operator()(const UidPair &p) const noexcept {
    return static_cast<std::size_t>(
        mix64((static_cast<std::uint64_t>(p.first) << 32) | p.second));
  }
};

struct ManagerOptions {
  std::size_t initial_capacity = 257;
  /// false skips the low == high collapse; mutation testing only.
  bool reduce = true;
};

class Manager {
public:
  using NotCache = std::unordered_map<Uid, Uid>;
  using PairCache = std::unordered_map<UidPair, Uid, UidPairHash>;

  explicit Manager(ManagerOptions options = {});

  // Handles carry the manager's tag, so copies would alias it.
  Manager(const Manager &) = delete;
  Manager &operator=(const Manager &) = delete;
  Manager(Manager &&) noexcept = default;
  Manager &operator=(Manager &&) noexcept = default;

  Handle leaf_true() const noexcept { return {tag_, kTrueUid}; }
  Handle leaf_false() const noexcept { return {tag_, kFalseUid}; }
  Handle leaf(bool value) const noexcept {
    return value ? leaf_true() : leaf_false();
  }

  /// Smart constructor: returns `low` when low == high, otherwise the
  /// pooled node for (low, v, high), allocating a uid only on a pool miss.
  /// Throws ForeignHandle or OrderViolation.
  Handle h_node(Var v, Handle low, Handle high);
  /// x_v as the node (F, v, T).
  Handle var(Var v);

  Handle bdd_not(Handle a);
  Handle bdd_binop(BinOp op, Handle a, Handle b);
  Handle bdd_and(Handle a, Handle b) { return bdd_binop(BinOp::And, a, b); }
  Handle bdd_or(Handle a, Handle b) { return bdd_binop(BinOp::Or, a, b); }
  Handle bdd_xor(Handle a, Handle b) { return bdd_binop(BinOp::Xor, a, b); }

  /// Throws ForeignHandle for handles of another (or a reset) manager.
  const Shape &shape(Handle h) const;
  bool owns(Handle h) const noexcept;
  /// Handle for a pooled uid. Throws ForeignHandle if not pooled.
  Handle handle(Uid u) const;

  /// Pool entries, leaves included.
  std::size_t pool_size() const noexcept { return nodes_.size(); }
  Uid next_uid() const noexcept { return static_cast<Uid>(nodes_.size() + 1); }
  std::size_t cache_entries() const noexcept;
  bool reduces() const noexcept { return options_.reduce; }

  const Counters &stats() const noexcept { return stats_; }
  void reset_stats() noexcept { stats_ = {}; }
  void clear_caches();
  /// Drops every node except the leaves and every cache entry. All handles
  /// issued so far become foreign.
  void reset();

  const NotCache &not_cache() const noexcept { return not_cache_; }
  const PairCache &pair_cache(BinOp op) const noexcept {
    return pair_cache_[static_cast<std::size_t>(op)];
  }

private:
  friend struct ManagerBackdoor;
  friend ValidationReport validate_manager(const Manager &, ValidationDepth);

  void init();
  void check(Handle h) const;
  Uid intern(const Shape &s);
  Uid not_uid(Uid a);
  Uid binop_uid(BinOp op, Uid a, Uid b);

  ManagerOptions options_;
  std::uint64_t tag_ = 0;
  std::vector<Shape> nodes_; ///< indexed by uid - 1
  std::unordered_map<Shape, Uid, ShapeHash> unique_;
  NotCache not_cache_;
  PairCache pair_cache_[3];
  Counters stats_;
};

/// Throws VarOutOfRange if `a` does not cover a tested variable.
bool denote(const Manager &m, Handle h, const Assignment &a);

/// Distinct pool entries reachable from h, leaves included.
std::size_t size(const Manager &m, Handle h);

/// Reachable pool entries (leaves included) in ascending uid order.
/// Children always precede their parents in this sequence.
std::vector<Handle> reachable(const Manager &m, Handle h);

/// Graphviz rendering of the nodes reachable from h. Every node is named
/// `n<uid>` and emitted once, in ascending uid order, followed by its
/// edges: dashed for the 0-branch, solid for the 1-branch.
std::string to_dot(const Manager &m, Handle h);

ValidationReport validate_manager(const Manager &m, ValidationDepth depth = {});

/// Raw pool edits that bypass interning. Test code only.
struct ManagerBackdoor {
  /// Appends a pool entry without consulting the unique table.
  static Handle append_raw(Manager &m, const Shape &s);
  static void set_not_cache(Manager &m, Uid key, Uid value);
};

} // namespace hcbdd::interned
