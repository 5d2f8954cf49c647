/// @file  pure.hpp
/// @brief Persistent BDD backend.
///
/// All state lives in a `Store` value: a node graph (id -> node), its inverse
/// (node -> id), a fresh-id counter and memo tables for not/and/or/xor. Every
/// operation takes a store and returns a new store next to its result; the
/// input store is never modified and stays usable.
///
/// Recursive operations take an explicit `Fuel` budget and throw
/// `Error(OutOfFuel)` when it runs out. `default_fuel(st)` (largest variable
/// index + 1) is always sufficient for a well-formed store.

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <hcbdd/core.hpp>
#include <hcbdd/persistent_map.hpp>

namespace hcbdd::pure {

using NodeId = std::uint32_t;

struct IdPair {
  NodeId first;
  NodeId second;

  friend auto operator<=>(const IdPair &, const IdPair &) = default;
};

struct IdPairHash {
  std::size_t operator()(const IdPair &p) const noexcept {
    return static_cast<std::size_t>(
        (static_cast<std::uint64_t>(p.first) << 32) | p.second);
  }
};

using PairMemo = PersistentMap<IdPair, NodeRef, IdPairHash>;
using UnaryMemo = PersistentMap<NodeId, NodeRef>;

/// Keys are inner-node ids only; leaf operands short-circuit before lookup.
/// Pairs are kept in argument order (no commutative normalization).
struct MemoTables {
  PairMemo mand;
  PairMemo mor;
  PairMemo mxor;
  UnaryMemo mneg;

  const PairMemo &table(BinOp op) const;
  PairMemo &table(BinOp op);
  std::size_t entries() const {
    return mand.size() + mor.size() + mxor.size() + mneg.size();
  }
};

/// Recursion budget: each nested call consumes one unit.
struct Fuel {
  std::uint64_t steps = 0;
};

/// `reduce = false` skips the low == high collapse. Mutation testing only:
/// stores built this way are not canonical.
struct StoreOptions {
  bool reduce = true;
};

class Store {
public:
  using Graph = PersistentMap<NodeId, Node>;
  using HMap = PersistentMap<Node, NodeId, NodeHash>;

  /// Node bound to `id`, or nullptr.
  const Node *node(NodeId id) const { return graph_.find(id); }
  /// Id bound to `n`, or nullptr.
  const NodeId *find(const Node &n) const { return hmap_.find(n); }

  NodeId next() const noexcept { return next_; }
  std::size_t node_count() const noexcept { return graph_.size(); }
  /// Largest variable index of any allocated node (0 if none).
  std::uint32_t max_var() const noexcept { return max_var_; }
  bool reduces() const noexcept { return reduce_; }

  const Graph &graph() const noexcept { return graph_; }
  const HMap &hmap() const noexcept { return hmap_; }
  const MemoTables &memo() const noexcept { return memo_; }
  const Counters &counters() const noexcept { return counters_; }

  /// Same nodes and counters, empty memo tables.
  Store without_memo() const;

private:
  friend struct StoreOps;
  friend struct StoreBackdoor;
  friend Store empty_store(StoreOptions);

  Graph graph_;
  HMap hmap_;
  NodeId next_ = 1;
  std::uint32_t max_var_ = 0;
  bool reduce_ = true;
  MemoTables memo_;
  Counters counters_;
};

/// Result of a state-threading operation.
struct Result {
  NodeRef ref;
  Store store;
};

Store empty_store(StoreOptions options = {});

/// Hash-consing constructor: collapses low == high, reuses an existing id
/// for an equal node, otherwise allocates `next`.
/// Throws InvalidChild for children not allocated in `st` and
/// OrderViolation when a child's variable is not strictly below `v`.
Result mk_node(const Store &st, NodeRef low, Var v, NodeRef high);

/// The single-variable function x_v: node (F, v, T).
Result mk_var(const Store &st, Var v);

Fuel default_fuel(const Store &st);

Result neg(const Store &st, Fuel fuel, NodeRef e);
Result apply_binop(const Store &st, Fuel fuel, BinOp op, NodeRef a, NodeRef b);

/// Equality of references; complete for canonical stores.
constexpr bool eq(NodeRef a, NodeRef b) noexcept { return a == b; }

/// Throws DanglingRef for ids missing from the graph.
bool denote(const Store &st, NodeRef e, const Assignment &a);

/// Distinct nodes reachable from e, leaves included.
std::size_t size(const Store &st, NodeRef e);

ValidationReport validate_store(const Store &st, ValidationDepth depth = {});

/// Checks that `after` extends `before`: every binding of `before` is kept,
/// `next` does not decrease, and (when `before` has at most
/// `max_denotation_vars` variables) every old node denotes the same function
/// in both stores.
ValidationReport check_monotonic(const Store &before, const Store &after,
                                 unsigned max_denotation_vars = 10);

/// Graphviz rendering of the nodes reachable from `e`. Inner nodes are
/// named `n<id>`, leaves `T` and `F`.
std::string to_dot(const Store &st, NodeRef e);

/// Line-based text form of the node graph (memo tables are not saved):
///
///     hcbdd-store 1
///     next <N>
///     <id> <low> <var> <high>
///
/// `low`/`high` are `T`, `F` or a decimal id. Records are written in
/// ascending id order; `#` starts a comment line.
std::string serialize(const Store &st);

/// Rebuilds graph and inverse map from the records without validating
/// them, so corrupted input can be inspected with `validate_store`.
/// Throws Error(StoreFormat) on malformed text.
Store parse_store(std::string_view text);

/// Raw state edits that bypass every invariant. Test code only.
struct StoreBackdoor {
  static Store bind_graph(Store st, NodeId id, const Node &n);
  static Store bind_hmap(Store st, const Node &n, NodeId id);
  static Store set_next(Store st, NodeId next);
  static Store bind_memo(Store st, BinOp op, IdPair key, NodeRef value);
};

} // namespace hcbdd::pure
