/// @file  core.hpp
/// @brief Domain types shared by both BDD backends: variables, node
///        references, decision nodes, assignments, formulas, errors and
///        validation reports.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hcbdd {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  InvalidVar,     ///< variable index 0
  InvalidChild,   ///< child id not allocated in the store
  OrderViolation, ///< child variable not strictly below the parent
  DanglingRef,    ///< id missing from the node graph
  OutOfFuel,      ///< recursion budget exhausted
  ForeignHandle,  ///< handle belongs to another manager (or a reset one)
  VarOutOfRange,  ///< variable beyond the assignment / table arity
  ArityMismatch,  ///< truth tables over different variable counts
  TableTooLarge,  ///< truth table arity above the configured cap
  SyntaxError,
  VarIndexZero,
  StoreFormat, ///< malformed serialized store
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Parse error carrying a 1-based source position.
class SyntaxError : public Error {
public:
  SyntaxError(ErrorCode code, std::size_t line, std::size_t column,
              const std::string &message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

/// A boolean variable x_index. Index 1 is the root-most level; children
/// always carry strictly larger indices than their parent.
class Var {
public:
  explicit Var(std::uint32_t index);

  std::uint32_t index() const noexcept { return index_; }

  friend auto operator<=>(const Var &, const Var &) = default;

private:
  std::uint32_t index_;
};

// ---------------------------------------------------------------------------
// Node references and decision nodes
// ---------------------------------------------------------------------------

/// A BDD expression in the persistent store: a leaf or an inner node id.
class NodeRef {
public:
  enum class Kind : std::uint8_t { LeafFalse, LeafTrue, Inner };

  static constexpr NodeRef leaf(bool value) noexcept {
    return NodeRef(value ? Kind::LeafTrue : Kind::LeafFalse, 0);
  }
  static constexpr NodeRef leaf_true() noexcept { return leaf(true); }
  static constexpr NodeRef leaf_false() noexcept { return leaf(false); }
  /// Throws Error(InvalidChild) for id 0.
  static NodeRef inner(std::uint32_t id);

  Kind kind() const noexcept { return kind_; }
  bool is_leaf() const noexcept { return kind_ != Kind::Inner; }
  bool is_inner() const noexcept { return kind_ == Kind::Inner; }
  bool is_true() const noexcept { return kind_ == Kind::LeafTrue; }
  bool is_false() const noexcept { return kind_ == Kind::LeafFalse; }
  /// Only meaningful for inner references.
  std::uint32_t id() const noexcept { return id_; }

  friend auto operator<=>(const NodeRef &, const NodeRef &) = default;

private:
  constexpr NodeRef(Kind kind, std::uint32_t id) noexcept
      : kind_(kind), id_(id) {}

  Kind kind_;
  std::uint32_t id_;
};

/// Reduction rule: a decision node whose branches coincide is never built.
constexpr bool node_should_collapse(NodeRef low, NodeRef high) noexcept {
  return low == high;
}

std::string to_string(NodeRef ref);

/// Decision-node triple (0-branch, variable, 1-branch).
struct Node {
  NodeRef low;
  Var var;
  NodeRef high;

  friend auto operator<=>(const Node &, const Node &) = default;
};

inline std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t hash_value(NodeRef ref) noexcept {
  return (static_cast<std::uint64_t>(ref.id()) << 2) |
         static_cast<std::uint64_t>(ref.kind());
}

struct NodeHash {
  std::size_t operator()(const Node &n) const noexcept {
    std::uint64_t h = mix64(hash_value(n.low));
    h = mix64(h ^ n.var.index());
    return static_cast<std::size_t>(mix64(h ^ hash_value(n.high)));
  }
};

// ---------------------------------------------------------------------------
// Boolean operations and statistics
// ---------------------------------------------------------------------------

enum class BinOp : std::uint8_t { And, Or, Xor };

/// Memoized operations; also indexes per-operation counters.
enum class OpKind : std::uint8_t { Not = 0, And = 1, Or = 2, Xor = 3 };

inline constexpr std::size_t kOpKinds = 4;

constexpr OpKind op_kind(BinOp op) noexcept {
  switch (op) {
  case BinOp::And:
    return OpKind::And;
  case BinOp::Or:
    return OpKind::Or;
  case BinOp::Xor:
    return OpKind::Xor;
  }
  return OpKind::And;
}

constexpr bool eval_binop(BinOp op, bool a, bool b) noexcept {
  switch (op) {
  case BinOp::And:
    return a && b;
  case BinOp::Or:
    return a || b;
  case BinOp::Xor:
    return a != b;
  }
  return false;
}

std::string_view to_string(BinOp op);
std::string_view to_string(OpKind op);

struct HitMiss {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;

  friend bool operator==(const HitMiss &, const HitMiss &) = default;
};

/// Interning and memoization counters kept by both backends.
struct Counters {
  HitMiss intern;
  HitMiss memo[kOpKinds];

  HitMiss &op(OpKind k) { return memo[static_cast<std::size_t>(k)]; }
  const HitMiss &op(OpKind k) const {
    return memo[static_cast<std::size_t>(k)];
  }
  std::uint64_t memo_hits() const;
  std::uint64_t memo_misses() const;

  friend bool operator==(const Counters &, const Counters &) = default;
};

// ---------------------------------------------------------------------------
// Assignments
// ---------------------------------------------------------------------------

/// Values for variables x1..xn.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}

  /// Bit i of `bits` gives the value of x(i+1).
  static Assignment from_bits(std::uint64_t bits, unsigned n);

  std::size_t size() const noexcept { return values_.size(); }
  /// Throws Error(VarOutOfRange) if v is not covered.
  bool operator()(Var v) const;
  void set(Var v, bool value);

private:
  std::vector<bool> values_;
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

/// Immutable boolean expression tree. Copies share structure.
class Formula {
public:
  enum class Kind : std::uint8_t { Const, Ref, Not, And, Or, Xor };

  static Formula constant(bool value);
  static Formula var(Var v);
  static Formula var(std::uint32_t index) { return var(Var(index)); }
  static Formula negate(Formula f);
  static Formula binary(BinOp op, Formula lhs, Formula rhs);

  Kind kind() const noexcept;
  bool value() const;            ///< Const only
  Var var() const;               ///< Ref only
  const Formula &operand() const; ///< Not only
  const Formula &lhs() const;    ///< binary only
  const Formula &rhs() const;    ///< binary only
  BinOp binop() const;           ///< binary only
  bool is_binary() const noexcept;

private:
  struct Rep;
  explicit Formula(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  std::shared_ptr<const Rep> rep_;
};

inline Formula operator!(Formula f) { return Formula::negate(std::move(f)); }
inline Formula operator&(Formula a, Formula b) {
  return Formula::binary(BinOp::And, std::move(a), std::move(b));
}
inline Formula operator|(Formula a, Formula b) {
  return Formula::binary(BinOp::Or, std::move(a), std::move(b));
}
inline Formula operator^(Formula a, Formula b) {
  return Formula::binary(BinOp::Xor, std::move(a), std::move(b));
}

/// Largest variable index in f, 0 if f is variable-free.
std::uint32_t max_var(const Formula &f);
std::size_t depth(const Formula &f);
std::size_t node_count(const Formula &f);

/// Balanced folds; empty input yields the operation's identity.
Formula conjoin(std::vector<Formula> parts);
Formula disjoin(std::vector<Formula> parts);

/// Structural (syntactic) equality.
bool same_syntax(const Formula &a, const Formula &b);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class Invariant {
  Validity,       ///< ids below the fresh counter, children allocated
  LeftInverse,    ///< hmap and graph agree
  Injectivity,    ///< no two ids for the same node
  ChildDescent,   ///< child id < parent id
  Reduction,      ///< low != high
  Ordering,       ///< child variable > parent variable
  MemoDomain,     ///< memo keys and values refer to live nodes
  MemoSemantics,  ///< memo entries compute the right function
  PoolUniqueness, ///< no two pool entries with equal shape
  UidBijection,   ///< unique table and uid table agree
  Leaves,         ///< leaf entries at their reserved uids
};

std::string_view to_string(Invariant inv);

struct Violation {
  Invariant invariant;
  std::string witness;
};

class ValidationReport {
public:
  void add(Invariant inv, std::string witness) {
    violations_.push_back({inv, std::move(witness)});
  }
  void note(std::string message) { notes_.push_back(std::move(message)); }

  bool clean() const noexcept { return violations_.empty(); }
  bool has(Invariant inv) const noexcept;
  const std::vector<Violation> &violations() const noexcept {
    return violations_;
  }
  /// Informational remarks (e.g. skipped semantic checks).
  const std::vector<std::string> &notes() const noexcept { return notes_; }

  std::string to_string() const;

private:
  std::vector<Violation> violations_;
  std::vector<std::string> notes_;
};

/// How much work a validator does. Semantic memo checks enumerate
/// assignments over each entry's support and are skipped above
/// `max_semantic_vars` support variables.
struct ValidationDepth {
  bool semantic = false;
  unsigned max_semantic_vars = 16;
};

} // namespace hcbdd
