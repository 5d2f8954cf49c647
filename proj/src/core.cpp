#include <hcbdd/core.hpp>

#include <algorithm>
#include <sstream>

namespace hcbdd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidVar:
    return "InvalidVar";
  case ErrorCode::InvalidChild:
    return "InvalidChild";
  case ErrorCode::OrderViolation:
    return "OrderViolation";
  case ErrorCode::DanglingRef:
    return "DanglingRef";
  case ErrorCode::OutOfFuel:
    return "OutOfFuel";
  case ErrorCode::ForeignHandle:
    return "ForeignHandle";
  case ErrorCode::VarOutOfRange:
    return "VarOutOfRange";
  case ErrorCode::ArityMismatch:
    return "ArityMismatch";
  case ErrorCode::TableTooLarge:
    return "TableTooLarge";
  case ErrorCode::SyntaxError:
    return "SyntaxError";
  case ErrorCode::VarIndexZero:
    return "VarIndexZero";
  case ErrorCode::StoreFormat:
    return "StoreFormat";
  }
  return "Unknown";
}

namespace {
std::string positioned(std::size_t line, std::size_t column,
                       const std::string &message) {
  std::ostringstream os;
  os << line << ':' << column << ": " << message;
  return os.str();
}
} // namespace

SyntaxError::SyntaxError(ErrorCode code, std::size_t line, std::size_t column,
                         const std::string &message)
    : Error(code, positioned(line, column, message)), line_(line),
      column_(column) {}

Var::Var(std::uint32_t index) : index_(index) {
  if (index == 0)
    throw Error(ErrorCode::InvalidVar, "variable indices start at 1");
}

NodeRef NodeRef::inner(std::uint32_t id) {
  if (id == 0)
    throw Error(ErrorCode::InvalidChild, "node ids start at 1");
  return NodeRef(Kind::Inner, id);
}

std::string to_string(NodeRef ref) {
  switch (ref.kind()) {
  case NodeRef::Kind::LeafTrue:
    return "T";
  case NodeRef::Kind::LeafFalse:
    return "F";
  case NodeRef::Kind::Inner:
    break;
  }
  return "N" + std::to_string(ref.id());
}

std::string_view to_string(BinOp op) {
  switch (op) {
  case BinOp::And:
    return "and";
  case BinOp::Or:
    return "or";
  case BinOp::Xor:
    return "xor";
  }
  return "?";
}

std::string_view to_string(OpKind op) {
  switch (op) {
  case OpKind::Not:
    return "not";
  case OpKind::And:
    return "and";
  case OpKind::Or:
    return "or";
  case OpKind::Xor:
    return "xor";
  }
  return "?";
}

std::uint64_t Counters::memo_hits() const {
  std::uint64_t total = 0;
  for (const auto &m : memo)
    total += m.hits;
  return total;
}

std::uint64_t Counters::memo_misses() const {
  std::uint64_t total = 0;
  for (const auto &m : memo)
    total += m.misses;
  return total;
}

// --- Assignment ------------------------------------------------------------

Assignment Assignment::from_bits(std::uint64_t bits, unsigned n) {
  std::vector<bool> values(n);
  for (unsigned i = 0; i < n; ++i)
    values[i] = ((bits >> i) & 1U) != 0;
  return Assignment(std::move(values));
}

bool Assignment::operator()(Var v) const {
  if (v.index() > values_.size())
    throw Error(ErrorCode::VarOutOfRange,
                "assignment does not cover x" + std::to_string(v.index()));
  return values_[v.index() - 1];
}

void Assignment::set(Var v, bool value) {
  if (v.index() > values_.size())
    values_.resize(v.index());
  values_[v.index() - 1] = value;
}

// --- Formula ---------------------------------------------------------------

struct Formula::Rep {
  Kind kind;
  bool value = false;
  std::uint32_t var = 0;
  std::vector<Formula> children;
};

Formula Formula::constant(bool value) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Const;
  rep->value = value;
  return Formula(std::move(rep));
}

Formula Formula::var(Var v) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Ref;
  rep->var = v.index();
  return Formula(std::move(rep));
}

Formula Formula::negate(Formula f) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Not;
  rep->children.push_back(std::move(f));
  return Formula(std::move(rep));
}

Formula Formula::binary(BinOp op, Formula lhs, Formula rhs) {
  auto rep = std::make_shared<Rep>();
  switch (op) {
  case BinOp::And:
    rep->kind = Kind::And;
    break;
  case BinOp::Or:
    rep->kind = Kind::Or;
    break;
  case BinOp::Xor:
    rep->kind = Kind::Xor;
    break;
  }
  rep->children.push_back(std::move(lhs));
  rep->children.push_back(std::move(rhs));
  return Formula(std::move(rep));
}

Formula::Kind Formula::kind() const noexcept { return rep_->kind; }

bool Formula::is_binary() const noexcept {
  return rep_->kind == Kind::And || rep_->kind == Kind::Or ||
         rep_->kind == Kind::Xor;
}

bool Formula::value() const {
  if (rep_->kind != Kind::Const)
    throw std::logic_error("Formula::value on non-constant");
  return rep_->value;
}

Var Formula::var() const {
  if (rep_->kind != Kind::Ref)
    throw std::logic_error("Formula::var on non-variable");
  return Var(rep_->var);
}

const Formula &Formula::operand() const {
  if (rep_->kind != Kind::Not)
    throw std::logic_error("Formula::operand on non-negation");
  return rep_->children[0];
}

const Formula &Formula::lhs() const {
  if (!is_binary())
    throw std::logic_error("Formula::lhs on non-binary");
  return rep_->children[0];
}

const Formula &Formula::rhs() const {
  if (!is_binary())
    throw std::logic_error("Formula::rhs on non-binary");
  return rep_->children[1];
}

BinOp Formula::binop() const {
  switch (rep_->kind) {
  case Kind::And:
    return BinOp::And;
  case Kind::Or:
    return BinOp::Or;
  case Kind::Xor:
    return BinOp::Xor;
  default:
    throw std::logic_error("Formula::binop on non-binary");
  }
}

std::uint32_t max_var(const Formula &f) {
  switch (f.kind()) {
  case Formula::Kind::Const:
    return 0;
  case Formula::Kind::Ref:
    return f.var().index();
  case Formula::Kind::Not:
    return max_var(f.operand());
  default:
    return std::max(max_var(f.lhs()), max_var(f.rhs()));
  }
}

std::size_t depth(const Formula &f) {
  switch (f.kind()) {
  case Formula::Kind::Const:
  case Formula::Kind::Ref:
    return 1;
  case Formula::Kind::Not:
    return 1 + depth(f.operand());
  default:
    return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
  }
}

std::size_t node_count(const Formula &f) {
  switch (f.kind()) {
  case Formula::Kind::Const:
  case Formula::Kind::Ref:
    return 1;
  case Formula::Kind::Not:
    return 1 + node_count(f.operand());
  default:
    return 1 + node_count(f.lhs()) + node_count(f.rhs());
  }
}

namespace {
Formula fold_balanced(BinOp op, std::vector<Formula> &parts, std::size_t lo,
                      std::size_t hi) {
  if (hi - lo == 1)
    return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return Formula::binary(op, fold_balanced(op, parts, lo, mid),
                         fold_balanced(op, parts, mid, hi));
}
} // namespace

Formula conjoin(std::vector<Formula> parts) {
  if (parts.empty())
    return Formula::constant(true);
  return fold_balanced(BinOp::And, parts, 0, parts.size());
}

Formula disjoin(std::vector<Formula> parts) {
  if (parts.empty())
    return Formula::constant(false);
  return fold_balanced(BinOp::Or, parts, 0, parts.size());
}

bool same_syntax(const Formula &a, const Formula &b) {
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case Formula::Kind::Const:
    return a.value() == b.value();
  case Formula::Kind::Ref:
    return a.var() == b.var();
  case Formula::Kind::Not:
    return same_syntax(a.operand(), b.operand());
  default:
    return same_syntax(a.lhs(), b.lhs()) && same_syntax(a.rhs(), b.rhs());
  }
}

// --- Validation ------------------------------------------------------------

std::string_view to_string(Invariant inv) {
  switch (inv) {
  case Invariant::Validity:
    return "validity";
  case Invariant::LeftInverse:
    return "left-inverse";
  case Invariant::Injectivity:
    return "injectivity";
  case Invariant::ChildDescent:
    return "child-descent";
  case Invariant::Reduction:
    return "reduction";
  case Invariant::Ordering:
    return "ordering";
  case Invariant::MemoDomain:
    return "memo-domain";
  case Invariant::MemoSemantics:
    return "memo-semantics";
  case Invariant::PoolUniqueness:
    return "pool-uniqueness";
  case Invariant::UidBijection:
    return "uid-bijection";
  case Invariant::Leaves:
    return "leaves";
  }
  return "?";
}

bool ValidationReport::has(Invariant inv) const noexcept {
  return std::any_of(violations_.begin(), violations_.end(),
                     [inv](const Violation &v) { return v.invariant == inv; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  if (clean())
    os << "clean\n";
  for (const auto &v : violations_)
    os << hcbdd::to_string(v.invariant) << ": " << v.witness << '\n';
  for (const auto &n : notes_)
    os << "note: " << n << '\n';
  return os.str();
}

} // namespace hcbdd
