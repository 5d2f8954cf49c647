#include <hcbdd/oracle.hpp>

#include <algorithm>
#include <bit>

namespace hcbdd::oracle {

TruthTable::TruthTable(unsigned n, unsigned cap) : n_(n) {
  if (n > cap || n >= 63)
    throw Error(ErrorCode::TableTooLarge,
                "truth table over " + std::to_string(n) +
                    " variables exceeds the cap of " + std::to_string(cap));
  bits_.assign(std::size_t{1} << n, false);
}

std::size_t TruthTable::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool evaluate(const Formula &f, const Assignment &a) {
  switch (f.kind()) {
  case Formula::Kind::Const:
    return f.value();
  case Formula::Kind::Ref:
    return a(f.var());
  case Formula::Kind::Not:
    return !evaluate(f.operand(), a);
  case Formula::Kind::And:
    return evaluate(f.lhs(), a) && evaluate(f.rhs(), a);
  case Formula::Kind::Or:
    return evaluate(f.lhs(), a) || evaluate(f.rhs(), a);
  case Formula::Kind::Xor:
    return evaluate(f.lhs(), a) != evaluate(f.rhs(), a);
  }
  return false;
}

TruthTable formula_truth_table(const Formula &f, unsigned n, unsigned cap) {
  if (max_var(f) > n)
    throw Error(ErrorCode::VarOutOfRange,
                "formula mentions x" + std::to_string(max_var(f)) +
                    " but the table has " + std::to_string(n) + " variables");
  TruthTable t(n, cap);
  for (std::size_t k = 0; k < t.entries(); ++k)
    t.set(k, evaluate(f, Assignment::from_bits(k, n)));
  return t;
}

namespace {

// Path walks with an explicit range check so that a variable beyond the
// table arity is reported even when the assignment would not reach it.
bool walk(const pure::Store &st, NodeRef e, const Assignment &a, unsigned n) {
  while (e.is_inner()) {
    const Node *node = st.node(e.id());
    if (!node)
      throw Error(ErrorCode::DanglingRef,
                  "node " + std::to_string(e.id()) + " is not in the graph");
    if (node->var.index() > n)
      throw Error(ErrorCode::VarOutOfRange,
                  "node uses x" + std::to_string(node->var.index()));
    e = a(node->var) ? node->high : node->low;
  }
  return e.is_true();
}

bool walk(const interned::Manager &m, interned::Handle h, const Assignment &a,
          unsigned n) {
  const interned::Shape *s = &m.shape(h);
  while (s->is_inner()) {
    if (s->var > n)
      throw Error(ErrorCode::VarOutOfRange,
                  "node uses x" + std::to_string(s->var));
    s = &m.shape(m.handle(a(s->variable()) ? s->high : s->low));
  }
  return s->kind == interned::Shape::Kind::LeafTrue;
}

template <class State, class Root>
TruthTable table_by_paths(const State &state, Root root, unsigned n,
                          unsigned cap) {
  TruthTable t(n, cap);
  for (std::size_t k = 0; k < t.entries(); ++k)
    t.set(k, walk(state, root, Assignment::from_bits(k, n), n));
  return t;
}

void require_same_arity(const TruthTable &a, const TruthTable &b) {
  if (a.vars() != b.vars())
    throw Error(ErrorCode::ArityMismatch,
                "tables over " + std::to_string(a.vars()) + " and " +
                    std::to_string(b.vars()) + " variables");
}

} // namespace

TruthTable bdd_truth_table(const pure::Store &st, NodeRef e, unsigned n,
                           unsigned cap) {
  return table_by_paths(st, e, n, cap);
}

TruthTable bdd_truth_table(const interned::Manager &m, interned::Handle h,
                           unsigned n, unsigned cap) {
  return table_by_paths(m, h, n, cap);
}

bool tables_equal(const TruthTable &a, const TruthTable &b) {
  require_same_arity(a, b);
  return a == b;
}

TruthTable pointwise(BinOp op, const TruthTable &a, const TruthTable &b) {
  require_same_arity(a, b);
  TruthTable out(a.vars(), a.vars());
  for (std::size_t k = 0; k < a.entries(); ++k)
    out.set(k, eval_binop(op, a[k], b[k]));
  return out;
}

TruthTable pointwise_not(const TruthTable &a) {
  TruthTable out(a.vars(), a.vars());
  for (std::size_t k = 0; k < a.entries(); ++k)
    out.set(k, !a[k]);
  return out;
}

std::string to_hex(const TruthTable &t) {
  static constexpr char digits[] = "0123456789abcdef";
  const std::size_t ndigits = std::max<std::size_t>(1, t.entries() / 4);
  std::string out(ndigits, '0');
  for (std::size_t j = 0; j < ndigits; ++j) {
    unsigned d = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t k = 4 * j + b;
      if (k < t.entries() && t[k])
        d |= 1U << b;
    }
    out[ndigits - 1 - j] = digits[d];
  }
  return out;
}

TruthTable from_hex(std::string_view hex, unsigned n) {
  TruthTable t(n);
  const std::size_t ndigits = std::max<std::size_t>(1, t.entries() / 4);
  if (hex.size() != ndigits)
    throw Error(ErrorCode::ArityMismatch,
                "expected " + std::to_string(ndigits) + " hex digits");
  for (std::size_t j = 0; j < ndigits; ++j) {
    const char c = hex[ndigits - 1 - j];
    unsigned d = 0;
    if (c >= '0' && c <= '9')
      d = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      d = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      d = static_cast<unsigned>(c - 'A' + 10);
    else
      throw Error(ErrorCode::ArityMismatch,
                  std::string("bad hex digit '") + c + "'");
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t k = 4 * j + b;
      const bool bit = ((d >> b) & 1U) != 0;
      if (k < t.entries())
        t.set(k, bit);
      else if (bit)
        throw Error(ErrorCode::ArityMismatch,
                    "hex digit sets entries beyond the table");
    }
  }
  return t;
}

TruthTable from_bits(const std::vector<bool> &bits) {
  if (bits.empty() || !std::has_single_bit(bits.size()))
    throw Error(ErrorCode::ArityMismatch,
                "table length must be a power of two");
  const auto n = static_cast<unsigned>(std::countr_zero(bits.size()));
  TruthTable t(n);
  for (std::size_t k = 0; k < bits.size(); ++k)
    t.set(k, bits[k]);
  return t;
}

} // namespace hcbdd::oracle
