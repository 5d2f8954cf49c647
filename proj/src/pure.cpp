#include <hcbdd/pure.hpp>

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hcbdd::pure {

const PairMemo &MemoTables::table(BinOp op) const {
  switch (op) {
  case BinOp::And:
    return mand;
  case BinOp::Or:
    return mor;
  case BinOp::Xor:
    return mxor;
  }
  return mand;
}

PairMemo &MemoTables::table(BinOp op) {
  return const_cast<PairMemo &>(std::as_const(*this).table(op));
}

Store Store::without_memo() const {
  Store out = *this;
  out.memo_ = MemoTables{};
  return out;
}

Store empty_store(StoreOptions options) {
  Store st;
  st.reduce_ = options.reduce;
  return st;
}

// Internal operations. Each one consumes a store and returns the successor;
// callers never observe intermediate states.
struct StoreOps {
  static const Node &node_at(const Store &st, NodeId id) {
    const Node *n = st.graph_.find(id);
    if (!n)
      throw Error(ErrorCode::DanglingRef,
                  "node " + std::to_string(id) + " is not in the graph");
    return *n;
  }

  static Result upd(Store st, const Node &n) {
    if (st.next_ == std::numeric_limits<NodeId>::max())
      throw std::length_error("node id space exhausted");
    const NodeId id = st.next_;
    st.graph_ = st.graph_.insert(id, n);
    st.hmap_ = st.hmap_.insert(n, id);
    st.next_ = id + 1;
    st.max_var_ = std::max(st.max_var_, n.var.index());
    return {NodeRef::inner(id), std::move(st)};
  }

  static Result make(Store st, NodeRef low, Var v, NodeRef high) {
    if (st.reduce_ && node_should_collapse(low, high))
      return {low, std::move(st)};
    const Node n{low, v, high};
    if (const NodeId *id = st.hmap_.find(n)) {
      ++st.counters_.intern.hits;
      return {NodeRef::inner(*id), std::move(st)};
    }
    ++st.counters_.intern.misses;
    return upd(std::move(st), n);
  }

  static void check_child(const Store &st, NodeRef child, Var v) {
    if (!child.is_inner())
      return;
    if (child.id() >= st.next_ || !st.graph_.contains(child.id()))
      throw Error(ErrorCode::InvalidChild,
                  to_string(child) + " is not allocated in the store");
    const Node &c = node_at(st, child.id());
    if (c.var <= v)
      throw Error(ErrorCode::OrderViolation,
                  "child " + to_string(child) + " has variable x" +
                      std::to_string(c.var.index()) + ", not below x" +
                      std::to_string(v.index()));
  }

  static void spend(Fuel &fuel) {
    if (fuel.steps == 0)
      throw Error(ErrorCode::OutOfFuel, "recursion budget exhausted");
    --fuel.steps;
  }

  static Result neg(Store st, Fuel fuel, NodeRef e) {
    spend(fuel);
    if (e.is_leaf())
      return {NodeRef::leaf(!e.is_true()), std::move(st)};
    const NodeId id = e.id();
    if (const NodeRef *r = st.memo_.mneg.find(id)) {
      ++st.counters_.op(OpKind::Not).hits;
      return {*r, std::move(st)};
    }
    ++st.counters_.op(OpKind::Not).misses;
    const Node n = node_at(st, id);
    auto [low, s1] = neg(std::move(st), fuel, n.low);
    auto [high, s2] = neg(std::move(s1), fuel, n.high);
    auto [r, s3] = make(std::move(s2), low, n.var, high);
    s3.memo_.mneg = s3.memo_.mneg.insert(id, r);
    return {r, std::move(s3)};
  }

  static Result apply(Store st, Fuel fuel, BinOp op, NodeRef a, NodeRef b) {
    spend(fuel);
    const NodeRef T = NodeRef::leaf_true();
    const NodeRef F = NodeRef::leaf_false();
    switch (op) {
    case BinOp::And:
      if (a == F || b == F)
        return {F, std::move(st)};
      if (a == T || a == b)
        return {b, std::move(st)};
      if (b == T)
        return {a, std::move(st)};
      break;
    case BinOp::Or:
      if (a == T || b == T)
        return {T, std::move(st)};
      if (a == F || a == b)
        return {b, std::move(st)};
      if (b == F)
        return {a, std::move(st)};
      break;
    case BinOp::Xor:
      if (a == b)
        return {F, std::move(st)};
      if (a == F)
        return {b, std::move(st)};
      if (b == F)
        return {a, std::move(st)};
      // Negation runs on this call's budget.
      if (a == T)
        return neg(std::move(st), Fuel{fuel.steps + 1}, b);
      if (b == T)
        return neg(std::move(st), Fuel{fuel.steps + 1}, a);
      break;
    }

    const IdPair key{a.id(), b.id()};
    PairMemo &memo = st.memo_.table(op);
    if (const NodeRef *r = memo.find(key)) {
      ++st.counters_.op(op_kind(op)).hits;
      return {*r, std::move(st)};
    }
    ++st.counters_.op(op_kind(op)).misses;

    const Node na = node_at(st, a.id());
    const Node nb = node_at(st, b.id());
    const Var v = std::min(na.var, nb.var);
    const NodeRef a0 = na.var == v ? na.low : a;
    const NodeRef a1 = na.var == v ? na.high : a;
    const NodeRef b0 = nb.var == v ? nb.low : b;
    const NodeRef b1 = nb.var == v ? nb.high : b;

    auto [low, s1] = apply(std::move(st), fuel, op, a0, b0);
    auto [high, s2] = apply(std::move(s1), fuel, op, a1, b1);
    auto [r, s3] = make(std::move(s2), low, v, high);
    PairMemo &out = s3.memo_.table(op);
    out = out.insert(key, r);
    return {r, std::move(s3)};
  }
};

Result mk_node(const Store &st, NodeRef low, Var v, NodeRef high) {
  StoreOps::check_child(st, low, v);
  StoreOps::check_child(st, high, v);
  return StoreOps::make(st, low, v, high);
}

Result mk_var(const Store &st, Var v) {
  return mk_node(st, NodeRef::leaf_false(), v, NodeRef::leaf_true());
}

Fuel default_fuel(const Store &st) {
  return Fuel{static_cast<std::uint64_t>(st.max_var()) + 1};
}

namespace {
void require_valid(const Store &st, NodeRef e) {
  if (e.is_inner() && (e.id() >= st.next() || !st.node(e.id())))
    throw Error(ErrorCode::InvalidChild,
                to_string(e) + " is not allocated in the store");
}
} // namespace

Result neg(const Store &st, Fuel fuel, NodeRef e) {
  require_valid(st, e);
  return StoreOps::neg(st, fuel, e);
}

Result apply_binop(const Store &st, Fuel fuel, BinOp op, NodeRef a,
                   NodeRef b) {
  require_valid(st, a);
  require_valid(st, b);
  return StoreOps::apply(st, fuel, op, a, b);
}

bool denote(const Store &st, NodeRef e, const Assignment &a) {
  while (e.is_inner()) {
    const Node &n = StoreOps::node_at(st, e.id());
    e = a(n.var) ? n.high : n.low;
  }
  return e.is_true();
}

std::size_t size(const Store &st, NodeRef e) {
  std::unordered_set<NodeId> seen;
  bool leaf_true = false;
  bool leaf_false = false;
  std::vector<NodeRef> stack{e};
  while (!stack.empty()) {
    const NodeRef r = stack.back();
    stack.pop_back();
    if (r.is_true()) {
      leaf_true = true;
      continue;
    }
    if (r.is_false()) {
      leaf_false = true;
      continue;
    }
    if (!seen.insert(r.id()).second)
      continue;
    const Node &n = StoreOps::node_at(st, r.id());
    stack.push_back(n.low);
    stack.push_back(n.high);
  }
  return seen.size() + (leaf_true ? 1 : 0) + (leaf_false ? 1 : 0);
}

// --- validation ------------------------------------------------------------

namespace {

std::string describe(NodeId id, const Node &n) {
  std::ostringstream os;
  os << id << " -> (" << to_string(n.low) << ", x" << n.var.index() << ", "
     << to_string(n.high) << ')';
  return os.str();
}

bool ref_live(const Store &st, NodeRef r) {
  return r.is_leaf() || (r.id() < st.next() && st.node(r.id()) != nullptr);
}

/// Variables reachable from the given roots; false on a dangling reference.
bool collect_support(const Store &st, std::vector<NodeRef> roots,
                     std::set<std::uint32_t> &vars) {
  std::unordered_set<NodeId> seen;
  while (!roots.empty()) {
    const NodeRef r = roots.back();
    roots.pop_back();
    if (r.is_leaf() || !seen.insert(r.id()).second)
      continue;
    const Node *n = st.node(r.id());
    if (!n)
      return false;
    vars.insert(n->var.index());
    roots.push_back(n->low);
    roots.push_back(n->high);
  }
  return true;
}

/// Calls check(assignment) for every assignment over `vars` (others false).
/// Returns false if check returns false for some assignment.
template <class Check>
bool for_all_assignments(const std::set<std::uint32_t> &vars, Check &&check) {
  const std::vector<std::uint32_t> order(vars.begin(), vars.end());
  const std::uint32_t top = order.empty() ? 0 : order.back();
  const std::uint64_t count = std::uint64_t{1} << order.size();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    Assignment a(std::vector<bool>(top, false));
    for (std::size_t i = 0; i < order.size(); ++i)
      a.set(Var(order[i]), ((bits >> i) & 1U) != 0);
    if (!check(a))
      return false;
  }
  return true;
}

} // namespace

ValidationReport validate_store(const Store &st, ValidationDepth depth) {
  ValidationReport report;
  if (st.next() == 0)
    report.add(Invariant::Validity, "next counter is 0");

  std::unordered_map<Node, NodeId, NodeHash> seen;
  st.graph().for_each([&](NodeId id, const Node &n) {
    if (id == 0 || id >= st.next())
      report.add(Invariant::Validity,
                 describe(id, n) + " not below next=" +
                     std::to_string(st.next()));
    if (n.low == n.high)
      report.add(Invariant::Reduction, describe(id, n));
    for (const NodeRef child : {n.low, n.high}) {
      if (!child.is_inner())
        continue;
      if (!ref_live(st, child)) {
        report.add(Invariant::Validity,
                   describe(id, n) + " refers to unallocated " +
                       to_string(child));
        continue;
      }
      if (child.id() >= id)
        report.add(Invariant::ChildDescent,
                   describe(id, n) + " child " + to_string(child) +
                       " is not older than its parent");
      const Node &c = *st.node(child.id());
      if (c.var <= n.var)
        report.add(Invariant::Ordering, describe(id, n) + " child " +
                                            describe(child.id(), c));
    }
    const NodeId *back = st.find(n);
    if (!back || *back != id)
      report.add(Invariant::LeftInverse,
                 describe(id, n) + " but hmap gives " +
                     (back ? std::to_string(*back) : std::string("nothing")));
    auto [it, fresh] = seen.emplace(n, id);
    if (!fresh)
      report.add(Invariant::Injectivity,
                 describe(id, n) + " duplicates id " +
                     std::to_string(it->second));
  });

  st.hmap().for_each([&](const Node &n, NodeId id) {
    const Node *g = st.node(id);
    if (!g || !(*g == n))
      report.add(Invariant::LeftInverse,
                 "hmap maps " + describe(id, n) + " but graph has " +
                     (g ? describe(id, *g) : std::string("no node")));
  });

  // Memo tables: domain, then (on demand) semantics.
  bool memo_domain_ok = true;
  auto check_key = [&](const std::string &table, NodeId id) {
    if (!ref_live(st, NodeRef::inner(id))) {
      memo_domain_ok = false;
      report.add(Invariant::MemoDomain,
                 table + " key refers to unallocated node " +
                     std::to_string(id));
    }
  };
  auto check_value = [&](const std::string &table, NodeRef r) {
    if (!ref_live(st, r)) {
      memo_domain_ok = false;
      report.add(Invariant::MemoDomain,
                 table + " value " + to_string(r) + " is unallocated");
    }
  };
  for (BinOp op : {BinOp::And, BinOp::Or, BinOp::Xor}) {
    const std::string name = "m" + std::string(to_string(op));
    st.memo().table(op).for_each([&](const IdPair &k, const NodeRef &r) {
      check_key(name, k.first);
      check_key(name, k.second);
      check_value(name, r);
    });
  }
  st.memo().mneg.for_each([&](NodeId k, const NodeRef &r) {
    check_key("mneg", k);
    check_value("mneg", r);
  });

  if (!depth.semantic)
    return report;
  if (!memo_domain_ok || report.has(Invariant::Validity)) {
    report.note("semantic memo check skipped: dangling references");
    return report;
  }

  std::size_t skipped = 0;
  for (BinOp op : {BinOp::And, BinOp::Or, BinOp::Xor}) {
    st.memo().table(op).for_each([&](const IdPair &k, const NodeRef &r) {
      const NodeRef a = NodeRef::inner(k.first);
      const NodeRef b = NodeRef::inner(k.second);
      std::set<std::uint32_t> vars;
      if (!collect_support(st, {a, b, r}, vars) ||
          vars.size() > depth.max_semantic_vars) {
        ++skipped;
        return;
      }
      const bool ok = for_all_assignments(vars, [&](const Assignment &x) {
        return denote(st, r, x) ==
               eval_binop(op, denote(st, a, x), denote(st, b, x));
      });
      if (!ok)
        report.add(Invariant::MemoSemantics,
                   "m" + std::string(to_string(op)) + " (" +
                       std::to_string(k.first) + ", " +
                       std::to_string(k.second) + ") -> " + to_string(r));
    });
  }
  st.memo().mneg.for_each([&](NodeId k, const NodeRef &r) {
    const NodeRef a = NodeRef::inner(k);
    std::set<std::uint32_t> vars;
    if (!collect_support(st, {a, r}, vars) ||
        vars.size() > depth.max_semantic_vars) {
      ++skipped;
      return;
    }
    const bool ok = for_all_assignments(vars, [&](const Assignment &x) {
      return denote(st, r, x) != denote(st, a, x);
    });
    if (!ok)
      report.add(Invariant::MemoSemantics,
                 "mneg " + std::to_string(k) + " -> " + to_string(r));
  });
  if (skipped > 0)
    report.note(std::to_string(skipped) +
                " memo entries exceed the semantic-check variable cap");
  return report;
}

ValidationReport check_monotonic(const Store &before, const Store &after,
                                 unsigned max_denotation_vars) {
  ValidationReport report;
  if (after.next() < before.next())
    report.add(Invariant::Validity,
               "next decreased from " + std::to_string(before.next()) +
                   " to " + std::to_string(after.next()));
  before.graph().for_each([&](NodeId id, const Node &n) {
    const Node *m = after.node(id);
    if (!m || !(*m == n))
      report.add(Invariant::Validity,
                 "binding " + describe(id, n) + " not preserved");
  });
  if (!report.clean())
    return report;
  if (before.max_var() > max_denotation_vars) {
    report.note("denotation check skipped: too many variables");
    return report;
  }
  const unsigned n = before.max_var();
  before.graph().for_each([&](NodeId id, const Node &) {
    const NodeRef e = NodeRef::inner(id);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const Assignment a = Assignment::from_bits(bits, n);
      if (denote(before, e, a) != denote(after, e, a)) {
        report.add(Invariant::Validity,
                   "denotation of " + to_string(e) + " changed");
        return;
      }
    }
  });
  return report;
}

// --- DOT -------------------------------------------------------------------

std::string to_dot(const Store &st, NodeRef e) {
  std::set<NodeId> inner;
  bool has_true = false;
  bool has_false = false;
  std::vector<NodeRef> stack{e};
  while (!stack.empty()) {
    const NodeRef r = stack.back();
    stack.pop_back();
    if (r.is_leaf()) {
      (r.is_true() ? has_true : has_false) = true;
      continue;
    }
    if (!inner.insert(r.id()).second)
      continue;
    const Node &n = StoreOps::node_at(st, r.id());
    stack.push_back(n.low);
    stack.push_back(n.high);
  }

  auto name = [](NodeRef r) {
    return r.is_leaf() ? to_string(r) : "n" + std::to_string(r.id());
  };
  std::ostringstream os;
  os << "digraph bdd {\n";
  if (has_true)
    os << "  T [shape=box, label=\"T\"];\n";
  if (has_false)
    os << "  F [shape=box, label=\"F\"];\n";
  for (NodeId id : inner) {
    const Node &n = *st.node(id);
    os << "  n" << id << " [shape=circle, label=\"x" << n.var.index()
       << "\"];\n";
    os << "  n" << id << " -> " << name(n.low) << " [style=dashed];\n";
    os << "  n" << id << " -> " << name(n.high) << " [style=solid];\n";
  }
  os << "}\n";
  return os.str();
}

// --- serialization ---------------------------------------------------------

std::string serialize(const Store &st) {
  std::ostringstream os;
  os << "hcbdd-store 1\n";
  os << "next " << st.next() << '\n';
  st.graph().for_each([&](NodeId id, const Node &n) {
    os << id << ' ' << to_string(n.low).substr(n.low.is_inner() ? 1 : 0)
       << ' ' << n.var.index() << ' '
       << to_string(n.high).substr(n.high.is_inner() ? 1 : 0) << '\n';
  });
  return os.str();
}

namespace {

[[noreturn]] void format_error(std::size_t line, const std::string &msg) {
  throw Error(ErrorCode::StoreFormat,
              "line " + std::to_string(line) + ": " + msg);
}

std::uint64_t parse_number(const std::string &tok, std::size_t line) {
  if (tok.empty() || tok.size() > 10 ||
      !std::all_of(tok.begin(), tok.end(),
                   [](char c) { return c >= '0' && c <= '9'; }))
    format_error(line, "expected a number, got '" + tok + "'");
  const std::uint64_t v = std::stoull(tok);
  if (v > std::numeric_limits<NodeId>::max())
    format_error(line, "number out of range: " + tok);
  return v;
}

NodeRef parse_ref(const std::string &tok, std::size_t line) {
  if (tok == "T")
    return NodeRef::leaf_true();
  if (tok == "F")
    return NodeRef::leaf_false();
  const std::uint64_t id = parse_number(tok, line);
  if (id == 0)
    format_error(line, "node id 0");
  return NodeRef::inner(static_cast<NodeId>(id));
}

} // namespace

Store parse_store(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  bool have_next = false;
  Store st = empty_store();
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream line(raw);
    std::vector<std::string> toks;
    for (std::string t; line >> t;)
      toks.push_back(t);
    if (toks.empty() || toks.front().starts_with('#'))
      continue;
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "hcbdd-store" || toks[1] != "1")
        format_error(line_no, "expected header 'hcbdd-store 1'");
      have_header = true;
      continue;
    }
    if (!have_next) {
      if (toks.size() != 2 || toks[0] != "next")
        format_error(line_no, "expected 'next <N>'");
      const auto next = parse_number(toks[1], line_no);
      if (next == 0)
        format_error(line_no, "next must be positive");
      st = StoreBackdoor::set_next(std::move(st), static_cast<NodeId>(next));
      have_next = true;
      continue;
    }
    if (toks.size() != 4)
      format_error(line_no, "expected '<id> <low> <var> <high>'");
    const auto id = parse_number(toks[0], line_no);
    if (id == 0)
      format_error(line_no, "node id 0");
    const NodeRef low = parse_ref(toks[1], line_no);
    const auto var = parse_number(toks[2], line_no);
    if (var == 0)
      format_error(line_no, "variable index 0");
    const NodeRef high = parse_ref(toks[3], line_no);
    if (st.node(static_cast<NodeId>(id)))
      format_error(line_no, "duplicate id " + toks[0]);
    const Node n{low, Var(static_cast<std::uint32_t>(var)), high};
    st = StoreBackdoor::bind_graph(std::move(st), static_cast<NodeId>(id), n);
    st = StoreBackdoor::bind_hmap(std::move(st), n, static_cast<NodeId>(id));
  }
  if (!have_header || !have_next)
    format_error(line_no, "missing header");
  return st;
}

// --- backdoor --------------------------------------------------------------

Store StoreBackdoor::bind_graph(Store st, NodeId id, const Node &n) {
  st.graph_ = st.graph_.insert(id, n);
  st.max_var_ = std::max(st.max_var_, n.var.index());
  return st;
}

Store StoreBackdoor::bind_hmap(Store st, const Node &n, NodeId id) {
  st.hmap_ = st.hmap_.insert(n, id);
  return st;
}

Store StoreBackdoor::set_next(Store st, NodeId next) {
  st.next_ = next;
  return st;
}

Store StoreBackdoor::bind_memo(Store st, BinOp op, IdPair key,
                               NodeRef value) {
  PairMemo &t = st.memo_.table(op);
  t = t.insert(key, value);
  return st;
}

} // namespace hcbdd::pure
