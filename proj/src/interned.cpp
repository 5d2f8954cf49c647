#include <hcbdd/interned.hpp>

#include <hcbdd/memo_fix.hpp>

#include <algorithm>
#include <atomic>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

namespace hcbdd::interned {

namespace {

std::uint64_t fresh_tag() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

std::string describe(Uid u, const Shape &s) {
  std::ostringstream os;
  os << "uid " << u << " = ";
  switch (s.kind) {
  case Shape::Kind::LeafTrue:
    os << 'T';
    break;
  case Shape::Kind::LeafFalse:
    os << 'F';
    break;
  case Shape::Kind::Inner:
    os << "(" << s.low << ", x" << s.var << ", " << s.high << ")";
    break;
  }
  return os.str();
}

} // namespace

Manager::Manager(ManagerOptions options) : options_(options) { init(); }

void Manager::init() {
  tag_ = fresh_tag();
  nodes_.clear();
  unique_.clear();
  unique_.reserve(options_.initial_capacity);
  clear_caches();
  intern(Shape::leaf(true));
  intern(Shape::leaf(false));
}

void Manager::reset() {
  init();
  stats_ = {};
}

void Manager::clear_caches() {
  not_cache_.clear();
  for (auto &c : pair_cache_)
    c.clear();
}

std::size_t Manager::cache_entries() const noexcept {
  std::size_t n = not_cache_.size();
  for (const auto &c : pair_cache_)
    n += c.size();
  return n;
}

bool Manager::owns(Handle h) const noexcept {
  return h.owner() == tag_ && h.uid() >= 1 && h.uid() <= nodes_.size();
}

void Manager::check(Handle h) const {
  if (!owns(h))
    throw Error(ErrorCode::ForeignHandle,
                "handle uid " + std::to_string(h.uid()) +
                    " does not belong to this manager");
}

const Shape &Manager::shape(Handle h) const {
  check(h);
  return nodes_[h.uid() - 1];
}

Handle Manager::handle(Uid u) const {
  Handle h{tag_, u};
  check(h);
  return h;
}

Uid Manager::intern(const Shape &s) {
  if (s.is_inner() && options_.reduce && s.low == s.high)
    return s.low;
  if (auto it = unique_.find(s); it != unique_.end()) {
    ++stats_.intern.hits;
    return it->second;
  }
  ++stats_.intern.misses;
  if (nodes_.size() >= std::numeric_limits<Uid>::max() - 1)
    throw std::length_error("uid space exhausted");
  nodes_.push_back(s);
  const Uid u = static_cast<Uid>(nodes_.size());
  unique_.emplace(s, u);
  return u;
}

Handle Manager::h_node(Var v, Handle low, Handle high) {
  check(low);
  check(high);
  for (const Handle child : {low, high}) {
    const Shape &c = nodes_[child.uid() - 1];
    if (c.is_inner() && c.var <= v.index())
      throw Error(ErrorCode::OrderViolation,
                  "child uid " + std::to_string(child.uid()) +
                      " has variable x" + std::to_string(c.var) +
                      ", not below x" + std::to_string(v.index()));
  }
  return {tag_, intern(Shape::inner(v, low.uid(), high.uid()))};
}

Handle Manager::var(Var v) { return h_node(v, leaf_false(), leaf_true()); }

Uid Manager::not_uid(Uid a) {
  auto trivial = [](Uid u) -> std::optional<Uid> {
    if (u == kTrueUid)
      return kFalseUid;
    if (u == kFalseUid)
      return kTrueUid;
    return std::nullopt;
  };
  auto body = [this](Uid u, auto &rec) -> Uid {
    const Shape s = nodes_[u - 1]; // copy: the pool may grow below
    const Uid low = rec(s.low);
    const Uid high = rec(s.high);
    return intern(Shape::inner(s.variable(), low, high));
  };
  MemoFix fix(not_cache_, stats_.op(OpKind::Not), trivial, body);
  return fix(a);
}

Handle Manager::bdd_not(Handle a) {
  check(a);
  return {tag_, not_uid(a.uid())};
}

Uid Manager::binop_uid(BinOp op, Uid a, Uid b) {
  auto trivial = [this, op](const UidPair &p) -> std::optional<Uid> {
    const Uid x = p.first;
    const Uid y = p.second;
    switch (op) {
    case BinOp::And:
      if (x == kFalseUid || y == kFalseUid)
        return kFalseUid;
      if (x == kTrueUid || x == y)
        return y;
      if (y == kTrueUid)
        return x;
      break;
    case BinOp::Or:
      if (x == kTrueUid || y == kTrueUid)
        return kTrueUid;
      if (x == kFalseUid || x == y)
        return y;
      if (y == kFalseUid)
        return x;
      break;
    case BinOp::Xor:
      if (x == y)
        return kFalseUid;
      if (x == kFalseUid)
        return y;
      if (y == kFalseUid)
        return x;
      if (x == kTrueUid)
        return not_uid(y);
      if (y == kTrueUid)
        return not_uid(x);
      break;
    }
    return std::nullopt;
  };
  auto body = [this](const UidPair &p, auto &rec) -> Uid {
    const Shape sa = nodes_[p.first - 1];
    const Shape sb = nodes_[p.second - 1];
    const std::uint32_t v = std::min(sa.var, sb.var);
    const Uid a0 = sa.var == v ? sa.low : p.first;
    const Uid a1 = sa.var == v ? sa.high : p.first;
    const Uid b0 = sb.var == v ? sb.low : p.second;
    const Uid b1 = sb.var == v ? sb.high : p.second;
    const Uid low = rec(UidPair{a0, b0});
    const Uid high = rec(UidPair{a1, b1});
    return intern(Shape::inner(Var(v), low, high));
  };
  MemoFix fix(pair_cache_[static_cast<std::size_t>(op)],
              stats_.op(op_kind(op)), trivial, body);
  return fix(UidPair{a, b});
}

Handle Manager::bdd_binop(BinOp op, Handle a, Handle b) {
  check(a);
  check(b);
  return {tag_, binop_uid(op, a.uid(), b.uid())};
}

// --- queries ---------------------------------------------------------------

bool denote(const Manager &m, Handle h, const Assignment &a) {
  const Shape *s = &m.shape(h);
  while (s->is_inner())
    s = &m.shape(m.handle(a(s->variable()) ? s->high : s->low));
  return s->kind == Shape::Kind::LeafTrue;
}

std::vector<Handle> reachable(const Manager &m, Handle h) {
  std::set<Uid> seen;
  std::vector<Uid> stack{h.uid()};
  m.shape(h); // ownership check
  while (!stack.empty()) {
    const Uid u = stack.back();
    stack.pop_back();
    if (!seen.insert(u).second)
      continue;
    const Shape &s = m.shape(m.handle(u));
    if (s.is_inner()) {
      stack.push_back(s.low);
      stack.push_back(s.high);
    }
  }
  std::vector<Handle> out;
  out.reserve(seen.size());
  for (Uid u : seen)
    out.push_back(m.handle(u));
  return out;
}

std::size_t size(const Manager &m, Handle h) { return reachable(m, h).size(); }

std::string to_dot(const Manager &m, Handle h) {
  std::ostringstream os;
  os << "digraph bdd {\n";
  for (const Handle n : reachable(m, h)) {
    const Shape &s = m.shape(n);
    if (s.is_leaf()) {
      os << "  n" << n.uid() << " [shape=box, label=\""
         << (s.kind == Shape::Kind::LeafTrue ? 'T' : 'F') << "\"];\n";
      continue;
    }
    os << "  n" << n.uid() << " [shape=circle, label=\"x" << s.var
       << "\"];\n";
    os << "  n" << n.uid() << " -> n" << s.low << " [style=dashed];\n";
    os << "  n" << n.uid() << " -> n" << s.high << " [style=solid];\n";
  }
  os << "}\n";
  return os.str();
}

// --- validation ------------------------------------------------------------

namespace {

bool live(const Manager &m, Uid u) { return u >= 1 && u <= m.pool_size(); }

bool support(const Manager &m, std::vector<Uid> roots,
             std::set<std::uint32_t> &vars) {
  std::unordered_set<Uid> seen;
  while (!roots.empty()) {
    const Uid u = roots.back();
    roots.pop_back();
    if (!seen.insert(u).second)
      continue;
    if (!live(m, u))
      return false;
    const Shape &s = m.shape(m.handle(u));
    if (s.is_inner()) {
      vars.insert(s.var);
      roots.push_back(s.low);
      roots.push_back(s.high);
    }
  }
  return true;
}

template <class Check>
bool for_all_assignments(const std::set<std::uint32_t> &vars, Check &&check) {
  const std::vector<std::uint32_t> order(vars.begin(), vars.end());
  const std::uint32_t top = order.empty() ? 0 : order.back();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << order.size());
       ++bits) {
    Assignment a(std::vector<bool>(top, false));
    for (std::size_t i = 0; i < order.size(); ++i)
      a.set(Var(order[i]), ((bits >> i) & 1U) != 0);
    if (!check(a))
      return false;
  }
  return true;
}

} // namespace

ValidationReport validate_manager(const Manager &m, ValidationDepth depth) {
  ValidationReport report;
  const auto &nodes = m.nodes_;

  if (nodes.size() < 2 || !(nodes[kTrueUid - 1] == Shape::leaf(true)) ||
      !(nodes[kFalseUid - 1] == Shape::leaf(false)))
    report.add(Invariant::Leaves, "uids 1 and 2 must hold T and F");

  std::unordered_map<Shape, Uid, ShapeHash> first;
  for (Uid u = 1; u <= nodes.size(); ++u) {
    const Shape &s = nodes[u - 1];
    auto [it, fresh] = first.emplace(s, u);
    if (!fresh)
      report.add(Invariant::PoolUniqueness,
                 describe(u, s) + " duplicates uid " +
                     std::to_string(it->second));
    if (s.is_leaf())
      continue;
    if (s.var == 0)
      report.add(Invariant::Ordering, describe(u, s) + " has variable 0");
    if (s.low == s.high)
      report.add(Invariant::Reduction, describe(u, s));
    for (const Uid c : {s.low, s.high}) {
      if (c == 0 || c >= u) {
        report.add(Invariant::ChildDescent,
                   describe(u, s) + " child " + std::to_string(c) +
                       " is not an older pool entry");
        continue;
      }
      const Shape &cs = nodes[c - 1];
      if (cs.is_inner() && cs.var <= s.var)
        report.add(Invariant::Ordering,
                   describe(u, s) + " child " + describe(c, cs));
    }
  }

  if (m.unique_.size() != nodes.size())
    report.add(Invariant::UidBijection,
               "unique table has " + std::to_string(m.unique_.size()) +
                   " entries for " + std::to_string(nodes.size()) +
                   " uids");
  for (const auto &[s, u] : m.unique_) {
    if (!live(m, u) || !(nodes[u - 1] == s))
      report.add(Invariant::UidBijection,
                 "unique table maps " + describe(u, s) +
                     " to a different pool entry");
  }

  bool domain_ok = true;
  auto need = [&](const std::string &what, Uid u) {
    if (!live(m, u)) {
      domain_ok = false;
      report.add(Invariant::MemoDomain,
                 what + " refers to dead uid " + std::to_string(u));
    }
  };
  for (const auto &[k, v] : m.not_cache_) {
    need("not-cache key", k);
    need("not-cache value", v);
  }
  for (BinOp op : {BinOp::And, BinOp::Or, BinOp::Xor}) {
    const std::string name = std::string(to_string(op)) + "-cache";
    for (const auto &[k, v] : m.pair_cache(op)) {
      need(name + " key", k.first);
      need(name + " key", k.second);
      need(name + " value", v);
    }
  }

  if (!depth.semantic)
    return report;
  if (!domain_ok || report.has(Invariant::ChildDescent)) {
    report.note("semantic cache check skipped: dangling references");
    return report;
  }
  std::size_t skipped = 0;
  for (const auto &[k, v] : m.not_cache_) {
    std::set<std::uint32_t> vars;
    if (!support(m, {k, v}, vars) || vars.size() > depth.max_semantic_vars) {
      ++skipped;
      continue;
    }
    const bool ok = for_all_assignments(vars, [&](const Assignment &a) {
      return denote(m, m.handle(v), a) != denote(m, m.handle(k), a);
    });
    if (!ok)
      report.add(Invariant::MemoSemantics,
                 "not-cache " + std::to_string(k) + " -> " +
                     std::to_string(v));
  }
  for (BinOp op : {BinOp::And, BinOp::Or, BinOp::Xor}) {
    for (const auto &[k, v] : m.pair_cache(op)) {
      std::set<std::uint32_t> vars;
      if (!support(m, {k.first, k.second, v}, vars) ||
          vars.size() > depth.max_semantic_vars) {
        ++skipped;
        continue;
      }
      const bool ok = for_all_assignments(vars, [&](const Assignment &a) {
        return denote(m, m.handle(v), a) ==
               eval_binop(op, denote(m, m.handle(k.first), a),
                          denote(m, m.handle(k.second), a));
      });
      if (!ok)
        report.add(Invariant::MemoSemantics,
                   std::string(to_string(op)) + "-cache (" +
                       std::to_string(k.first) + ", " +
                       std::to_string(k.second) + ") -> " +
                       std::to_string(v));
    }
  }
  if (skipped > 0)
    report.note(std::to_string(skipped) +
                " cache entries exceed the semantic-check variable cap");
  return report;
}

// --- backdoor --------------------------------------------------------------

Handle ManagerBackdoor::append_raw(Manager &m, const Shape &s) {
  m.nodes_.push_back(s);
  return {m.tag_, static_cast<Uid>(m.nodes_.size())};
}

void ManagerBackdoor::set_not_cache(Manager &m, Uid key, Uid value) {
  m.not_cache_[key] = value;
}

} // namespace hcbdd::interned
