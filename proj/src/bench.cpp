#include <hcbdd/bench.hpp>

#include <hcbdd/frontend.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <unordered_map>

namespace hcbdd {

std::string to_string(ModelCount c) {
  if (c == 0)
    return "0";
  std::string out;
  while (c > 0) {
    out += static_cast<char>('0' + static_cast<int>(c % 10));
    c /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

// Counts cover variables >= level(node); leaves sit at level nvars + 1.
ModelCount pow2(unsigned e) { return ModelCount{1} << e; }

} // namespace

ModelCount count_models(const pure::Store &st, NodeRef e, unsigned nvars) {
  std::unordered_map<pure::NodeId, ModelCount> memo;
  auto level = [&](NodeRef r) -> unsigned {
    return r.is_inner() ? st.node(r.id())->var.index() : nvars + 1;
  };
  auto rec = [&](auto &self, NodeRef r) -> ModelCount {
    if (r.is_leaf())
      return r.is_true() ? 1 : 0;
    if (auto it = memo.find(r.id()); it != memo.end())
      return it->second;
    const Node *n = st.node(r.id());
    if (!n)
      throw Error(ErrorCode::DanglingRef,
                  "node " + std::to_string(r.id()) + " is not in the graph");
    const unsigned v = n->var.index();
    if (v > nvars)
      throw Error(ErrorCode::VarOutOfRange,
                  "node uses x" + std::to_string(v));
    const ModelCount c = self(self, n->low) * pow2(level(n->low) - v - 1) +
                         self(self, n->high) * pow2(level(n->high) - v - 1);
    memo.emplace(r.id(), c);
    return c;
  };
  const ModelCount root = rec(rec, e);
  return root * pow2(level(e) - 1);
}

ModelCount count_models(const interned::Manager &m, interned::Handle h,
                        unsigned nvars) {
  std::unordered_map<interned::Uid, ModelCount> memo;
  auto level = [&](interned::Uid u) -> unsigned {
    const auto &s = m.shape(m.handle(u));
    return s.is_inner() ? s.var : nvars + 1;
  };
  auto rec = [&](auto &self, interned::Uid u) -> ModelCount {
    const auto &s = m.shape(m.handle(u));
    if (s.is_leaf())
      return s.kind == interned::Shape::Kind::LeafTrue ? 1 : 0;
    if (auto it = memo.find(u); it != memo.end())
      return it->second;
    if (s.var > nvars)
      throw Error(ErrorCode::VarOutOfRange,
                  "node uses x" + std::to_string(s.var));
    const ModelCount c = self(self, s.low) * pow2(level(s.low) - s.var - 1) +
                         self(self, s.high) * pow2(level(s.high) - s.var - 1);
    memo.emplace(u, c);
    return c;
  };
  const ModelCount root = rec(rec, h.uid());
  return root * pow2(level(h.uid()) - 1);
}

std::string_view to_string(Backend b) {
  return b == Backend::Pure ? "pure" : "interned";
}

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::Taut:
    return "taut";
  case Verdict::NotTaut:
    return "not-taut";
  case Verdict::Sat:
    return "sat";
  case Verdict::Unsat:
    return "unsat";
  case Verdict::Equiv:
    return "equiv";
  case Verdict::NotEquiv:
    return "not-equiv";
  }
  return "?";
}

bool positive(Verdict v) {
  return v == Verdict::Taut || v == Verdict::Sat || v == Verdict::Equiv;
}

void print_report(std::ostream &os, const RunReport &r) {
  os << "command=" << r.command << " backend=" << to_string(r.backend)
     << " verdict=" << (r.verdict ? to_string(*r.verdict) : "none")
     << " result_nodes=" << r.result_nodes << " pool_nodes=" << r.pool_nodes
     << " intern_hits=" << r.counters.intern.hits
     << " intern_misses=" << r.counters.intern.misses
     << " memo_hits=" << r.counters.memo_hits()
     << " memo_misses=" << r.counters.memo_misses() << " wall_ms="
     << std::fixed << std::setprecision(3) << r.wall_ms << '\n';
  os.unsetf(std::ios::floatfield);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string_view command_name(CheckKind k) {
  switch (k) {
  case CheckKind::Taut:
    return "taut";
  case CheckKind::Sat:
    return "sat";
  case CheckKind::Equiv:
    return "equiv";
  }
  return "?";
}

Verdict decide(CheckKind kind, bool is_true, bool is_false, bool same) {
  switch (kind) {
  case CheckKind::Taut:
    return is_true ? Verdict::Taut : Verdict::NotTaut;
  case CheckKind::Sat:
    return is_false ? Verdict::Unsat : Verdict::Sat;
  case CheckKind::Equiv:
    return same ? Verdict::Equiv : Verdict::NotEquiv;
  }
  return Verdict::NotTaut;
}

} // namespace

RunReport run_check(CheckKind kind, const std::vector<Formula> &formulas,
                    Backend backend, const CheckOptions &options) {
  const std::size_t expected = kind == CheckKind::Equiv ? 2 : 1;
  if (formulas.size() != expected)
    throw std::invalid_argument(std::string(command_name(kind)) + " needs " +
                                std::to_string(expected) + " formula(s)");
  RunReport report;
  report.command = command_name(kind);
  report.backend = backend;
  const auto start = Clock::now();

  if (backend == Backend::Pure) {
    std::uint32_t top = 0;
    for (const auto &f : formulas)
      top = std::max(top, max_var(f));
    const pure::Fuel fuel{options.fuel ? *options.fuel : top + 1ULL};
    pure::Store st = pure::empty_store();
    std::vector<NodeRef> refs;
    for (const auto &f : formulas) {
      auto [r, next] = compile(f, st, fuel);
      refs.push_back(r);
      st = std::move(next);
    }
    report.verdict =
        decide(kind, refs[0].is_true(), refs[0].is_false(),
               refs.size() == 2 && pure::eq(refs[0], refs[1]));
    report.result_nodes = pure::size(st, refs[0]);
    report.pool_nodes = st.node_count();
    report.counters = st.counters();
  } else {
    interned::Manager m;
    std::vector<interned::Handle> hs;
    for (const auto &f : formulas)
      hs.push_back(compile(f, m));
    const auto &s = m.shape(hs[0]);
    report.verdict =
        decide(kind, s.kind == interned::Shape::Kind::LeafTrue,
               s.kind == interned::Shape::Kind::LeafFalse,
               hs.size() == 2 && interned::structural_eq(hs[0], hs[1]));
    report.result_nodes = interned::size(m, hs[0]);
    report.pool_nodes = m.pool_size() - 2;
    report.counters = m.stats();
  }
  report.wall_ms = ms_since(start);
  return report;
}

std::string_view to_string(Family f) {
  return f == Family::Queens ? "queens" : "pigeonhole";
}

void write_bench_row(std::ostream &os, const BenchRow &r) {
  os << to_string(r.family) << ',' << r.size << ',' << to_string(r.backend)
     << ',' << r.vars << ',' << to_string(r.models) << ',' << r.result_nodes
     << ',' << r.peak_nodes << ',' << r.counters.intern.hits << ','
     << r.counters.intern.misses << ',' << r.counters.memo_hits() << ','
     << r.counters.memo_misses() << ',' << std::fixed << std::setprecision(3)
     << r.wall_ms << '\n';
  os.unsetf(std::ios::floatfield);
}

Formula bench_formula(Family family, unsigned size) {
  return family == Family::Queens ? queens(size) : pigeonhole(size);
}

unsigned bench_vars(Family family, unsigned size) {
  return family == Family::Queens ? size * size : (size + 1) * size;
}

BenchRow run_bench_case(Family family, unsigned size, Backend backend) {
  BenchRow row;
  row.family = family;
  row.size = size;
  row.backend = backend;
  row.vars = bench_vars(family, size);
  const Formula f = bench_formula(family, size);
  const auto start = Clock::now();
  if (backend == Backend::Pure) {
    auto [r, st] = compile(f, pure::empty_store());
    row.wall_ms = ms_since(start);
    row.models = count_models(st, r, row.vars);
    row.result_nodes = pure::size(st, r);
    row.peak_nodes = st.node_count();
    row.counters = st.counters();
  } else {
    interned::Manager m;
    const interned::Handle h = compile(f, m);
    row.wall_ms = ms_since(start);
    row.models = count_models(m, h, row.vars);
    row.result_nodes = interned::size(m, h);
    row.peak_nodes = m.pool_size() - 2;
    row.counters = m.stats();
  }
  return row;
}

} // namespace hcbdd
