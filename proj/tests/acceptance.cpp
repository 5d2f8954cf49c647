// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <hcbdd/bench.hpp>
#include <hcbdd/frontend.hpp>
#include <hcbdd/interned.hpp>
#include <hcbdd/oracle.hpp>
#include <hcbdd/pure.hpp>

#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace hcbdd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const char *name, bool ok, const std::string &detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  std::cout.flush();
  if (!ok)
    ++failures;
}

constexpr unsigned kVars = 6;
constexpr unsigned kDepth = 8;

std::vector<Formula> oracle_suite() {
  std::mt19937_64 rng(20240601);
  std::vector<Formula> out;
  for (int i = 0; i < 5000; ++i)
    out.push_back(random_formula(rng, {kVars, kDepth}));
  return out;
}

// Bottom-up compilation that checks each operation's memo misses against
// the product of its operand sizes.
struct BoundCheck {
  std::uint64_t ops = 0;
  std::uint64_t violations = 0;
  std::string first;

  void observe(std::uint64_t misses, std::uint64_t bound, const char *what) {
    ++ops;
    if (misses > bound && violations++ == 0)
      first = std::string(what) + " misses " + std::to_string(misses) +
              " > " + std::to_string(bound);
  }
};

NodeRef compile_pure(const Formula &f, pure::Store &st, BoundCheck &bc) {
  switch (f.kind()) {
  case Formula::Kind::Const:
    return NodeRef::leaf(f.value());
  case Formula::Kind::Ref: {
    auto [r, next] = pure::mk_var(st, f.var());
    st = std::move(next);
    return r;
  }
  case Formula::Kind::Not: {
    const NodeRef a = compile_pure(f.operand(), st, bc);
    const auto before = st.counters().memo_misses();
    const auto bound = pure::size(st, a);
    auto [r, next] = pure::neg(st, pure::default_fuel(st), a);
    st = std::move(next);
    bc.observe(st.counters().memo_misses() - before, bound, "neg");
    return r;
  }
  default: {
    const NodeRef a = compile_pure(f.lhs(), st, bc);
    const NodeRef b = compile_pure(f.rhs(), st, bc);
    const auto before = st.counters().memo_misses();
    const auto bound = pure::size(st, a) * pure::size(st, b);
    auto [r, next] = pure::apply_binop(st, pure::default_fuel(st), f.binop(), a, b);
    st = std::move(next);
    bc.observe(st.counters().memo_misses() - before, bound, "binop");
    return r;
  }
  }
}

interned::Handle compile_interned(const Formula &f, interned::Manager &m,
                                  BoundCheck &bc) {
  switch (f.kind()) {
  case Formula::Kind::Const:
    return m.leaf(f.value());
  case Formula::Kind::Ref:
    return m.var(f.var());
  case Formula::Kind::Not: {
    const auto a = compile_interned(f.operand(), m, bc);
    const auto before = m.stats().memo_misses();
    const auto r = m.bdd_not(a);
    bc.observe(m.stats().memo_misses() - before, interned::size(m, a), "not");
    return r;
  }
  default: {
    const auto a = compile_interned(f.lhs(), m, bc);
    const auto b = compile_interned(f.rhs(), m, bc);
    const auto before = m.stats().memo_misses();
    const auto r = m.bdd_binop(f.binop(), a, b);
    bc.observe(m.stats().memo_misses() - before,
               interned::size(m, a) * interned::size(m, b), "binop");
    return r;
  }
  }
}

// ---------------------------------------------------------------------------
// Random operation sequences over a growing list of results.
// ---------------------------------------------------------------------------

struct Step {
  enum class Kind { Var, Neg, Bin, Node } kind;
  BinOp op = BinOp::And;
  std::uint32_t var = 1;
  std::size_t i = 0;
  std::size_t j = 0;
};

std::vector<Step> random_steps(std::mt19937_64 &rng, std::size_t length) {
  std::vector<Step> out;
  std::size_t results = 2; // T and F
  for (std::size_t s = 0; s < length; ++s) {
    Step st{static_cast<Step::Kind>(rng() % 4)};
    st.op = static_cast<BinOp>(rng() % 3);
    st.var = static_cast<std::uint32_t>(1 + rng() % kVars);
    st.i = rng() % results;
    st.j = rng() % results;
    out.push_back(st);
    ++results; // failed mk_node steps push F, keeping indices stable
  }
  return out;
}

// Applies one step; returns false when a mk_node was rejected (ordering).
bool run_step(const Step &s, pure::Store &st, std::vector<NodeRef> &refs) {
  try {
    pure::Result r = [&] {
      switch (s.kind) {
      case Step::Kind::Var:
        return pure::mk_var(st, Var(s.var));
      case Step::Kind::Neg:
        return pure::neg(st, pure::default_fuel(st), refs[s.i]);
      case Step::Kind::Bin:
        return pure::apply_binop(st, pure::default_fuel(st), s.op, refs[s.i],
                                 refs[s.j]);
      case Step::Kind::Node:
        break;
      }
      return pure::mk_node(st, refs[s.i], Var(s.var), refs[s.j]);
    }();
    st = std::move(r.store);
    refs.push_back(r.ref);
    return true;
  } catch (const Error &e) {
    if (e.code() != ErrorCode::OrderViolation)
      throw;
    refs.push_back(NodeRef::leaf_false());
    return false;
  }
}

bool run_step(const Step &s, interned::Manager &m,
              std::vector<interned::Handle> &hs) {
  try {
    interned::Handle h = [&] {
      switch (s.kind) {
      case Step::Kind::Var:
        return m.var(Var(s.var));
      case Step::Kind::Neg:
        return m.bdd_not(hs[s.i]);
      case Step::Kind::Bin:
        return m.bdd_binop(s.op, hs[s.i], hs[s.j]);
      case Step::Kind::Node:
        break;
      }
      return m.h_node(Var(s.var), hs[s.i], hs[s.j]);
    }();
    hs.push_back(h);
    return true;
  } catch (const Error &e) {
    if (e.code() != ErrorCode::OrderViolation)
      throw;
    hs.push_back(m.leaf_false());
    return false;
  }
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

void oracle_equivalence(const std::vector<Formula> &suite) {
  for (Backend b : {Backend::Pure, Backend::Interned}) {
    const auto t0 = Clock::now();
    std::size_t wrong = 0;
    pure::Store st = pure::empty_store();
    interned::Manager m;
    for (const auto &f : suite) {
      const auto want = oracle::formula_truth_table(f, kVars);
      if (b == Backend::Pure) {
        auto [r, next] = compile(f, st);
        st = std::move(next);
        wrong += oracle::bdd_truth_table(st, r, kVars) != want;
      } else {
        wrong += oracle::bdd_truth_table(m, compile(f, m), kVars) != want;
      }
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << to_string(b) << ", " << suite.size() << " formulas, " << wrong
      << " mismatches, " << secs << " s";
    report(b == Backend::Pure ? "oracle-equivalence[pure]"
                              : "oracle-equivalence[interned]",
           wrong == 0 && secs < 30.0, d.str());
  }
}

// Syntactically different but equivalent rewrite of f.
Formula rewrite(const Formula &f, std::mt19937_64 &rng) {
  switch (rng() % 4) {
  case 0:
    return !!f;
  case 1:
    return f | Formula::constant(false);
  case 2:
    if (f.kind() == Formula::Kind::And)
      return !(!f.lhs() | !f.rhs());
    if (f.is_binary())
      return Formula::binary(f.binop(), f.rhs(), f.lhs());
    return f & f;
  default:
    return (f & Formula::var(1)) | (f & !Formula::var(1));
  }
}

void canonicity() {
  std::mt19937_64 rng(777);
  std::size_t equal_pairs = 0;
  std::size_t bad = 0;
  for (int i = 0; i < 2000; ++i) {
    const bool small = i % 2 == 0;
    const Formula f = small ? random_formula(rng, {3, 4})
                            : random_formula(rng, {kVars, kDepth});
    const Formula g =
        small ? random_formula(rng, {3, 4}) : rewrite(f, rng);
    const bool same = oracle::formula_truth_table(f, kVars) ==
                      oracle::formula_truth_table(g, kVars);
    equal_pairs += same;

    auto [pf, s1] = compile(f, pure::empty_store());
    auto [pg, s2] = compile(g, s1);
    interned::Manager m;
    const auto hf = compile(f, m);
    const auto hg = compile(g, m);
    bad += pure::eq(pf, pg) != same;
    bad += interned::structural_eq(hf, hg) != same;
  }
  std::ostringstream d;
  d << "2000 pairs (" << equal_pairs << " equivalent), " << bad
    << " disagreements";
  report("canonicity", bad == 0 && equal_pairs > 0 && equal_pairs < 2000,
         d.str());
}

void well_formedness() {
  std::mt19937_64 rng(4242);
  const auto t0 = Clock::now();
  std::size_t steps = 0;
  std::size_t dirty = 0;
  std::size_t nonmono = 0;
  std::string first;
  for (int t = 0; t < 1000; ++t) {
    const auto trace = random_steps(rng, 1 + rng() % 200);
    pure::Store st = pure::empty_store();
    std::vector<NodeRef> refs{NodeRef::leaf_true(), NodeRef::leaf_false()};
    auto masks = testing::node_tables(st);
    for (const Step &s : trace) {
      const pure::Store before = st;
      run_step(s, st, refs);
      ++steps;
      const auto rep = pure::validate_store(st);
      if (!rep.clean() && dirty++ == 0)
        first = rep.to_string();
      // Bindings kept (denotations are compared below via truth tables).
      const auto mono = pure::check_monotonic(before, st, 0);
      auto now = testing::node_tables(st);
      bool kept = mono.clean();
      for (const auto &[id, mask] : masks) {
        const auto it = now.find(id);
        kept = kept && it != now.end() && it->second == mask;
      }
      if (!kept && nonmono++ == 0)
        first = "monotonicity: " + mono.to_string();
      masks = std::move(now);
    }
    if (!pure::validate_store(st, {.semantic = true}).clean() && dirty++ == 0)
      first = "semantic validation at end of trace";
  }
  std::ostringstream d;
  d << "1000 traces, " << steps << " steps, " << dirty << " dirty, "
    << nonmono << " non-monotone, " << seconds_since(t0) << " s";
  if (!first.empty())
    d << "; first: " << first;
  report("well-formedness", dirty == 0 && nonmono == 0, d.str());
}

bool pool_distinct(const interned::Manager &m) {
  std::set<std::tuple<int, std::uint32_t, interned::Uid, interned::Uid>> shapes;
  for (interned::Uid u = 1; u < m.next_uid(); ++u) {
    const auto &s = m.shape(m.handle(u));
    shapes.emplace(static_cast<int>(s.kind), s.var, s.low, s.high);
  }
  return shapes.size() == m.pool_size();
}

void maximal_sharing(const std::vector<Formula> &suite) {
  interned::Manager m;
  std::vector<interned::Handle> hs;
  for (const auto &f : suite)
    hs.push_back(compile(f, m));
  std::size_t duplicated = !pool_distinct(m);

  std::size_t drift = 0;
  const auto pool = m.pool_size();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    drift += compile(suite[i], m) != hs[i];
    drift += testing::rebuild(m, hs[i]) != hs[i];
  }
  bool ok = interned::validate_manager(m).clean() && pool == m.pool_size();

  // Operation traces, raw h_node steps included.
  std::mt19937_64 rng(5150);
  for (int t = 0; t < 500; ++t) {
    interned::Manager tm;
    std::vector<interned::Handle> th{tm.leaf_true(), tm.leaf_false()};
    for (const Step &s : random_steps(rng, 1 + rng() % 200))
      run_step(s, tm, th);
    duplicated += !pool_distinct(tm);
    const auto before = tm.pool_size();
    for (const auto h : th)
      drift += testing::rebuild(tm, h) != h;
    ok = ok && before == tm.pool_size();
  }

  std::ostringstream d;
  d << "suite pool " << m.pool_size() << " entries, 500 traces; "
    << duplicated << " pools with duplicate shapes, " << drift
    << " uid changes on recompile/rebuild";
  report("maximal-sharing", ok && duplicated == 0 && drift == 0, d.str());
}

void complexity_bound(const std::vector<Formula> &suite) {
  BoundCheck pb;
  BoundCheck ib;
  pure::Store st = pure::empty_store();
  interned::Manager m;
  for (const auto &f : suite) {
    compile_pure(f, st, pb);
    compile_interned(f, m, ib);
  }
  std::ostringstream d;
  d << "pure " << pb.ops << " ops " << pb.violations << " over bound, "
    << "interned " << ib.ops << " ops " << ib.violations << " over bound";
  if (!pb.first.empty())
    d << "; pure " << pb.first;
  if (!ib.first.empty())
    d << "; interned " << ib.first;
  report("complexity-bound", pb.violations == 0 && ib.violations == 0,
         d.str());
}

void memo_transparency() {
  std::mt19937_64 rng(99);
  std::size_t diffs = 0;
  std::size_t steps = 0;
  for (int t = 0; t < 500; ++t) {
    const auto seq = random_steps(rng, 1 + rng() % 100);
    pure::Store a = pure::empty_store();
    pure::Store b = pure::empty_store();
    std::vector<NodeRef> ra{NodeRef::leaf_true(), NodeRef::leaf_false()};
    std::vector<NodeRef> rb = ra;
    interned::Manager ma;
    interned::Manager mb;
    std::vector<interned::Handle> ha{ma.leaf_true(), ma.leaf_false()};
    std::vector<interned::Handle> hb{mb.leaf_true(), mb.leaf_false()};
    for (const Step &s : seq) {
      run_step(s, a, ra);
      b = b.without_memo();
      run_step(s, b, rb);
      run_step(s, ma, ha);
      mb.clear_caches();
      run_step(s, mb, hb);
      ++steps;
      diffs += ra.back() != rb.back();
      diffs += interned::uid(ha.back()) != interned::uid(hb.back());
    }
  }
  std::ostringstream d;
  d << "500 sequences, " << steps << " steps, " << diffs << " differences";
  report("memo-transparency", diffs == 0, d.str());
}

void worked_example() {
  // f(0,0)=T, f(0,1)=F, f(1,0)=T, f(1,1)=F over (x1, x2).
  const Formula f = parse("(!x1 & !x2) | (x1 & !x2)");
  const auto want = oracle::from_bits({true, true, false, false});
  bool ok = oracle::formula_truth_table(f, 2) == want;

  auto [r, st] = compile(f, pure::empty_store());
  ok = ok && testing::inner_count(st, r) == 1 && r.is_inner();
  if (r.is_inner()) {
    const Node &n = *st.node(r.id());
    ok = ok && n.var == Var(2) && n.low.is_true() && n.high.is_false();
  }

  interned::Manager m;
  const auto h = compile(f, m);
  const auto &s = m.shape(h);
  ok = ok && testing::inner_count(m, h) == 1 && s.is_inner() && s.var == 2 &&
       s.low == interned::kTrueUid && s.high == interned::kFalseUid;

  report("worked-example", ok,
         "pure root " + to_string(r) + ", interned root uid " +
             std::to_string(interned::uid(h)) + ", one node (x2, T, F)");
}

void benchmarks() {
  bool ok = true;
  std::ostringstream d;
  for (unsigned n : {4U, 5U}) {
    const auto brute = testing::brute_force_queens(n);
    for (Backend b : {Backend::Pure, Backend::Interned}) {
      const auto row = run_bench_case(Family::Queens, n, b);
      ok = ok && row.models == brute;
    }
    d << "queens " << n << " = " << brute << " models; ";
  }
  ok = ok && testing::brute_force_queens(4) == 2 &&
       testing::brute_force_queens(5) == 10;

  for (unsigned h = 1; h <= 6; ++h)
    for (Backend b : {Backend::Pure, Backend::Interned})
      ok = ok && run_bench_case(Family::Pigeonhole, h, b).models == 0;
  d << "pigeonhole 1..6 unsat; ";

  for (unsigned n = 4; n <= 7; ++n) {
    const auto p = run_bench_case(Family::Queens, n, Backend::Pure);
    const auto i = run_bench_case(Family::Queens, n, Backend::Interned);
    ok = ok && p.wall_ms < 60000 && i.wall_ms < 60000 &&
         i.counters.memo_misses() <= p.counters.memo_misses() &&
         p.models == i.models;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "queens %u pure %.1f ms interned %.1f ms ratio %.2f "
                  "misses %llu/%llu; ",
                  n, p.wall_ms, i.wall_ms,
                  i.wall_ms > 0 ? p.wall_ms / i.wall_ms : 0.0,
                  static_cast<unsigned long long>(p.counters.memo_misses()),
                  static_cast<unsigned long long>(i.counters.memo_misses()));
    d << buf;
  }
  report("benchmarks", ok, d.str());
}

} // namespace

int main() {
  const auto suite = oracle_suite();
  oracle_equivalence(suite);
  canonicity();
  well_formedness();
  maximal_sharing(suite);
  complexity_bound(suite);
  memo_transparency();
  worked_example();
  benchmarks();
  std::cout << (failures == 0 ? "all criteria passed" : "some criteria failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
