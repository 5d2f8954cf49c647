#include <doctest.h>

#include <hcbdd/frontend.hpp>
#include <hcbdd/interned.hpp>
#include <hcbdd/oracle.hpp>

#include "support/oracles.hpp"

using namespace hcbdd;
using namespace hcbdd::interned;

TEST_CASE("a fresh manager holds only the leaves") {
  Manager m;
  CHECK(uid(m.leaf_true()) == kTrueUid);
  CHECK(uid(m.leaf_false()) == kFalseUid);
  CHECK(m.pool_size() == 2);
  CHECK(m.next_uid() == 3);
  CHECK(validate_manager(m).clean());
}

TEST_CASE("h_node collapses and shares") {
  Manager m;
  const Handle t = m.leaf_true();
  const Handle f = m.leaf_false();
  CHECK(m.h_node(Var(1), t, t) == t);
  const Handle a = m.h_node(Var(2), f, t);
  const Handle b = m.h_node(Var(2), f, t);
  CHECK(a == b);
  CHECK(m.pool_size() == 3);
  CHECK(m.stats().intern.hits >= 1);
  try {
    (void)m.h_node(Var(2), a, t);
    FAIL("expected OrderViolation");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::OrderViolation);
  }
}

TEST_CASE("handles from another or reset manager are rejected") {
  Manager m1;
  Manager m2;
  const Handle x = m1.var(Var(1));
  CHECK(m1.owns(x));
  CHECK_FALSE(m2.owns(x));
  try {
    (void)m2.bdd_not(x);
    FAIL("expected ForeignHandle");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ForeignHandle);
  }
  m1.reset();
  CHECK_FALSE(m1.owns(x));
  CHECK(m1.pool_size() == 2);
}

TEST_CASE("worked example f(x1, x2) = !x2") {
  Manager m;
  const Formula f = parse("(!x1 & !x2) | (x1 & !x2)");
  const Handle h = compile(f, m);
  const Shape &s = m.shape(h);
  REQUIRE(s.is_inner());
  CHECK(s.var == 2);
  CHECK(s.low == kTrueUid);
  CHECK(s.high == kFalseUid);
  CHECK(size(m, h) == 3);
}

TEST_CASE("rebuilding reproduces uids") {
  Manager m;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Formula f = random_formula(rng, {});
    const Handle h = compile(f, m);
    CHECK(compile(f, m) == h);
    CHECK(testing::rebuild(m, h) == h);
    CHECK(oracle::bdd_truth_table(m, h, 6) ==
          oracle::formula_truth_table(f, 6));
  }
  CHECK(validate_manager(m, {.semantic = true}).clean());
}

TEST_CASE("clearing caches keeps results") {
  Manager m;
  const Formula f = parse("(x1 ^ x3) & (x2 | !x4)");
  const Handle h = compile(f, m);
  m.clear_caches();
  CHECK(m.cache_entries() == 0);
  CHECK(compile(f, m) == h);
}

TEST_CASE("validator catches a duplicate pool entry") {
  Manager m;
  const Handle x = m.var(Var(1));
  ManagerBackdoor::append_raw(m, m.shape(x));
  CHECK(validate_manager(m).has(Invariant::PoolUniqueness));
}

TEST_CASE("validator catches a wrong negation entry") {
  Manager m;
  const Handle x = m.var(Var(1));
  ManagerBackdoor::set_not_cache(m, uid(x), uid(x));
  CHECK(validate_manager(m, {.semantic = true}).has(Invariant::MemoSemantics));
}

TEST_CASE("dot output for x1 ^ x2") {
  Manager m;
  const Handle h = compile(parse("x1 ^ x2"), m);
  const std::string dot = to_dot(m, h);
  std::size_t circles = 0;
  for (std::size_t p = 0; (p = dot.find("shape=circle", p)) != std::string::npos; ++p)
    ++circles;
  CHECK(circles == 3);
  CHECK(reachable(m, h).size() == 5);
}

TEST_CASE("negation misses at most once per inner node") {
  Manager m;
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const Handle h = compile(random_formula(rng, {}), m);
    m.clear_caches();
    const auto before = m.stats().memo_misses();
    (void)m.bdd_not(h);
    CHECK(m.stats().memo_misses() - before <= testing::inner_count(m, h));
  }
}
