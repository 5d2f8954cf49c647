#include <doctest.h>

#include <hcbdd/frontend.hpp>
#include <hcbdd/oracle.hpp>
#include <hcbdd/pure.hpp>

#include "support/oracles.hpp"

using namespace hcbdd;
using namespace hcbdd::pure;

namespace {

const NodeRef T = NodeRef::leaf_true();
const NodeRef F = NodeRef::leaf_false();

// {1 -> (F, x1, N2), 2 -> (F, x2, N3), 3 -> (F, x3, T)}: x1 & x2 & x3.
Store chain_store() {
  Store st = empty_store();
  auto [n3, s3] = mk_node(st, F, Var(3), T);
  auto [n2, s2] = mk_node(s3, F, Var(2), n3);
  auto [n1, s1] = mk_node(s2, F, Var(1), n2);
  return s1;
}

} // namespace

TEST_CASE("empty store") {
  const Store st = empty_store();
  CHECK(st.next() == 1);
  CHECK(st.node_count() == 0);
  CHECK(validate_store(st).clean());
  CHECK(size(st, T) == 1);
}

TEST_CASE("mk_node collapses, reuses and allocates") {
  const Store st = empty_store();
  auto [same, s0] = mk_node(st, T, Var(1), T);
  CHECK(same == T);
  CHECK(s0.next() == 1);

  auto [a, s1] = mk_node(st, F, Var(1), T);
  CHECK(a == NodeRef::inner(1));
  CHECK(s1.next() == 2);
  auto [b, s2] = mk_node(s1, F, Var(1), T);
  CHECK(b == a);
  CHECK(s2.next() == 2);
  CHECK(s2.counters().intern.hits == 1);

  CHECK_THROWS_AS(mk_node(s2, NodeRef::inner(9), Var(2), T), Error);
  // x1 above x1 breaks the order.
  try {
    (void)mk_node(s2, a, Var(1), T);
    FAIL("expected OrderViolation");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::OrderViolation);
  }
}

TEST_CASE("chain store denotes x1 & x2 & x3") {
  const Store st = chain_store();
  const NodeRef root = NodeRef::inner(3);
  CHECK(st.node(3)->var == Var(1));
  CHECK(size(st, root) == 5);
  CHECK(denote(st, root, Assignment::from_bits(0b111, 3)));
  CHECK_FALSE(denote(st, root, Assignment::from_bits(0b011, 3)));
  CHECK_FALSE(denote(st, root, Assignment::from_bits(0b110, 3)));
  CHECK_THROWS_AS(denote(st, NodeRef::inner(42), Assignment::from_bits(0, 3)),
                  Error);
  CHECK(validate_store(st, {.semantic = true}).clean());
}

TEST_CASE("leaf short-circuits skip the memo") {
  Store st = chain_store();
  const NodeRef x = NodeRef::inner(3);
  const Fuel fuel = default_fuel(st);
  CHECK(apply_binop(st, fuel, BinOp::And, F, x).ref == F);
  CHECK(apply_binop(st, fuel, BinOp::And, T, x).ref == x);
  CHECK(apply_binop(st, fuel, BinOp::And, x, x).ref == x);
  CHECK(apply_binop(st, fuel, BinOp::Or, x, T).ref == T);
  CHECK(apply_binop(st, fuel, BinOp::Or, F, x).ref == x);
  CHECK(apply_binop(st, fuel, BinOp::Xor, x, x).ref == F);
  CHECK(apply_binop(st, fuel, BinOp::Xor, x, F).ref == x);
  CHECK(st.memo().entries() == 0);
  CHECK(st.counters().memo_misses() == 0);

  auto [nx, s1] = apply_binop(st, fuel, BinOp::Xor, T, x);
  auto [nn, s2] = neg(st, fuel, x);
  CHECK(nx == nn);
}

TEST_CASE("fuel runs out and is sufficient by default") {
  const Formula f = parse("(x1 & x2) ^ (x3 | x4)");
  CHECK_NOTHROW(compile(f, empty_store()));
  try {
    (void)compile(f, empty_store(), Fuel{1});
    FAIL("expected OutOfFuel");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::OutOfFuel);
  }
}

TEST_CASE("operations keep old stores valid") {
  const Store st = chain_store();
  const std::string before = serialize(st);
  auto [r, st2] = compile(parse("x1 ^ x4"), st);
  CHECK(serialize(st) == before);
  CHECK(check_monotonic(st, st2).clean());
  CHECK(validate_store(st2, {.semantic = true}).clean());
}

TEST_CASE("validator catches a non-reduced node") {
  Store st = empty_store();
  const Node bad{T, Var(1), T};
  st = StoreBackdoor::bind_graph(st, 1, bad);
  st = StoreBackdoor::bind_hmap(st, bad, 1);
  st = StoreBackdoor::set_next(st, 2);
  const auto r = validate_store(st);
  CHECK(r.has(Invariant::Reduction));
}

TEST_CASE("validator catches a broken left inverse") {
  Store st = chain_store();
  st = StoreBackdoor::bind_hmap(st, Node{F, Var(3), T}, 2);
  const auto r = validate_store(st);
  CHECK(r.has(Invariant::LeftInverse));
}

TEST_CASE("validator catches dangling and misordered entries") {
  Store st = chain_store();
  const Node dangling{F, Var(4), NodeRef::inner(17)};
  st = StoreBackdoor::bind_graph(st, 4, dangling);
  st = StoreBackdoor::bind_hmap(st, dangling, 4);
  st = StoreBackdoor::set_next(st, 5);
  CHECK(validate_store(st).has(Invariant::Validity));

  Store st2 = chain_store();
  const Node upside{F, Var(2), NodeRef::inner(3)}; // child tests x1
  st2 = StoreBackdoor::bind_graph(st2, 4, upside);
  st2 = StoreBackdoor::bind_hmap(st2, upside, 4);
  st2 = StoreBackdoor::set_next(st2, 5);
  CHECK(validate_store(st2).has(Invariant::Ordering));
}

TEST_CASE("validator catches a wrong memo entry") {
  auto [x, st] = compile(parse("x1 & x2"), empty_store());
  auto [y, st2] = compile(parse("x1 | x3"), st);
  // Claim x1&x2 AND x1|x3 is x1|x3.
  Store bad = StoreBackdoor::bind_memo(st2, BinOp::And, {x.id(), y.id()}, y);
  CHECK(validate_store(bad).clean());
  CHECK(validate_store(bad, {.semantic = true}).has(Invariant::MemoSemantics));
  Store dangling =
      StoreBackdoor::bind_memo(st2, BinOp::And, {x.id(), 99}, y);
  CHECK(validate_store(dangling).has(Invariant::MemoDomain));
}

TEST_CASE("dot output names leaves T and F") {
  auto [r, st] = compile(parse("x1 ^ x2"), empty_store());
  const std::string dot = to_dot(st, r);
  std::size_t circles = 0;
  std::size_t boxes = 0;
  for (std::size_t p = 0; (p = dot.find("shape=circle", p)) != std::string::npos; ++p)
    ++circles;
  for (std::size_t p = 0; (p = dot.find("shape=box", p)) != std::string::npos; ++p)
    ++boxes;
  CHECK(circles == 3);
  CHECK(boxes == 2);
  CHECK(dot.find("T [") != std::string::npos);
}

TEST_CASE("serialize round-trips and parse rejects junk") {
  auto [r, st] = compile(parse("(x1 | x2) & !x3"), empty_store());
  const Store back = parse_store(serialize(st));
  CHECK(serialize(back) == serialize(st.without_memo()));
  CHECK(validate_store(back).clean());
  CHECK(denote(back, r, Assignment::from_bits(0b001, 3)));

  auto code_of = [](std::string_view text) {
    try {
      (void)parse_store(text);
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::InvalidVar;
  };
  CHECK(code_of("nope") == ErrorCode::StoreFormat);
  CHECK(code_of("hcbdd-store 1\nnext 3\n1 F 1 T\n1 F 2 T\n") ==
        ErrorCode::StoreFormat);
  CHECK(code_of("hcbdd-store 1\nnext 2\n1 F 1\n") == ErrorCode::StoreFormat);
}

TEST_CASE("pure results match the truth-table oracle") {
  std::mt19937_64 rng(11);
  Store st = empty_store();
  for (int i = 0; i < 300; ++i) {
    const Formula f = random_formula(rng, {});
    auto [r, next] = compile(f, st);
    st = std::move(next);
    CHECK(oracle::bdd_truth_table(st, r, 6) ==
          oracle::formula_truth_table(f, 6));
  }
  CHECK(validate_store(st, {.semantic = true}).clean());
  const auto tables = testing::node_tables(st);
  CHECK(tables.size() == st.node_count());
}
