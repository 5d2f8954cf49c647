#include <doctest.h>

#include <hcbdd/frontend.hpp>
#include <hcbdd/selftest.hpp>

using namespace hcbdd;

TEST_CASE("a fixed seed reproduces the case list") {
  const SelftestOptions opts{.seed = 42, .cases = 50};
  const auto a = selftest_cases(opts);
  const auto b = selftest_cases(opts);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(same_syntax(a[i].f, b[i].f));
    CHECK(same_syntax(a[i].g, b[i].g));
  }
  const auto c = selftest_cases({.seed = 43, .cases = 50});
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    differs = differs || !same_syntax(a[i].f, c[i].f);
  CHECK(differs);
}

TEST_CASE("selftest passes on the real implementation") {
  const auto r = run_selftest({.seed = 7, .cases = 100});
  CHECK(r.ok());
  CHECK(r.cases_run == 100);
}

TEST_CASE("disabling reduction is caught with a small witness") {
  const auto r = run_selftest({.seed = 7, .cases = 100, .disable_reduction = true});
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure->minimized);
  CHECK(check_case(r.failure->witness, {.disable_reduction = true}).has_value());
  CHECK(node_count(r.failure->witness.f) + node_count(r.failure->witness.g) <= 8);
}
