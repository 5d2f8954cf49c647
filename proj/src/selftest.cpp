#include <hcbdd/selftest.hpp>

#include <hcbdd/frontend.hpp>
#include <hcbdd/interned.hpp>
#include <hcbdd/oracle.hpp>
#include <hcbdd/pure.hpp>

#include <algorithm>
#include <functional>
#include <random>

namespace hcbdd {

std::vector<SelftestCase> selftest_cases(const SelftestOptions &options) {
  std::mt19937_64 rng(options.seed);
  const RandomFormulaParams params{options.max_vars, options.max_depth};
  std::vector<SelftestCase> out;
  out.reserve(options.cases);
  for (unsigned i = 0; i < options.cases; ++i) {
    Formula f = random_formula(rng, params);
    Formula g = random_formula(rng, params);
    out.push_back({std::move(f), std::move(g)});
  }
  return out;
}

namespace {

bool constant_table(const oracle::TruthTable &t, bool value) {
  for (std::size_t k = 0; k < t.entries(); ++k)
    if (t[k] != value)
      return false;
  return true;
}

/// Runs one case against the given states; returns the failed check.
std::optional<std::string> check_with(const SelftestCase &c, unsigned n,
                                      pure::Store &st, interned::Manager &m) {
  const auto tf = oracle::formula_truth_table(c.f, n);
  const auto tg = oracle::formula_truth_table(c.g, n);
  const bool same = oracle::tables_equal(tf, tg);

  auto [pf, s1] = compile(c.f, st);
  auto [pg, s2] = compile(c.g, s1);
  st = std::move(s2);
  const interned::Handle hf = compile(c.f, m);
  const interned::Handle hg = compile(c.g, m);

  if (oracle::bdd_truth_table(st, pf, n) != tf ||
      oracle::bdd_truth_table(st, pg, n) != tg)
    return "pure truth table";
  if (oracle::bdd_truth_table(m, hf, n) != tf ||
      oracle::bdd_truth_table(m, hg, n) != tg)
    return "interned truth table";
  if (pure::eq(pf, pg) != same)
    return "pure canonicity";
  if (interned::structural_eq(hf, hg) != same)
    return "interned canonicity";
  for (bool v : {false, true}) {
    if (constant_table(tf, v) && pf != NodeRef::leaf(v))
      return "pure constant";
    if (constant_table(tf, v) && hf != m.leaf(v))
      return "interned constant";
  }
  if (!pure::validate_store(st).clean())
    return "pure validator";
  if (!interned::validate_manager(m).clean())
    return "interned validator";
  return std::nullopt;
}

std::vector<Formula> children(const Formula &f) {
  switch (f.kind()) {
  case Formula::Kind::Not:
    return {f.operand()};
  case Formula::Kind::And:
  case Formula::Kind::Or:
  case Formula::Kind::Xor:
    return {f.lhs(), f.rhs()};
  default:
    return {};
  }
}

Formula rebuild(const Formula &f, const std::vector<Formula> &kids) {
  if (f.kind() == Formula::Kind::Not)
    return !kids[0];
  return Formula::binary(f.binop(), kids[0], kids[1]);
}

/// Strictly smaller variants of f: constants, direct children, and f with
/// one child replaced by one of that child's variants.
std::vector<Formula> shrink_candidates(const Formula &f) {
  std::vector<Formula> out;
  if (f.kind() != Formula::Kind::Const) {
    out.push_back(Formula::constant(false));
    out.push_back(Formula::constant(true));
  }
  const auto kids = children(f);
  for (const auto &k : kids)
    out.push_back(k);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    for (const auto &smaller : shrink_candidates(kids[i])) {
      auto replaced = kids;
      replaced[i] = smaller;
      out.push_back(rebuild(f, replaced));
    }
  }
  return out;
}

Formula shrink(Formula f, const std::function<bool(const Formula &)> &fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto &cand : shrink_candidates(f)) {
      if (node_count(cand) < node_count(f) && fails(cand)) {
        f = cand;
        progress = true;
        break;
      }
    }
  }
  return f;
}

} // namespace

std::optional<std::string> check_case(const SelftestCase &c,
                                      const SelftestOptions &options) {
  const unsigned n =
      std::max({options.max_vars, max_var(c.f), max_var(c.g)});
  pure::Store st = pure::empty_store({.reduce = !options.disable_reduction});
  interned::Manager m({.reduce = !options.disable_reduction});
  return check_with(c, n, st, m);
}

SelftestResult run_selftest(const SelftestOptions &options) {
  SelftestResult result;
  const auto cases = selftest_cases(options);
  pure::Store st = pure::empty_store({.reduce = !options.disable_reduction});
  interned::Manager m({.reduce = !options.disable_reduction});

  for (std::size_t i = 0; i < cases.size(); ++i) {
    const SelftestCase &c = cases[i];
    const unsigned n =
        std::max({options.max_vars, max_var(c.f), max_var(c.g)});
    auto failed = check_with(c, n, st, m);
    ++result.cases_run;
    if (!failed)
      continue;

    SelftestFailure failure{i, *failed, c, false};
    if (check_case(c, options)) {
      SelftestCase w = c;
      w.f = shrink(w.f, [&](const Formula &cand) {
        return check_case({cand, w.g}, options).has_value();
      });
      w.g = shrink(w.g, [&](const Formula &cand) {
        return check_case({w.f, cand}, options).has_value();
      });
      failure.witness = w;
      failure.check = check_case(w, options).value_or(*failed);
      failure.minimized = true;
    }
    result.failure = std::move(failure);
    return result;
  }

  // Final deep validation, memo semantics included.
  const SelftestCase none{Formula::constant(true), Formula::constant(true)};
  if (!pure::validate_store(st, {.semantic = true}).clean())
    result.failure =
        SelftestFailure{cases.size(), "pure memo semantics", none, false};
  else if (!interned::validate_manager(m, {.semantic = true}).clean())
    result.failure =
        SelftestFailure{cases.size(), "interned memo semantics", none, false};
  return result;
}

} // namespace hcbdd
