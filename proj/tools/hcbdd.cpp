// hcbdd: command-line front end for the BDD library.
//
// Exit codes: 0 positive verdict / success, 1 negative verdict / failed
// selftest / dirty store, 2 usage, parse or backend errors.

#include <CLI11.hpp>

#include <hcbdd/bench.hpp>
#include <hcbdd/frontend.hpp>
#include <hcbdd/interned.hpp>
#include <hcbdd/oracle.hpp>
#include <hcbdd/pure.hpp>
#include <hcbdd/selftest.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace hcbdd;

namespace {

constexpr int kExitError = 2;

enum class BackendFlag { Pure, Interned, Both };

std::vector<Backend> backends_of(BackendFlag flag) {
  switch (flag) {
  case BackendFlag::Pure:
    return {Backend::Pure};
  case BackendFlag::Interned:
    return {Backend::Interned};
  case BackendFlag::Both:
    break;
  }
  return {Backend::Pure, Backend::Interned};
}

const std::map<std::string, BackendFlag> kBackendNames{
    {"pure", BackendFlag::Pure},
    {"interned", BackendFlag::Interned},
    {"both", BackendFlag::Both}};

struct CommonFlags {
  BackendFlag backend = BackendFlag::Interned;
  std::optional<std::uint64_t> fuel;
  unsigned max_vars = 1U << 20;
};

std::optional<pure::Fuel> fuel_of(const CommonFlags &flags) {
  if (flags.fuel)
    return pure::Fuel{*flags.fuel};
  return std::nullopt;
}

void add_backend_flag(CLI::App *cmd, CommonFlags &flags) {
  cmd->add_option("--backend", flags.backend, "pure, interned or both")
      ->transform(CLI::CheckedTransformer(kBackendNames, CLI::ignore_case));
}

std::vector<Formula> load(const std::vector<std::string> &paths,
                          unsigned max_vars) {
  std::vector<Formula> out;
  for (const auto &p : paths) {
    Formula f = [&] {
      try {
        return parse_file(p);
      } catch (const SyntaxError &e) {
        throw std::runtime_error(p + ":" + e.what());
      }
    }();
    if (max_var(f) > max_vars)
      throw std::runtime_error(p + ": uses x" + std::to_string(max_var(f)) +
                               ", above --max-vars " +
                               std::to_string(max_vars));
    out.push_back(std::move(f));
  }
  return out;
}

int cmd_check(CheckKind kind, const std::vector<std::string> &files,
              const CommonFlags &flags) {
  const auto formulas = load(files, flags.max_vars);
  std::optional<Verdict> verdict;
  for (Backend b : backends_of(flags.backend)) {
    const RunReport r = run_check(kind, formulas, b, {flags.fuel});
    print_report(std::cout, r);
    if (verdict && *verdict != *r.verdict) {
      std::cerr << "error: backends disagree\n";
      return kExitError;
    }
    verdict = r.verdict;
  }
  return positive(*verdict) ? 0 : 1;
}

int cmd_dot(const std::string &file, const std::string &out_path,
            const CommonFlags &flags) {
  const Formula f = load({file}, flags.max_vars).front();
  std::string dot;
  if (flags.backend == BackendFlag::Pure) {
    auto [r, st] = compile(f, pure::empty_store(), fuel_of(flags));
    dot = pure::to_dot(st, r);
  } else {
    interned::Manager m;
    dot = interned::to_dot(m, compile(f, m));
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << dot;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out)
    throw std::runtime_error("cannot write " + out_path);
  out << dot;
  return 0;
}

struct BenchFlags {
  std::string family = "queens";
  unsigned min_size = 4;
  unsigned max_size = 7;
  std::optional<unsigned> limit;
};

int cmd_bench(const BenchFlags &bf, const CommonFlags &flags) {
  const Family family =
      bf.family == "queens" ? Family::Queens : Family::Pigeonhole;
  const unsigned limit =
      bf.limit.value_or(family == Family::Queens ? 8U : 7U);
  if (bf.min_size < 1 || bf.min_size > bf.max_size)
    throw std::runtime_error("empty size range");
  if (bf.max_size > limit) {
    std::cerr << "error: size " << bf.max_size << " exceeds the " << limit
              << " limit for " << bf.family << " (raise with --limit)\n";
    return kExitError;
  }
  std::cout << kBenchHeader << '\n';
  for (unsigned n = bf.min_size; n <= bf.max_size; ++n) {
    std::map<Backend, BenchRow> rows;
    for (Backend b : backends_of(flags.backend)) {
      rows.emplace(b, run_bench_case(family, n, b));
      write_bench_row(std::cout, rows.at(b));
      std::cout.flush();
    }
    if (rows.size() == 2) {
      const auto &p = rows.at(Backend::Pure);
      const auto &i = rows.at(Backend::Interned);
      std::cout << "# ratio " << bf.family << ',' << n << ",pure/interned="
                << std::fixed << std::setprecision(2)
                << (i.wall_ms > 0 ? p.wall_ms / i.wall_ms : 0.0)
                << ",memo_misses=" << p.counters.memo_misses() << '/'
                << i.counters.memo_misses() << '\n';
      std::cout.unsetf(std::ios::floatfield);
    }
  }
  return 0;
}

struct SelftestFlags {
  SelftestOptions options;
  bool list = false;
};

int cmd_selftest(const SelftestFlags &sf) {
  if (sf.list) {
    for (const auto &c : selftest_cases(sf.options))
      std::cout << to_source(c.f) << " ; " << to_source(c.g) << '\n';
    return 0;
  }
  const SelftestResult r = run_selftest(sf.options);
  if (r.ok()) {
    std::cout << "selftest passed: " << r.cases_run << " cases, seed "
              << sf.options.seed << '\n';
    return 0;
  }
  const auto &f = *r.failure;
  std::cout << "selftest FAILED at case " << f.case_index << ": " << f.check
            << '\n'
            << (f.minimized ? "minimized " : "") << "counterexample:\n"
            << "  f = " << to_source(f.witness.f) << '\n'
            << "  g = " << to_source(f.witness.g) << '\n';
  return 1;
}

int cmd_validate_store(const std::string &file, bool semantic) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + file);
  std::ostringstream buf;
  buf << in.rdbuf();
  const pure::Store st = pure::parse_store(buf.str());
  const ValidationReport report =
      pure::validate_store(st, {.semantic = semantic});
  std::cout << report.to_string();
  return report.clean() ? 0 : 1;
}

int cmd_dump_store(const std::string &file, const CommonFlags &flags) {
  const Formula f = load({file}, flags.max_vars).front();
  auto [r, st] = compile(f, pure::empty_store(), fuel_of(flags));
  std::cout << "# root " << to_string(r) << '\n' << pure::serialize(st);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"hcbdd: hash-consed reduced ordered BDDs"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::vector<std::string> files;
  std::string dot_out;
  BenchFlags bench;
  SelftestFlags selftest;
  bool semantic = false;
  int rc = 0;

  auto check_cmd = [&](const char *name, const char *help, CheckKind kind,
                       int nfiles) {
    auto *cmd = app.add_subcommand(name, help);
    cmd->add_option("files", files, "formula file(s)")
        ->required()
        ->expected(nfiles);
    add_backend_flag(cmd, flags);
    cmd->add_option("--fuel", flags.fuel, "recursion budget (pure backend)");
    cmd->add_option("--max-vars", flags.max_vars,
                    "reject formulas above this variable index");
    cmd->callback([&, kind] { rc = cmd_check(kind, files, flags); });
  };
  check_cmd("taut", "exit 0 iff the formula is a tautology", CheckKind::Taut,
            1);
  check_cmd("sat", "exit 0 iff the formula is satisfiable", CheckKind::Sat,
            1);
  check_cmd("equiv", "exit 0 iff the two formulas are equivalent",
            CheckKind::Equiv, 2);

  auto *dot = app.add_subcommand("dot", "Graphviz rendering of a formula");
  dot->add_option("file", files, "formula file")->required()->expected(1);
  dot->add_option("--dot-out", dot_out, "output path (default stdout)");
  add_backend_flag(dot, flags);
  dot->add_option("--fuel", flags.fuel, "recursion budget (pure backend)");
  dot->add_option("--max-vars", flags.max_vars);
  dot->callback([&] { rc = cmd_dot(files.front(), dot_out, flags); });

  auto *bench_cmd = app.add_subcommand(
      "bench", "compare the backends on queens or pigeonhole instances");
  bench_cmd->add_option("--family", bench.family)
      ->check(CLI::IsMember({"queens", "pigeonhole"}));
  bench_cmd->add_option("--min-size", bench.min_size);
  bench_cmd->add_option("--max-size", bench.max_size);
  bench_cmd->add_option("--limit", bench.limit,
                        "largest allowed size (default 8 queens, 7 "
                        "pigeonhole)");
  bench_cmd->add_option("--backend", flags.backend, "pure, interned or both")
      ->transform(CLI::CheckedTransformer(kBackendNames, CLI::ignore_case))
      ->default_str("both");
  bench_cmd->preparse_callback([&](std::size_t) {
    flags.backend = BackendFlag::Both;
  });
  bench_cmd->callback([&] { rc = cmd_bench(bench, flags); });

  auto *self = app.add_subcommand(
      "selftest", "randomized cross-backend check against truth tables");
  self->add_option("--seed", selftest.options.seed);
  self->add_option("--cases", selftest.options.cases);
  self->add_option("--max-vars", selftest.options.max_vars);
  self->add_option("--max-depth", selftest.options.max_depth);
  self->add_flag("--list-cases", selftest.list,
                 "print the case list and exit");
  self->add_flag("--mutate-no-reduce", selftest.options.disable_reduction,
                 "disable node reduction (mutation check)");
  self->callback([&] { rc = cmd_selftest(selftest); });

  auto *vstore = app.add_subcommand(
      "validate-store", "check the invariants of a serialized store");
  vstore->add_option("file", files, "store file")->required()->expected(1);
  vstore->add_flag("--semantic", semantic, "also check memo semantics");
  vstore->callback([&] { rc = cmd_validate_store(files.front(), semantic); });

  auto *dump = app.add_subcommand(
      "dump-store", "compile with the pure backend and print the store");
  dump->add_option("file", files, "formula file")->required()->expected(1);
  dump->add_option("--fuel", flags.fuel);
  dump->add_option("--max-vars", flags.max_vars);
  dump->callback([&] { rc = cmd_dump_store(files.front(), flags); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return rc;
}
