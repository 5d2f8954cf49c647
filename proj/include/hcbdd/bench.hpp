/// @file  bench.hpp
/// @brief Model counting, check verdicts and the backend benchmark behind
///        the command-line tool.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <hcbdd/core.hpp>
#include <hcbdd/interned.hpp>
#include <hcbdd/pure.hpp>

namespace hcbdd {

/// Wide enough for 2^64 models.
__extension__ using ModelCount = unsigned __int128;

std::string to_string(ModelCount c);

/// Satisfying assignments over x1..x{nvars}; every node variable must be
/// at most nvars (throws VarOutOfRange otherwise). Levels skipped between
/// a node and its child double the count once per skipped variable.
ModelCount count_models(const pure::Store &st, NodeRef e, unsigned nvars);
ModelCount count_models(const interned::Manager &m, interned::Handle h,
                        unsigned nvars);

enum class Backend { Pure, Interned };

std::string_view to_string(Backend b);

enum class Verdict { Taut, NotTaut, Sat, Unsat, Equiv, NotEquiv };

std::string_view to_string(Verdict v);
/// Taut, Sat and Equiv are the positive verdicts (exit code 0).
bool positive(Verdict v);

enum class CheckKind { Taut, Sat, Equiv };

/// One command run on one backend.
struct RunReport {
  std::string command;
  Backend backend = Backend::Interned;
  std::optional<Verdict> verdict;
  std::size_t result_nodes = 0; ///< size() of the (first) result
  std::size_t pool_nodes = 0;   ///< inner nodes allocated in the state
  Counters counters;
  double wall_ms = 0;
};

void print_report(std::ostream &os, const RunReport &r);

struct CheckOptions {
  std::optional<std::uint64_t> fuel; ///< pure backend only
};

/// taut: f compiles to T. sat: f does not compile to F. equiv: both
/// formulas compile to the same reference (needs exactly two formulas).
RunReport run_check(CheckKind kind, const std::vector<Formula> &formulas,
                    Backend backend, const CheckOptions &options = {});

enum class Family { Queens, Pigeonhole };

std::string_view to_string(Family f);

struct BenchRow {
  Family family = Family::Queens;
  unsigned size = 0;
  Backend backend = Backend::Interned;
  unsigned vars = 0;
  ModelCount models = 0;
  std::size_t result_nodes = 0;
  std::size_t peak_nodes = 0; ///< inner nodes allocated (no GC, so peak)
  Counters counters;
  double wall_ms = 0;
};

/// Comma-separated header matching write_bench_row.
inline constexpr const char *kBenchHeader =
    "family,size,backend,vars,models,result_nodes,peak_nodes,intern_hits,"
    "intern_misses,memo_hits,memo_misses,wall_ms";

void write_bench_row(std::ostream &os, const BenchRow &row);

Formula bench_formula(Family family, unsigned size);
unsigned bench_vars(Family family, unsigned size);

/// Compiles one instance on one backend and collects its statistics.
BenchRow run_bench_case(Family family, unsigned size, Backend backend);

} // namespace hcbdd
