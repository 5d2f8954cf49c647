/// @file  selftest.hpp
/// @brief Randomized cross-backend check against the truth-table oracle.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <hcbdd/core.hpp>

namespace hcbdd {

struct SelftestOptions {
  std::uint64_t seed = 1;
  unsigned cases = 500;
  unsigned max_vars = 6;
  unsigned max_depth = 8;
  /// Builds both backends without the low == high collapse. Mutation hook
  /// used to confirm that the selftest notices a broken build.
  bool disable_reduction = false;
};

struct SelftestCase {
  Formula f;
  Formula g;
};

/// The case list for a seed; identical seeds give identical lists.
std::vector<SelftestCase> selftest_cases(const SelftestOptions &options);

struct SelftestFailure {
  std::size_t case_index = 0;
  std::string check; ///< which property failed
  SelftestCase witness; ///< minimized where the failure reproduces
  bool minimized = false;
};

struct SelftestResult {
  std::size_t cases_run = 0;
  std::optional<SelftestFailure> failure;

  bool ok() const noexcept { return !failure; }
};

/// Compiles every case in both backends (one shared store and manager
/// across the run) and checks, per case: BDD tables equal formula tables,
/// equality of results iff tables agree, constant functions compile to
/// leaves, and both validators stay clean. Stops at the first failure and
/// shrinks it on fresh states.
SelftestResult run_selftest(const SelftestOptions &options);

/// The property check for a single case on fresh states; the failed check's
/// name, or nullopt.
std::optional<std::string> check_case(const SelftestCase &c,
                                      const SelftestOptions &options);

} // namespace hcbdd
