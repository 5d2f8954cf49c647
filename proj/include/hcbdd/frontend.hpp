/// @file  frontend.hpp
/// @brief Formula text format, compilation into either backend, and
///        formula generators for tests and benchmarks.
///
/// Grammar (whitespace-insensitive, `#` starts a comment to end of line):
///
///     formula := xor ( '|' xor )*
///     xor     := and ( '^' and )*
///     and     := unary ( '&' unary )*
///     unary   := '!' unary | atom
///     atom    := 'x' N | '0' | '1' | '(' formula ')'      N >= 1
///
/// Precedence is ! > & > ^ > |, and every binary operator associates to
/// the left. A formula file holds exactly one formula.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include <hcbdd/core.hpp>
#include <hcbdd/interned.hpp>
#include <hcbdd/pure.hpp>

namespace hcbdd {

/// Throws SyntaxError (code SyntaxError or VarIndexZero) with the 1-based
/// line and column of the offending token.
Formula parse(std::string_view source);

/// Reads and parses a UTF-8 formula file.
Formula parse_file(const std::string &path);

/// Renders f in the grammar above, parenthesized so that
/// parse(to_source(f)) is syntactically identical to f.
std::string to_source(const Formula &f);

/// Bottom-up compilation: constants become leaves, x_i becomes (F, i, T),
/// connectives go through the store's operations. Uses
/// `max(st.max_var(), max_var(f)) + 1` as fuel when none is given.
pure::Result compile(const Formula &f, const pure::Store &st,
                     std::optional<pure::Fuel> fuel = std::nullopt);

interned::Handle compile(const Formula &f, interned::Manager &m);

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Variable of cell (row, col) on an n x n board: row * n + col + 1.
std::uint32_t queens_var(unsigned n, unsigned row, unsigned col);

/// N-queens: at least one queen per row and no two queens attacking.
/// Models correspond one-to-one with solutions of the puzzle.
Formula queens(unsigned n);

/// Variable of "pigeon p sits in hole h" with `holes` holes.
std::uint32_t pigeon_var(unsigned holes, unsigned pigeon, unsigned hole);

/// holes + 1 pigeons into `holes` holes, every pigeon placed, no hole
/// shared. Unsatisfiable for every holes >= 1.
Formula pigeonhole(unsigned holes);

struct RandomFormulaParams {
  unsigned max_vars = 6;
  unsigned max_depth = 8;
};

/// Random formula over x1..x{max_vars} of depth at most max_depth. Draws
/// only with modulo reduction on raw engine output, so a seed produces the
/// same formula on every platform.
Formula random_formula(std::mt19937_64 &rng, const RandomFormulaParams &p);

} // namespace hcbdd
