#include <hcbdd/frontend.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace hcbdd {

// --- parser ----------------------------------------------------------------

namespace {

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  Formula run() {
    skip();
    if (at_end())
      fail("expected a formula");
    Formula f = parse_or();
    skip();
    if (!at_end())
      fail(std::string("unexpected '") + src_[pos_] + "'");
    return f;
  }

private:
  bool at_end() const { return pos_ >= src_.size(); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (!at_end()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (!at_end() && src_[pos_] != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool accept(char c) {
    skip();
    if (!at_end() && src_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw SyntaxError(ErrorCode::SyntaxError, line_, col_, msg);
  }

  Formula parse_or() {
    Formula f = parse_xor();
    while (accept('|'))
      f = f | parse_xor();
    return f;
  }

  Formula parse_xor() {
    Formula f = parse_and();
    while (accept('^'))
      f = f ^ parse_and();
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept('&'))
      f = f & parse_unary();
    return f;
  }

  Formula parse_unary() {
    if (accept('!'))
      return !parse_unary();
    return parse_atom();
  }

  Formula parse_atom() {
    skip();
    if (at_end())
      fail("expected an operand");
    const char c = src_[pos_];
    if (c == '(') {
      advance();
      Formula f = parse_or();
      if (!accept(')'))
        fail("expected ')'");
      return f;
    }
    if (c == '0' || c == '1') {
      advance();
      return Formula::constant(c == '1');
    }
    if (c == 'x') {
      const std::size_t line = line_;
      const std::size_t col = col_;
      advance();
      std::uint64_t index = 0;
      std::size_t ndigits = 0;
      while (!at_end() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        index = index * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
        if (index > std::numeric_limits<std::uint32_t>::max())
          throw SyntaxError(ErrorCode::SyntaxError, line, col,
                            "variable index too large");
        advance();
        ++ndigits;
      }
      if (ndigits == 0)
        fail("expected a variable index after 'x'");
      if (index == 0)
        throw SyntaxError(ErrorCode::VarIndexZero, line, col,
                          "variable indices start at 1 (found x0)");
      return Formula::var(static_cast<std::uint32_t>(index));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

} // namespace

Formula parse(std::string_view source) { return Parser(source).run(); }

Formula parse_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

// --- printer ---------------------------------------------------------------

namespace {

int precedence(Formula::Kind k) {
  switch (k) {
  case Formula::Kind::Or:
    return 1;
  case Formula::Kind::Xor:
    return 2;
  case Formula::Kind::And:
    return 3;
  default:
    return 4;
  }
}

char symbol(Formula::Kind k) {
  switch (k) {
  case Formula::Kind::Or:
    return '|';
  case Formula::Kind::Xor:
    return '^';
  default:
    return '&';
  }
}

void print(const Formula &f, std::string &out) {
  switch (f.kind()) {
  case Formula::Kind::Const:
    out += f.value() ? '1' : '0';
    return;
  case Formula::Kind::Ref:
    out += 'x';
    out += std::to_string(f.var().index());
    return;
  case Formula::Kind::Not: {
    out += '!';
    const bool wrap = f.operand().is_binary();
    if (wrap)
      out += '(';
    print(f.operand(), out);
    if (wrap)
      out += ')';
    return;
  }
  default:
    break;
  }
  const int p = precedence(f.kind());
  // Left-associative: the left operand may share our precedence, the
  // right one must bind tighter.
  const bool wrap_l = precedence(f.lhs().kind()) < p;
  const bool wrap_r = precedence(f.rhs().kind()) <= p;
  if (wrap_l)
    out += '(';
  print(f.lhs(), out);
  if (wrap_l)
    out += ')';
  out += ' ';
  out += symbol(f.kind());
  out += ' ';
  if (wrap_r)
    out += '(';
  print(f.rhs(), out);
  if (wrap_r)
    out += ')';
}

} // namespace

std::string to_source(const Formula &f) {
  std::string out;
  print(f, out);
  return out;
}

// --- compilation -----------------------------------------------------------

namespace {

pure::Result compile_pure(const Formula &f, pure::Store st, pure::Fuel fuel) {
  switch (f.kind()) {
  case Formula::Kind::Const:
    return {NodeRef::leaf(f.value()), std::move(st)};
  case Formula::Kind::Ref:
    return pure::mk_var(st, f.var());
  case Formula::Kind::Not: {
    auto [e, s1] = compile_pure(f.operand(), std::move(st), fuel);
    return pure::neg(s1, fuel, e);
  }
  default: {
    auto [a, s1] = compile_pure(f.lhs(), std::move(st), fuel);
    auto [b, s2] = compile_pure(f.rhs(), std::move(s1), fuel);
    return pure::apply_binop(s2, fuel, f.binop(), a, b);
  }
  }
}

interned::Handle compile_interned(const Formula &f, interned::Manager &m) {
  switch (f.kind()) {
  case Formula::Kind::Const:
    return m.leaf(f.value());
  case Formula::Kind::Ref:
    return m.var(f.var());
  case Formula::Kind::Not:
    return m.bdd_not(compile_interned(f.operand(), m));
  default: {
    const interned::Handle a = compile_interned(f.lhs(), m);
    const interned::Handle b = compile_interned(f.rhs(), m);
    return m.bdd_binop(f.binop(), a, b);
  }
  }
}

} // namespace

pure::Result compile(const Formula &f, const pure::Store &st,
                     std::optional<pure::Fuel> fuel) {
  const pure::Fuel budget =
      fuel ? *fuel
           : pure::Fuel{static_cast<std::uint64_t>(
                            std::max(st.max_var(), max_var(f))) +
                        1};
  return compile_pure(f, st, budget);
}

interned::Handle compile(const Formula &f, interned::Manager &m) {
  return compile_interned(f, m);
}

// --- generators ------------------------------------------------------------

std::uint32_t queens_var(unsigned n, unsigned row, unsigned col) {
  return row * n + col + 1;
}

Formula queens(unsigned n) {
  auto x = [n](unsigned r, unsigned c) {
    return Formula::var(queens_var(n, r, c));
  };
  std::vector<Formula> rows;
  for (unsigned r = 0; r < n; ++r) {
    std::vector<Formula> constraints;
    std::vector<Formula> some;
    for (unsigned c = 0; c < n; ++c)
      some.push_back(x(r, c));
    constraints.push_back(disjoin(std::move(some)));

    // A queen on (r, c) excludes every cell it attacks.
    for (unsigned c = 0; c < n; ++c) {
      std::vector<Formula> free;
      for (unsigned r2 = 0; r2 < n; ++r2) {
        for (unsigned c2 = 0; c2 < n; ++c2) {
          if (r2 == r && c2 == c)
            continue;
          const bool same_row = r2 == r;
          const bool same_col = c2 == c;
          const bool diagonal =
              (r2 > r ? r2 - r : r - r2) == (c2 > c ? c2 - c : c - c2);
          if (same_row || same_col || diagonal)
            free.push_back(!x(r2, c2));
        }
      }
      constraints.push_back((!x(r, c)) | conjoin(std::move(free)));
    }
    rows.push_back(conjoin(std::move(constraints)));
  }
  // Fold rows bottom-up so intermediate results stay close to the final
  // diagram.
  Formula f = Formula::constant(true);
  for (auto it = rows.rbegin(); it != rows.rend(); ++it)
    f = *it & f;
  return f;
}

std::uint32_t pigeon_var(unsigned holes, unsigned pigeon, unsigned hole) {
  return pigeon * holes + hole + 1;
}

Formula pigeonhole(unsigned holes) {
  const unsigned pigeons = holes + 1;
  auto p = [holes](unsigned i, unsigned j) {
    return Formula::var(pigeon_var(holes, i, j));
  };
  std::vector<Formula> parts;
  for (unsigned i = 0; i < pigeons; ++i) {
    std::vector<Formula> some;
    for (unsigned j = 0; j < holes; ++j)
      some.push_back(p(i, j));
    parts.push_back(disjoin(std::move(some)));
  }
  for (unsigned j = 0; j < holes; ++j)
    for (unsigned i = 0; i < pigeons; ++i)
      for (unsigned k = i + 1; k < pigeons; ++k)
        parts.push_back(!(p(i, j) & p(k, j)));
  return conjoin(std::move(parts));
}

namespace {

Formula random_at(std::mt19937_64 &rng, const RandomFormulaParams &p,
                  unsigned depth) {
  auto pick = [&rng](std::uint64_t n) { return rng() % n; };
  // Leaves get likelier as depth runs out; constants stay rare.
  const bool leaf = depth <= 1 || pick(p.max_depth + 1) >= depth + 1;
  if (leaf || p.max_vars == 0) {
    if (p.max_vars == 0 || pick(10) == 0)
      return Formula::constant(pick(2) == 1);
    return Formula::var(static_cast<std::uint32_t>(pick(p.max_vars) + 1));
  }
  switch (pick(7)) {
  case 0:
    return !random_at(rng, p, depth - 1);
  case 1:
  case 2:
    return random_at(rng, p, depth - 1) & random_at(rng, p, depth - 1);
  case 3:
  case 4:
    return random_at(rng, p, depth - 1) | random_at(rng, p, depth - 1);
  default:
    return random_at(rng, p, depth - 1) ^ random_at(rng, p, depth - 1);
  }
}

} // namespace

Formula random_formula(std::mt19937_64 &rng, const RandomFormulaParams &p) {
  return random_at(rng, p, std::max(1U, p.max_depth));
}

} // namespace hcbdd
