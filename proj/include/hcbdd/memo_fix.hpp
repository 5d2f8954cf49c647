/// @file  memo_fix.hpp
/// @brief Memoizing fixpoint combinator.
///
/// `MemoFix` turns a recursive definition `body(key, rec)` into one that
/// tabulates its results: each key reaching the table is computed once, and
/// later requests are answered from the table. Keys answered by `trivial`
/// never touch the table or the counters.

#pragma once

#include <optional>
#include <utility>

#include <hcbdd/core.hpp>

namespace hcbdd {

template <class Table, class Trivial, class Body> class MemoFix {
public:
  using Key = typename Table::key_type;
  using Value = typename Table::mapped_type;

  MemoFix(Table &table, HitMiss &counter, Trivial trivial, Body body)
      : table_(table), counter_(counter), trivial_(std::move(trivial)),
        body_(std::move(body)) {}

  Value operator()(const Key &key) {
    if (std::optional<Value> v = trivial_(key))
      return *v;
    if (auto it = table_.find(key); it != table_.end()) {
      ++counter_.hits;
      return it->second;
    }
    ++counter_.misses;
    Value v = body_(key, *this);
    table_.emplace(key, v);
    return v;
  }

private:
  Table &table_;
  HitMiss &counter_;
  Trivial trivial_;
  Body body_;
};

template <class Table, class Trivial, class Body>
MemoFix(Table &, HitMiss &, Trivial, Body) -> MemoFix<Table, Trivial, Body>;

} // namespace hcbdd
