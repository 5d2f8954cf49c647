/// @file  persistent_map.hpp
/// @brief Immutable ordered map with structural sharing (path-copying treap).
///
/// Every update returns a new map; the old one stays valid and unchanged.
/// Node priorities are derived from the key hash, so the tree shape depends
/// only on the key set and is reproducible across runs.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>

#include <hcbdd/core.hpp>

namespace hcbdd {

template <class Key, class Value, class Hash = std::hash<Key>,
          class Compare = std::less<Key>>
class PersistentMap {
  struct Tree;
  using Ptr = std::shared_ptr<const Tree>;

  struct Tree {
    Key key;
    Value value;
    std::uint64_t priority;
    Ptr left;
    Ptr right;
  };

public:
  PersistentMap() = default;

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Pointer into the map's storage, or nullptr. Valid while any map
  /// sharing the entry is alive.
  const Value *find(const Key &key) const {
    const Tree *t = root_.get();
    Compare less;
    while (t) {
      if (less(key, t->key))
        t = t->left.get();
      else if (less(t->key, key))
        t = t->right.get();
      else
        return &t->value;
    }
    return nullptr;
  }

  bool contains(const Key &key) const { return find(key) != nullptr; }

  /// Insert, or overwrite the value of an existing key.
  [[nodiscard]] PersistentMap insert(const Key &key, const Value &value) const {
    bool added = false;
    const std::uint64_t prio = mix64(static_cast<std::uint64_t>(Hash{}(key)));
    PersistentMap out;
    out.root_ = insert(root_, key, value, prio, added);
    out.size_ = size_ + (added ? 1 : 0);
    return out;
  }

  /// In-order traversal: f(key, value).
  template <class F> void for_each(F &&f) const { walk(root_.get(), f); }

  /// Longest root-to-leaf path; exposed for balance tests.
  std::size_t height() const { return height(root_.get()); }

private:
  static Ptr make(const Key &k, const Value &v, std::uint64_t prio, Ptr l,
                  Ptr r) {
    return std::make_shared<const Tree>(
        Tree{k, v, prio, std::move(l), std::move(r)});
  }

  static Ptr insert(const Ptr &t, const Key &k, const Value &v,
                    std::uint64_t prio, bool &added) {
    if (!t) {
      added = true;
      return make(k, v, prio, nullptr, nullptr);
    }
    Compare less;
    if (less(k, t->key)) {
      Ptr l = insert(t->left, k, v, prio, added);
      if (l->priority > t->priority) // rotate right
        return make(l->key, l->value, l->priority, l->left,
                    make(t->key, t->value, t->priority, l->right, t->right));
      return make(t->key, t->value, t->priority, std::move(l), t->right);
    }
    if (less(t->key, k)) {
      Ptr r = insert(t->right, k, v, prio, added);
      if (r->priority > t->priority) // rotate left
        return make(r->key, r->value, r->priority,
                    make(t->key, t->value, t->priority, t->left, r->left),
                    r->right);
      return make(t->key, t->value, t->priority, t->left, std::move(r));
    }
    return make(k, v, t->priority, t->left, t->right);
  }

  template <class F> static void walk(const Tree *t, F &f) {
    while (t) {
      walk(t->left.get(), f);
      f(t->key, t->value);
      t = t->right.get();
    }
  }

  static std::size_t height(const Tree *t) {
    if (!t)
      return 0;
    return 1 + std::max(height(t->left.get()), height(t->right.get()));
  }

  Ptr root_;
  std::size_t size_ = 0;
};

} // namespace hcbdd
