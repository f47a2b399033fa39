// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ptapat {

enum class BoolKind { True, False, Atom, Not, And, Or };

/// Immutable Boolean formula over atoms of type A. Nodes are shared, so
/// copies are cheap.
template <typename A>
class BoolExpr {
 public:
  BoolExpr() : node_(make(BoolKind::True, A{}, {})) {}

  static BoolExpr truth(bool value) { return BoolExpr(make(value ? BoolKind::True : BoolKind::False, A{}, {})); }
  static BoolExpr atom(A a) { return BoolExpr(make(BoolKind::Atom, std::move(a), {})); }
  static BoolExpr negate(BoolExpr e) { return BoolExpr(make(BoolKind::Not, A{}, {std::move(e)})); }
  static BoolExpr conj(BoolExpr a, BoolExpr b) { return BoolExpr(make(BoolKind::And, A{}, {std::move(a), std::move(b)})); }
  static BoolExpr disj(BoolExpr a, BoolExpr b) { return BoolExpr(make(BoolKind::Or, A{}, {std::move(a), std::move(b)})); }

  BoolKind kind() const { return node_->kind; }
  const A& atom_value() const { return node_->atom; }
  const BoolExpr& child(std::size_t i) const { return node_->children.at(i); }
  std::size_t arity() const { return node_->children.size(); }

  template <typename F>
  bool evaluate(F&& atom_fn) const {
    switch (node_->kind) {
      case BoolKind::True: return true;
      case BoolKind::False: return false;
      case BoolKind::Atom: return atom_fn(node_->atom);
      case BoolKind::Not: return !child(0).evaluate(atom_fn);
      case BoolKind::And: return child(0).evaluate(atom_fn) && child(1).evaluate(atom_fn);
      case BoolKind::Or: return child(0).evaluate(atom_fn) || child(1).evaluate(atom_fn);
    }
    throw std::logic_error("unreachable BoolKind");
  }

  /// Rebuilds the formula with every atom replaced by fn(atom), which must
  /// return a BoolExpr<B>.
  template <typename B, typename F>
  BoolExpr<B> map(F&& fn) const {
    switch (node_->kind) {
      case BoolKind::True: return BoolExpr<B>::truth(true);
      case BoolKind::False: return BoolExpr<B>::truth(false);
      case BoolKind::Atom: return fn(node_->atom);
      case BoolKind::Not: return BoolExpr<B>::negate(child(0).template map<B>(fn));
      case BoolKind::And: return BoolExpr<B>::conj(child(0).template map<B>(fn), child(1).template map<B>(fn));
      case BoolKind::Or: return BoolExpr<B>::disj(child(0).template map<B>(fn), child(1).template map<B>(fn));
    }
    throw std::logic_error("unreachable BoolKind");
  }

  template <typename F>
  void for_each_atom(F&& fn) const {
    if (node_->kind == BoolKind::Atom) {
      fn(node_->atom);
      return;
    }
    for (const auto& c : node_->children) c.for_each_atom(fn);
  }

  friend bool operator==(const BoolExpr& a, const BoolExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->kind != b.node_->kind) return false;
    if (a.node_->kind == BoolKind::Atom) return a.node_->atom == b.node_->atom;
    return a.node_->children == b.node_->children;
  }

 private:
  struct Node {
    BoolKind kind;
    A atom;
    std::vector<BoolExpr> children;
  };

  explicit BoolExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> make(BoolKind kind, A atom, std::vector<BoolExpr> children) {
    return std::make_shared<const Node>(Node{kind, std::move(atom), std::move(children)});
  }

  std::shared_ptr<const Node> node_;
};

/// Folds True/False constants upward. Atoms are left untouched.
template <typename A>
BoolExpr<A> fold_constants(const BoolExpr<A>& e) {
  using E = BoolExpr<A>;
  switch (e.kind()) {
    case BoolKind::True:
    case BoolKind::False:
    case BoolKind::Atom:
      return e;
    case BoolKind::Not: {
      E c = fold_constants(e.child(0));
      if (c.kind() == BoolKind::True) return E::truth(false);
      if (c.kind() == BoolKind::False) return E::truth(true);
      return E::negate(c);
    }
    case BoolKind::And: {
      E a = fold_constants(e.child(0));
      E b = fold_constants(e.child(1));
      if (a.kind() == BoolKind::False || b.kind() == BoolKind::False) return E::truth(false);
      if (a.kind() == BoolKind::True) return b;
      if (b.kind() == BoolKind::True) return a;
      return E::conj(a, b);
    }
    case BoolKind::Or: {
      E a = fold_constants(e.child(0));
      E b = fold_constants(e.child(1));
      if (a.kind() == BoolKind::True || b.kind() == BoolKind::True) return E::truth(true);
      if (a.kind() == BoolKind::False) return b;
      if (b.kind() == BoolKind::False) return a;
      return E::disj(a, b);
    }
  }
  throw std::logic_error("unreachable BoolKind");
}

}  // namespace ptapat
