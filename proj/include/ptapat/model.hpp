// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptapat/bool_expr.hpp"
#include "ptapat/rational.hpp"

namespace ptapat {

/// Values for clocks x0..xk. Index 0 is the auxiliary clock.
using ClockValuation = std::vector<Rational>;
/// Integral parts of x0..xk.
using DiscreteValuation = std::vector<std::int64_t>;
/// Stack contents, topmost symbol first.
using StackWord = std::string;

/// Thrown when an operation is called outside its precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ClockValuation progress_valuation(const ClockValuation& v, const Rational& delta);
/// r lists clock indices in 1..k; 0 is rejected.
ClockValuation reset_valuation(const ClockValuation& v, const std::vector<int>& r);
DiscreteValuation integral_parts(const ClockValuation& v);
void check_valuation(const ClockValuation& v, int k);

// ---------------------------------------------------------------------------
// Tagged indices and patterns

struct TaggedIndex {
  int clock = 0;
  int tag = 0;

  friend bool operator==(const TaggedIndex&, const TaggedIndex&) = default;
  friend auto operator<=>(const TaggedIndex& a, const TaggedIndex& b) {
    if (a.tag != b.tag) return a.tag <=> b.tag;
    return a.clock <=> b.clock;
  }
};

struct PatternViolation {
  std::string clause;
  std::string message;
};

/// Checks a raw position list: "size", "empty", "range", "disjoint",
/// "coverage", "anchor" and "canonical" clauses, first failure reported.
std::optional<PatternViolation> validate_pattern(const std::vector<std::vector<TaggedIndex>>& positions, int k);

/// Ordered partition of K0 u K1. Stored as the position number of every
/// tagged index (slot tag*(k+1)+clock), which is canonical by construction.
class Pattern {
 public:
  Pattern() = default;

  /// Throws PreconditionError with the violated clause on bad input.
  static Pattern from_positions(const std::vector<std::vector<TaggedIndex>>& positions, int k);
  /// Builds from per-slot position numbers; numbers must cover 0..n densely.
  static Pattern from_slots(int k, std::vector<std::uint8_t> slots);
  /// The single-position pattern.
  static Pattern all_in_one(int k);

  int k() const { return k_; }
  int size() const { return count_; }
  int position_of(TaggedIndex t) const { return slots_[slot(t)]; }
  int position_of(int clock, int tag) const { return slots_[tag * (k_ + 1) + clock]; }
  int now_index() const { return position_of(0, 1); }
  std::vector<TaggedIndex> position(int m) const;
  std::vector<std::vector<TaggedIndex>> positions() const;
  const std::vector<std::uint8_t>& slots() const { return slots_; }

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend bool operator<(const Pattern& a, const Pattern& b) {
    if (a.k_ != b.k_) return a.k_ < b.k_;
    return a.slots_ < b.slots_;
  }
  std::size_t hash() const;

 private:
  int slot(TaggedIndex t) const { return t.tag * (k_ + 1) + t.clock; }
  int k_ = 0;
  int count_ = 0;
  std::vector<std::uint8_t> slots_;
};

// ---------------------------------------------------------------------------
// Constraints

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

const char* cmp_op_text(CmpOp op);
bool compare_int(std::int64_t lhs, CmpOp op, std::int64_t rhs);
bool compare_rational(const Rational& lhs, CmpOp op, const Rational& rhs);

/// x_i op d when j == 0, x_i - x_j op d otherwise. Indices are 1..k.
struct ClockAtom {
  int i = 1;
  int j = 0;
  CmpOp op = CmpOp::Eq;
  std::int64_t d = 0;
  friend bool operator==(const ClockAtom&, const ClockAtom&) = default;
};

/// Same shape as ClockAtom but over integral parts; d may be negative here
/// because rewriting shifts bounds.
struct IntegralAtom {
  int i = 1;
  int j = 0;
  CmpOp op = CmpOp::Eq;
  std::int64_t d = 0;
  friend bool operator==(const IntegralAtom&, const IntegralAtom&) = default;
};

using ClockConstraint = BoolExpr<ClockAtom>;
using DiscreteConstraint = BoolExpr<IntegralAtom>;

bool eval_clock_constraint(const ClockConstraint& c, const ClockValuation& v);
bool eval_discrete_constraint(const DiscreteConstraint& c, const DiscreteValuation& u);
/// Largest constant mentioned, 0 for none.
std::int64_t max_constant(const ClockConstraint& c);

// ---------------------------------------------------------------------------
// Automata

struct Edge {
  int from = 0;
  int to = 0;
  ClockConstraint guard;
  std::vector<int> resets;  // sorted, 1..k
  std::optional<char> pop;  // absent: the stack is left untouched
  std::string push;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct PtaSpec {
  std::vector<std::string> states;
  std::vector<std::string> clocks;  // names of x1..xk
  std::string stack_alphabet;       // one character per symbol; empty for timed automata
  std::vector<ClockConstraint> invariants;  // parallel to states
  std::vector<Edge> edges;

  int k() const { return static_cast<int>(clocks.size()); }
  std::optional<int> state_index(const std::string& name) const;
  int require_state(const std::string& name) const;
  bool has_stack() const { return !stack_alphabet.empty(); }
  /// Max constant over invariants and guards, at least 1.
  std::int64_t cap_constant() const;
  friend bool operator==(const PtaSpec&, const PtaSpec&) = default;
};

/// Throws PreconditionError describing the first structural problem.
void validate_spec(const PtaSpec& spec);

struct Configuration {
  int state = 0;
  ClockValuation valuation;
  StackWord stack;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct GConfiguration {
  int state = 0;
  Pattern pattern;
  DiscreteValuation discrete;
  StackWord stack;
  friend bool operator==(const GConfiguration&, const GConfiguration&) = default;
  friend bool operator<(const GConfiguration& a, const GConfiguration& b);
};

// ---------------------------------------------------------------------------
// Mixed linear relations

/// Term variable. Dense: x_clock. Integral: the integral part of x_clock.
/// Count: occurrences of symbol in the stack word.
struct TermVar {
  enum class Kind { Dense, Integral, Count };
  Kind kind = Kind::Dense;
  int clock = 0;
  char symbol = 0;
  bool primed = false;
  friend bool operator==(const TermVar&, const TermVar&) = default;
  friend auto operator<=>(const TermVar&, const TermVar&) = default;
};

class LinearTerm {
 public:
  enum class Kind { Const, Var, Add, Sub };

  LinearTerm() : LinearTerm(constant(0)) {}
  static LinearTerm constant(std::int64_t n);
  static LinearTerm variable(TermVar v);
  static LinearTerm add(LinearTerm a, LinearTerm b);
  static LinearTerm sub(LinearTerm a, LinearTerm b);

  Kind kind() const { return node_->kind; }
  std::int64_t value() const { return node_->value; }
  const TermVar& var() const { return node_->var; }
  const LinearTerm& lhs() const { return node_->children[0]; }
  const LinearTerm& rhs() const { return node_->children[1]; }
  bool has_dense() const;

  friend bool operator==(const LinearTerm& a, const LinearTerm& b);

 private:
  struct Node {
    Kind kind;
    std::int64_t value = 0;
    TermVar var;
    std::vector<LinearTerm> children;
  };
  explicit LinearTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// t > 0, t = 0, or t mod n = 0 (discrete t only).
struct MixedAtom {
  enum class Kind { Gt0, Eq0, Mod };
  Kind kind = Kind::Gt0;
  LinearTerm term;
  std::int64_t modulus = 0;
  friend bool operator==(const MixedAtom&, const MixedAtom&) = default;
};

using MixedLinearRelation = BoolExpr<MixedAtom>;

/// Throws PreconditionError on a clock index beyond the valuations or a
/// dense variable inside a mod atom.
bool eval_mixed(const MixedLinearRelation& l, const Configuration& source, const Configuration& target);
Rational eval_term(const LinearTerm& t, const Configuration& source, const Configuration& target);
/// Checks clock indices against k and count symbols against the alphabet.
void validate_relation(const MixedLinearRelation& l, int k, const std::string& stack_alphabet);

}  // namespace ptapat

template <>
struct std::hash<ptapat::Pattern> {
  std::size_t operator()(const ptapat::Pattern& p) const noexcept { return p.hash(); }
};
