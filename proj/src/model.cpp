// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include "ptapat/model.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace ptapat {

ClockValuation progress_valuation(const ClockValuation& v, const Rational& delta) {
  if (delta.sign() < 0) throw PreconditionError("negative delta " + delta.to_display());
  ClockValuation out = v;
  for (auto& x : out) x += delta;
  return out;
}

ClockValuation reset_valuation(const ClockValuation& v, const std::vector<int>& r) {
  ClockValuation out = v;
  for (int i : r) {
    if (i == 0) throw PreconditionError("clock 0 cannot be reset");
    if (i < 0 || i >= static_cast<int>(v.size())) throw PreconditionError("reset index out of range");
    out[i] = Rational(0);
  }
  return out;
}

DiscreteValuation integral_parts(const ClockValuation& v) {
  DiscreteValuation u(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u[i] = split(v[i]).integral;
  return u;
}

void check_valuation(const ClockValuation& v, int k) {
  if (static_cast<int>(v.size()) != k + 1)
    throw PreconditionError("valuation has " + std::to_string(v.size()) + " entries, expected " + std::to_string(k + 1));
  for (const auto& x : v) {
    if (x.sign() < 0) throw PreconditionError("negative clock value " + x.to_display());
  }
}

// ---------------------------------------------------------------------------

std::optional<PatternViolation> validate_pattern(const std::vector<std::vector<TaggedIndex>>& positions, int k) {
  const std::size_t total = 2 * static_cast<std::size_t>(k + 1);
  if (k < 0) return PatternViolation{"size", "negative clock count"};
  if (positions.empty() || positions.size() > total)
    return PatternViolation{"size", "pattern must have between 1 and " + std::to_string(total) + " positions"};
  std::set<TaggedIndex> seen;
  for (std::size_t m = 0; m < positions.size(); ++m) {
    const auto& p = positions[m];
    if (p.empty()) return PatternViolation{"empty", "position " + std::to_string(m) + " is empty"};
    for (const auto& t : p) {
      if (t.clock < 0 || t.clock > k || (t.tag != 0 && t.tag != 1))
        return PatternViolation{"range", "tagged index out of range in position " + std::to_string(m)};
      if (!seen.insert(t).second)
        return PatternViolation{"disjoint", "index " + std::to_string(t.clock) + "^" + std::to_string(t.tag) +
                                                " occurs twice"};
    }
  }
  if (seen.size() != total) {
    for (int tag = 0; tag <= 1; ++tag) {
      for (int c = 0; c <= k; ++c) {
        if (!seen.count({c, tag}))
          return PatternViolation{"coverage", "index " + std::to_string(c) + "^" + std::to_string(tag) + " is missing"};
      }
    }
  }
  if (std::find(positions[0].begin(), positions[0].end(), TaggedIndex{0, 0}) == positions[0].end())
    return PatternViolation{"anchor", "0^0 must be in the first position"};
  for (std::size_t m = 0; m < positions.size(); ++m) {
    if (!std::is_sorted(positions[m].begin(), positions[m].end()))
      return PatternViolation{"canonical", "position " + std::to_string(m) + " is not sorted"};
  }
  return std::nullopt;
}

Pattern Pattern::from_positions(const std::vector<std::vector<TaggedIndex>>& positions, int k) {
  if (auto bad = validate_pattern(positions, k)) throw PreconditionError(bad->clause + ": " + bad->message);
  Pattern p;
  p.k_ = k;
  p.count_ = static_cast<int>(positions.size());
  p.slots_.assign(2 * static_cast<std::size_t>(k + 1), 0);
  for (std::size_t m = 0; m < positions.size(); ++m) {
    for (const auto& t : positions[m]) p.slots_[p.slot(t)] = static_cast<std::uint8_t>(m);
  }
  return p;
}

Pattern Pattern::from_slots(int k, std::vector<std::uint8_t> slots) {
  if (k < 0 || slots.size() != 2 * static_cast<std::size_t>(k + 1)) throw PreconditionError("size: wrong slot count");
  int top = *std::max_element(slots.begin(), slots.end());
  std::vector<bool> used(top + 1, false);
  for (auto s : slots) used[s] = true;
  if (std::find(used.begin(), used.end(), false) != used.end()) throw PreconditionError("empty: position numbers have a gap");
  if (slots[0] != 0) throw PreconditionError("anchor: 0^0 must be in the first position");
  Pattern p;
  p.k_ = k;
  p.count_ = top + 1;
  p.slots_ = std::move(slots);
  return p;
}

Pattern Pattern::all_in_one(int k) { return from_slots(k, std::vector<std::uint8_t>(2 * static_cast<std::size_t>(k + 1), 0)); }

std::vector<TaggedIndex> Pattern::position(int m) const {
  std::vector<TaggedIndex> out;
  for (int tag = 0; tag <= 1; ++tag) {
    for (int c = 0; c <= k_; ++c) {
      if (position_of(c, tag) == m) out.push_back({c, tag});
    }
  }
  return out;
}

std::vector<std::vector<TaggedIndex>> Pattern::positions() const {
  std::vector<std::vector<TaggedIndex>> out(count_);
  for (int tag = 0; tag <= 1; ++tag) {
    for (int c = 0; c <= k_; ++c) out[position_of(c, tag)].push_back({c, tag});
  }
  return out;
}

std::size_t Pattern::hash() const {
  std::size_t h = static_cast<std::size_t>(k_) * 1000003u;
  for (auto s : slots_) h = h * 31 + s;
  return h;
}

// ---------------------------------------------------------------------------

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

namespace {

template <typename T>
bool compare(const T& lhs, CmpOp op, const T& rhs) {
  switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Gt: return lhs > rhs;
  }
  return false;
}

}  // namespace

bool compare_int(std::int64_t lhs, CmpOp op, std::int64_t rhs) { return compare(lhs, op, rhs); }
bool compare_rational(const Rational& lhs, CmpOp op, const Rational& rhs) { return compare(lhs, op, rhs); }

bool eval_clock_constraint(const ClockConstraint& c, const ClockValuation& v) {
  return c.evaluate([&](const ClockAtom& a) {
    if (a.i <= 0 || a.i >= static_cast<int>(v.size()) || a.j < 0 || a.j >= static_cast<int>(v.size()))
      throw PreconditionError("constraint mentions a clock outside the valuation");
    Rational lhs = a.j == 0 ? v[a.i] : v[a.i] - v[a.j];
    return compare_rational(lhs, a.op, Rational(a.d));
  });
}

bool eval_discrete_constraint(const DiscreteConstraint& c, const DiscreteValuation& u) {
  return c.evaluate([&](const IntegralAtom& a) {
    std::int64_t lhs = a.j == 0 ? u.at(a.i) : u.at(a.i) - u.at(a.j);
    return compare_int(lhs, a.op, a.d);
  });
}

std::int64_t max_constant(const ClockConstraint& c) {
  std::int64_t m = 0;
  c.for_each_atom([&](const ClockAtom& a) { m = std::max(m, a.d); });
  return m;
}

// ---------------------------------------------------------------------------

std::optional<int> PtaSpec::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) return std::nullopt;
  return static_cast<int>(it - states.begin());
}

int PtaSpec::require_state(const std::string& name) const {
  if (auto i = state_index(name)) return *i;
  throw PreconditionError("unknown state '" + name + "'");
}

std::int64_t PtaSpec::cap_constant() const {
  std::int64_t m = 1;
  for (const auto& inv : invariants) m = std::max(m, max_constant(inv));
  for (const auto& e : edges) m = std::max(m, max_constant(e.guard));
  return m;
}

void validate_spec(const PtaSpec& spec) {
  const int k = spec.k();
  if (k < 1) throw PreconditionError("at least one clock is required");
  if (spec.states.empty()) throw PreconditionError("at least one state is required");
  if (spec.invariants.size() != spec.states.size()) throw PreconditionError("one invariant per state is required");
  std::set<std::string> names(spec.states.begin(), spec.states.end());
  if (names.size() != spec.states.size()) throw PreconditionError("duplicate state name");
  std::set<char> symbols(spec.stack_alphabet.begin(), spec.stack_alphabet.end());
  if (symbols.size() != spec.stack_alphabet.size()) throw PreconditionError("duplicate stack symbol");
  auto check_constraint = [&](const ClockConstraint& c, const std::string& where) {
    c.for_each_atom([&](const ClockAtom& a) {
      if (a.i < 1 || a.i > k || a.j < 0 || a.j > k || a.i == a.j)
        throw PreconditionError(where + ": clock index out of range");
      if (a.d < 0) throw PreconditionError(where + ": negative constant");
    });
  };
  for (std::size_t s = 0; s < spec.states.size(); ++s) check_constraint(spec.invariants[s], "invariant of " + spec.states[s]);
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    const auto& edge = spec.edges[e];
    const std::string where = "edge " + std::to_string(e);
    if (edge.from < 0 || edge.from >= static_cast<int>(spec.states.size()) || edge.to < 0 ||
        edge.to >= static_cast<int>(spec.states.size()))
      throw PreconditionError(where + ": endpoint out of range");
    check_constraint(edge.guard, where);
    if (!std::is_sorted(edge.resets.begin(), edge.resets.end()) ||
        std::adjacent_find(edge.resets.begin(), edge.resets.end()) != edge.resets.end())
      throw PreconditionError(where + ": resets must be sorted and distinct");
    for (int r : edge.resets) {
      if (r < 1 || r > k) throw PreconditionError(where + ": reset index out of range");
    }
    if (!spec.has_stack() && (edge.pop || !edge.push.empty()))
      throw PreconditionError(where + ": stack operation on an automaton without stack");
    if (edge.pop && !symbols.count(*edge.pop)) throw PreconditionError(where + ": undeclared stack symbol");
    if (!edge.pop && !edge.push.empty()) throw PreconditionError(where + ": push without pop");
    for (char c : edge.push) {
      if (!symbols.count(c)) throw PreconditionError(where + ": undeclared stack symbol");
    }
  }
}

bool operator<(const GConfiguration& a, const GConfiguration& b) {
  return std::tie(a.state, a.pattern, a.discrete, a.stack) < std::tie(b.state, b.pattern, b.discrete, b.stack);
}

// ---------------------------------------------------------------------------

LinearTerm LinearTerm::constant(std::int64_t n) {
  return LinearTerm(std::make_shared<const Node>(Node{Kind::Const, n, {}, {}}));
}
LinearTerm LinearTerm::variable(TermVar v) {
  return LinearTerm(std::make_shared<const Node>(Node{Kind::Var, 0, v, {}}));
}
LinearTerm LinearTerm::add(LinearTerm a, LinearTerm b) {
  return LinearTerm(std::make_shared<const Node>(Node{Kind::Add, 0, {}, {std::move(a), std::move(b)}}));
}
LinearTerm LinearTerm::sub(LinearTerm a, LinearTerm b) {
  return LinearTerm(std::make_shared<const Node>(Node{Kind::Sub, 0, {}, {std::move(a), std::move(b)}}));
}

bool LinearTerm::has_dense() const {
  switch (kind()) {
    case Kind::Const: return false;
    case Kind::Var: return var().kind == TermVar::Kind::Dense;
    default: return lhs().has_dense() || rhs().has_dense();
  }
}

bool operator==(const LinearTerm& a, const LinearTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case LinearTerm::Kind::Const: return a.value() == b.value();
    case LinearTerm::Kind::Var: return a.var() == b.var();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Rational eval_term(const LinearTerm& t, const Configuration& source, const Configuration& target) {
  switch (t.kind()) {
    case LinearTerm::Kind::Const: return Rational(t.value());
    case LinearTerm::Kind::Add: return eval_term(t.lhs(), source, target) + eval_term(t.rhs(), source, target);
    case LinearTerm::Kind::Sub: return eval_term(t.lhs(), source, target) - eval_term(t.rhs(), source, target);
    case LinearTerm::Kind::Var: break;
  }
  const TermVar& v = t.var();
  const Configuration& c = v.primed ? target : source;
  if (v.kind == TermVar::Kind::Count) {
    return Rational(static_cast<std::int64_t>(std::count(c.stack.begin(), c.stack.end(), v.symbol)));
  }
  if (v.clock < 0 || v.clock >= static_cast<int>(c.valuation.size()))
    throw PreconditionError("relation mentions clock " + std::to_string(v.clock) + " outside the valuation");
  const Rational& x = c.valuation[v.clock];
  if (v.kind == TermVar::Kind::Dense) return x;
  return Rational(split(x).integral);
}

bool eval_mixed(const MixedLinearRelation& l, const Configuration& source, const Configuration& target) {
  return l.evaluate([&](const MixedAtom& a) {
    switch (a.kind) {
      case MixedAtom::Kind::Gt0: return eval_term(a.term, source, target).sign() > 0;
      case MixedAtom::Kind::Eq0: return eval_term(a.term, source, target).sign() == 0;
      case MixedAtom::Kind::Mod: {
        if (a.term.has_dense()) throw PreconditionError("dense variable inside a mod atom");
        if (a.modulus == 0) throw PreconditionError("mod by zero");
        std::int64_t n = eval_term(a.term, source, target).floor();
        return n % a.modulus == 0;
      }
    }
    return false;
  });
}

void validate_relation(const MixedLinearRelation& l, int k, const std::string& stack_alphabet) {
  std::function<void(const LinearTerm&)> walk = [&](const LinearTerm& t) {
    if (t.kind() == LinearTerm::Kind::Var) {
      const auto& v = t.var();
      if (v.kind == TermVar::Kind::Count) {
        if (stack_alphabet.find(v.symbol) == std::string::npos)
          throw PreconditionError(std::string("unknown stack symbol '") + v.symbol + "'");
      } else if (v.clock < 0 || v.clock > k) {
        throw PreconditionError("unknown clock x" + std::to_string(v.clock));
      }
    } else if (t.kind() != LinearTerm::Kind::Const) {
      walk(t.lhs());
      walk(t.rhs());
    }
  };
  l.for_each_atom([&](const MixedAtom& a) {
    walk(a.term);
    if (a.kind == MixedAtom::Kind::Mod) {
      if (a.term.has_dense()) throw PreconditionError("dense variable inside a mod atom");
      if (a.modulus == 0) throw PreconditionError("mod by zero");
    }
  });
}

}  // namespace ptapat
