// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptapat/dense.hpp"
#include "ptapat/graph.hpp"

namespace ptapat {

/// Finite abstraction of a discrete valuation relative to a pattern.
/// capped[i] = min(u_i, M+2). diffs[i][j] is floor(x_i - x_j) saturated to
/// [-(M+2), M+2], for clocks 1..k (row and column 0 unused). The floor is
/// u_i - u_j - [frac(x_i) < frac(x_j)], read from the pattern.
struct CappedValuation {
  std::int64_t cap = 0;  // M
  std::vector<std::int64_t> capped;
  std::vector<std::vector<std::int64_t>> diffs;
  friend bool operator==(const CappedValuation&, const CappedValuation&) = default;
  friend auto operator<=>(const CappedValuation&, const CappedValuation&) = default;
};

CappedValuation cap_abstract(const DiscreteValuation& u, const Pattern& eta, std::int64_t m);
/// The abstraction after next(eta, .), given the abstraction before.
CappedValuation capped_next(const CappedValuation& c, const Pattern& eta);
/// The abstraction after reset_r(eta, .), given the abstraction before.
CappedValuation capped_reset(const CappedValuation& c, const Pattern& eta, const std::vector<int>& r);
/// Evaluates a specialized constraint c^eta on the abstraction.
bool eval_capped(const DiscreteConstraint& c, const CappedValuation& cv, const Pattern& eta);

struct ControlReachResult {
  bool reachable = false;
  std::size_t controls = 0;       // (state, pattern, capped) triples discovered
  std::size_t patterns = 0;       // distinct patterns among them
  std::size_t transitions = 0;    // saturated automaton size
  std::int64_t cap = 0;
};

/// Exact control-state reachability from (from, zero valuation, stack) by
/// post* saturation over the capped quotient of G. Zero-length runs count.
ControlReachResult control_reach(const PtaSpec& spec, int from, const StackWord& stack, int to);

// ---------------------------------------------------------------------------
// Separation of mixed relations

/// An atom over fractional parts only (dense) or over integral parts and
/// counts only (discrete). Coefficients are keyed by variable; dense keys
/// use TermVar::Kind::Dense and stand for the fractional part.
struct SeparatedAtom {
  bool dense = false;
  MixedAtom::Kind kind = MixedAtom::Kind::Gt0;
  std::map<TermVar, std::int64_t> coefficients;
  std::int64_t constant = 0;
  std::int64_t modulus = 0;
  friend bool operator==(const SeparatedAtom&, const SeparatedAtom&) = default;
};

using SeparatedRelation = BoolExpr<SeparatedAtom>;

/// Term as constant plus coefficients.
struct LinearForm {
  std::map<TermVar, std::int64_t> coefficients;
  std::int64_t constant = 0;
};

LinearForm linearize(const LinearTerm& t);

SeparatedRelation separate_mixed(const MixedLinearRelation& l);
bool eval_separated(const SeparatedRelation& s, const Configuration& source, const Configuration& target);

/// Folds atoms whose linear form has no variables into True/False.
MixedLinearRelation normalize_relation(const MixedLinearRelation& l);

// ---------------------------------------------------------------------------
// Bounded binary reachability

struct QueryBounds {
  int max_steps = 6;
  int max_stack = 0;
  std::int64_t clock_cap = 4;
  std::optional<int> from_state;
};

struct QueryDiagnostics {
  std::size_t nodes_explored = 0;
  std::size_t patterns_seen = 0;
  std::size_t evaluations = 0;
  std::size_t starts = 0;
  bool steps_exceeded = false;
  bool stack_exceeded = false;
  bool cap_exceeded = false;
  double time_ms = 0;
};

struct QueryResult {
  enum class Verdict { WitnessFound, NoWitnessWithinBounds, Unreachable };
  Verdict verdict = Verdict::NoWitnessWithinBounds;
  std::optional<DenseRun> witness;
  QueryBounds bounds;
  QueryDiagnostics diagnostics;
};

const char* verdict_name(QueryResult::Verdict v);

/// Searches G-paths within bounds from every initial G configuration, samples
/// dense endpoints realizing each reached pair, and returns the first pair
/// satisfying l together with a replayed dense run.
QueryResult binreach_query(const PtaSpec& spec, const MixedLinearRelation& l, const QueryBounds& bounds);

/// A dense run whose checkpoints match the G-path's configurations. The
/// path must start at an init pattern with y0 = 0. Throws std::logic_error
/// if some step cannot be realized.
DenseRun lift_witness(const PtaSpec& spec, const GPath& path);

/// Three realizations of a pattern: evenly spaced, packed near 0, packed
/// near 1.
std::vector<std::vector<Rational>> sample_position_values(int positions);

}  // namespace ptapat
