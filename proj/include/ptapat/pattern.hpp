// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "ptapat/model.hpp"

namespace ptapat {

using ValuationPair = std::pair<ClockValuation, ClockValuation>;

/// Integral parts kept; every fractional part shifted by the complement of
/// clock 0's fraction.
ClockValuation relative_representation(const ClockValuation& v);

/// Pattern of an initialized pair. Throws PreconditionError if v0(0) != 0.
Pattern pattern_of(const ClockValuation& v0, const ClockValuation& v1);

/// Pattern of (v0, v0) for any pair realizing eta.
Pattern init_pattern(const Pattern& eta);

/// Same integral parts in both slots and same pattern.
bool equivalent(const ValuationPair& a, const ValuationPair& b);

struct PatternClass {
  bool regulated = false;
  bool merge = false;
  bool split = false;
  int now_index = 0;
};

PatternClass classify(const Pattern& eta);

struct NextResult {
  Pattern pattern;
  DiscreteValuation discrete;
  std::vector<int> increment;
};

NextResult next(const Pattern& eta, const DiscreteValuation& u);
Pattern next_pattern(const Pattern& eta);
/// The increment vector of one Next step. Zero for split-patterns.
std::vector<int> increment_vector(const Pattern& eta);

struct ResetResult {
  Pattern pattern;
  DiscreteValuation discrete;
};

ResetResult reset_pattern(const Pattern& eta, const DiscreteValuation& u, const std::vector<int>& r);
Pattern reset_pattern_only(const Pattern& eta, const std::vector<int>& r);

/// eta, Next(eta), ..., back to eta. The first and last entries are eta.
std::vector<Pattern> pattern_ring(const Pattern& eta);

/// Every valid pattern for k clocks, in slot-vector order.
std::vector<Pattern> enumerate_patterns(int k);

// ---------------------------------------------------------------------------
// Fractional orderings

struct FracAtom {
  enum class Kind { OrderLt, OrderEq, PosGt0, PosEq0 };
  Kind kind = Kind::OrderEq;
  int i = 1;
  int j = 1;
  friend bool operator==(const FracAtom&, const FracAtom&) = default;
};

/// Either a comparison over integral parts or a fractional ordering.
struct RewrittenAtom {
  bool is_frac = false;
  IntegralAtom integral;
  FracAtom frac;
  friend bool operator==(const RewrittenAtom&, const RewrittenAtom&) = default;
};

using RewrittenConstraint = BoolExpr<RewrittenAtom>;

RewrittenConstraint rewrite_constraint(const ClockConstraint& c);

/// Truth of a fractional ordering in any valuation pair with pattern eta,
/// read off the cyclic position order.
bool frac_atom_truth(const Pattern& eta, const FracAtom& atom);

/// Direct evaluation on the fractional parts of v.
bool frac_atom_dense(const FracAtom& atom, const ClockValuation& v);

/// Evaluates I(c) on the integral and fractional parts of v directly.
bool eval_rewritten(const RewrittenConstraint& c, const ClockValuation& v);

DiscreteConstraint specialize(const ClockConstraint& c, const Pattern& eta);

// ---------------------------------------------------------------------------
// Realization

/// Position values m/(n+1), the default realization of a pattern.
std::vector<Rational> even_position_values(int positions);

/// A pair with pattern eta and the given integral parts. values[m] is the
/// relative fraction of position m; values[0] must be 0 and the sequence
/// strictly increasing below 1.
ValuationPair realize_pair(const Pattern& eta, const DiscreteValuation& u0, const DiscreteValuation& u1,
                           const std::vector<Rational>& values);

}  // namespace ptapat
