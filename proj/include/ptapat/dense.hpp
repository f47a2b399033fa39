// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptapat/model.hpp"
#include "ptapat/pattern.hpp"

namespace ptapat {

struct TraceStep {
  enum class Kind { Progress, Fire };
  Kind kind = Kind::Progress;
  Rational delta;
  int edge = -1;

  static TraceStep progress(Rational d) { return {Kind::Progress, std::move(d), -1}; }
  static TraceStep fire(int e) { return {Kind::Fire, Rational(0), e}; }
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// checkpoints[0] is the start; checkpoints[i+1] follows steps[i].
struct DenseRun {
  std::vector<TraceStep> steps;
  std::vector<Configuration> checkpoints;

  const Configuration& start() const { return checkpoints.front(); }
  const Configuration& end() const { return checkpoints.back(); }
};

enum class StepErrorKind {
  InvariantViolated,
  NonPositiveDelta,
  GuardFailed,
  SourceInvariantFailed,
  TargetInvariantFailed,
  StackTopMismatch,
  EmptyStack,
  UnknownEdge,
  WrongState,
  DeadEnd,
};

const char* step_error_name(StepErrorKind kind);

class StepError : public std::runtime_error {
 public:
  StepError(StepErrorKind kind, std::string message, std::optional<Rational> witness = std::nullopt, int step = -1)
      : std::runtime_error(std::move(message)), kind_(kind), witness_(std::move(witness)), step_(step) {}
  StepErrorKind kind() const { return kind_; }
  /// Offending time inside a progress step, when known.
  const std::optional<Rational>& witness() const { return witness_; }
  int step() const { return step_; }

 private:
  StepErrorKind kind_;
  std::optional<Rational> witness_;
  int step_;
};

/// Times in [0, delta] where some clock 1..k sits on an integer, plus both
/// endpoints, sorted.
std::vector<Rational> integer_breakpoints(const ClockValuation& v, const Rational& delta);

/// First time t in [0, delta] with v+t outside c, or nullopt if c holds on
/// the whole closed interval.
std::optional<Rational> first_violation(const ClockConstraint& c, const ClockValuation& v, const Rational& delta);

Configuration step_progress(const PtaSpec& spec, const Configuration& c, const Rational& delta);
Configuration step_fire(const PtaSpec& spec, const Configuration& c, int edge);
/// Replays steps; errors carry the failing step index.
DenseRun run_trace(const PtaSpec& spec, const Configuration& start, const std::vector<TraceStep>& steps);

/// Legal random run by rejection sampling. Deltas have denominators up to
/// 1000 and values up to 4. Throws StepError(DeadEnd) when stuck.
DenseRun random_run(const PtaSpec& spec, const Configuration& start, int length, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Pattern changes along a progress

/// Times in [0, delta] at which the relative fraction of clock 0 coincides
/// with another value of the pair (v0, v).
std::vector<Rational> pattern_event_times(const ClockValuation& v0, const ClockValuation& v, const Rational& delta);

/// Consecutive distinct patterns seen along [v, v+delta].
std::vector<Pattern> pattern_trajectory(const ClockValuation& v0, const ClockValuation& v, const Rational& delta);

// ---------------------------------------------------------------------------
// Backward witnesses

struct ProgressWitness {
  Rational delta;
  ClockValuation valuation;
};

/// Given (v0_1, v1 + delta1) equivalent to (v0_2, v2), finds delta2 and a
/// valuation u with u + delta2 = v2 and (v0_1, v1) equivalent to (v0_2, u).
/// delta2 is positive whenever delta1 is.
ProgressWitness backward_progress_witness(const ClockValuation& v0_1, const ClockValuation& v1, const Rational& delta1,
                                          const ClockValuation& v0_2, const ClockValuation& v2);

/// Given (v0_1, v1 reset r) equivalent to (v0_2, v2), finds u with
/// u reset r = v2 and (v0_1, v1) equivalent to (v0_2, u).
ClockValuation backward_reset_witness(const ClockValuation& v0_1, const ClockValuation& v1, const std::vector<int>& r,
                                      const ClockValuation& v0_2, const ClockValuation& v2);

/// A run with the same steps shape as run1 from (s0, v0_2, w0) ending at
/// (s1, v2, w1).
DenseRun transfer_run(const PtaSpec& spec, const DenseRun& run1, const ClockValuation& v0_2, const ClockValuation& v2);

}  // namespace ptapat
