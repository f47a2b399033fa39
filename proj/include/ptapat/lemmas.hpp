// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptapat/graph.hpp"
#include "ptapat/model.hpp"

namespace ptapat {

struct CheckTally {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckTally> checks;

  std::uint64_t failures() const;
  bool passed() const { return failures() == 0; }
  CheckTally& tally(const std::string& name);
  const CheckTally* find(const std::string& name) const;
  /// One line per check: "suite/check: cases=N failures=F".
  std::string summary() const;
};

/// progress, reset, tests, backwards, bisim, sync.
const std::vector<std::string>& suite_names();

/// Runs cases seeded cases of the named suite. Throws PreconditionError for
/// an unknown suite name.
SuiteReport run_suite(const std::string& suite, std::uint64_t cases, std::uint64_t seed);

struct SpecShape {
  int min_states = 2;
  int max_states = 4;
  int max_clocks = 2;
  std::int64_t max_constant = 3;
  int max_symbols = 2;
};

/// A small random automaton; always passes validate_spec.
PtaSpec random_small_spec(std::uint64_t seed, const SpecShape& shape = {});

/// Random constraint over clocks 1..k with constants in [0, max_constant].
ClockConstraint random_clock_constraint(std::uint64_t seed, int k, std::int64_t max_constant, int depth);

/// Checks the add-1 properties along a regulated path in the pattern
/// ordering graph: clocks reset inside a short segment read 0 at its end,
/// and the others gain exactly 1 over an add-1 segment. Under Corrected,
/// resets taken at the regulated segment start are applied to the
/// reference values instead of counting as resets on the segment.
bool check_add1(const PPath& path, const DiscreteValuation& u_start, SyncRule rule = SyncRule::Corrected);

}  // namespace ptapat
