// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptapat/dense.hpp"
#include "ptapat/model.hpp"
#include "ptapat/pattern.hpp"

namespace ptapat {

/// "00 30|10 20 21|..." : positions split by '|', each index written as its
/// clock number followed by the tag digit.
std::string encode_pattern(const Pattern& eta);
/// Throws PreconditionError on malformed text or an invalid pattern.
Pattern decode_pattern(const std::string& text, int k);

struct GEdge {
  enum class Kind { Progress, Stay, Reset };
  Kind kind = Kind::Progress;
  int edge = -1;  // automaton edge for Reset
  int from_state = 0;
  int to_state = 0;
  Pattern from_pattern;
  Pattern to_pattern;
  DiscreteConstraint pre_test;
  DiscreteConstraint post_test;
};

const char* gedge_kind_name(GEdge::Kind kind);

/// Enabled one-step successors, in the order progress, stay, resets by edge.
std::vector<std::pair<GEdge, GConfiguration>> g_successors(const PtaSpec& spec, const GConfiguration& gc);

struct GBounds {
  int max_steps = 8;
  int max_stack = 4;
  std::int64_t clock_cap = 8;
};

struct GReachResult {
  std::vector<GConfiguration> nodes;
  std::vector<int> parent;         // -1 for the start
  std::vector<GEdge::Kind> via;    // edge kind into the node
  std::vector<int> via_edge;       // automaton edge into the node, or -1
  std::vector<int> depth;
  bool steps_exceeded = false;
  bool stack_exceeded = false;
  bool cap_exceeded = false;

  std::optional<int> find(const GConfiguration& gc) const;
  std::unordered_map<std::string, int> index;
};

/// Deduplication key of a G configuration.
std::string gconfig_key(const GConfiguration& gc);

/// Breadth-first closure from start. Each layer is expanded in the order of
/// (state name, pattern encoding, discrete valuation, stack word).
GReachResult g_reach_bounded(const PtaSpec& spec, const GConfiguration& start, const GBounds& bounds);

/// A path in G: configs[i+1] follows steps[i] from configs[i].
struct GPath {
  struct Step {
    GEdge::Kind kind = GEdge::Kind::Progress;
    int edge = -1;
    friend bool operator==(const Step&, const Step&) = default;
  };
  std::vector<Step> steps;
  std::vector<GConfiguration> configs;
};

GPath extract_path(const GReachResult& reach, int node);

/// Checks every step of a path against g_successors.
bool is_g_path(const PtaSpec& spec, const GPath& path);

/// The G-path induced by a dense run from an initial valuation: progress
/// steps become one Next step per pattern change, or one stay edge when no
/// pattern changes.
GPath project_run(const PtaSpec& spec, const DenseRun& run);

/// Pattern-level view of a configuration: state, pattern of (v0, v),
/// integral parts and stack.
GConfiguration abstract_config(const ClockValuation& v0, const Configuration& c);

// ---------------------------------------------------------------------------
// Pattern ordering graph and synchronous counters

struct PSuccessors {
  Pattern p_succ;
  std::map<std::vector<int>, Pattern> r_succs;
};

PSuccessors p_successors(const Pattern& eta, const std::vector<std::vector<int>>& resets);

struct SyncState {
  DiscreteValuation z;
  std::vector<int> delta;
  std::vector<bool> reset_set;  // indexed by clock, entry 0 unused
  friend bool operator==(const SyncState&, const SyncState&) = default;
};

SyncState sync_start(const DiscreteValuation& u);

struct SyncLabel {
  enum class Kind { Progress, Reset };
  Kind kind = Kind::Progress;
  std::vector<int> increment;     // increment vector of the source pattern
  bool target_regulated = false;  // progress: the edge is add-1
  bool source_regulated = false;  // reset: taken at a regulated pattern
  std::vector<int> r;
};

enum class SyncRule {
  /// Every reset is recorded in I, wherever it is taken.
  Literal,
  /// A reset at a regulated pattern opens the next segment, so it is not
  /// recorded in I.
  Corrected,
};

SyncState sync_step(const SyncState& st, const SyncLabel& label, SyncRule rule = SyncRule::Corrected);

/// (z + delta) reset I.
DiscreteValuation sync_value(const SyncState& st);

/// A path in the pattern ordering graph: from start, each entry is either
/// a progress step (nullopt) or a reset with the given set.
struct PPath {
  Pattern start;
  std::vector<std::optional<std::vector<int>>> steps;
};

/// Runs the counters y and the synchronous simulation side by side and
/// compares them at the end. Throws PreconditionError for a non-regulated
/// start.
bool check_sync_claim(const PPath& path, const DiscreteValuation& u_start, SyncRule rule = SyncRule::Corrected);

}  // namespace ptapat
