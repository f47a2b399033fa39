// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ptapat/graph.hpp"
#include "ptapat/model.hpp"
#include "ptapat/reach.hpp"

namespace ptapat {

/// 1-based line and column.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Diagnostic {
  SourceSpan span;
  std::string message;
};

/// "file:line:column: message".
std::string format_diagnostic(const Diagnostic& d);

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic d) : std::runtime_error(format_diagnostic(d)), diagnostic_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

/// Parses the automaton format:
///
///   pta {
///     clocks x1 x2;
///     stack a b;
///     state s1 invariant x1 <= 3;
///     edge s1 -> s2 guard x1 - x2 < 2 reset { x1 } pop a push "ba";
///   }
///
/// Line comments start with "//". Throws ParseError.
PtaSpec parse_automaton(std::string_view text, const std::string& file = "<input>");
std::string print_automaton(const PtaSpec& spec);
std::string print_clock_constraint(const ClockConstraint& c, const PtaSpec& spec);

/// Parses a mixed linear relation over x0..xk, x0'..xk', u1..uk (or y1..yk)
/// and their primed forms, #a(w) and #a(w'). Comparisons are desugared to
/// t > 0 and t = 0, "||" to negated conjunction. Clock indices are checked
/// against k and symbols against the alphabet. Throws ParseError.
MixedLinearRelation parse_query(std::string_view text, int k, const std::string& stack_alphabet);
std::string print_query(const MixedLinearRelation& l);
std::string print_term(const LinearTerm& t);

// ---------------------------------------------------------------------------
// Export

struct JsonOptions {
  bool timing = true;  // false writes time_ms as 0
};

std::string config_json(const PtaSpec& spec, const Configuration& c);
std::string run_json(const PtaSpec& spec, const DenseRun& run);
std::string query_json(const PtaSpec& spec, const QueryResult& r, const JsonOptions& opts = {});
std::string reach_json(const PtaSpec& spec, const ControlReachResult& r, double time_ms, const JsonOptions& opts = {});

/// Explored slice of G as a Graphviz digraph. Nodes follow the exploration
/// order; edges list every successor that is itself a node.
std::string graph_dot(const PtaSpec& spec, const GReachResult& reach);

}  // namespace ptapat
