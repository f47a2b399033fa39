// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptapat/graph.hpp"

using namespace ptapat;

namespace {

ClockValuation vals(std::initializer_list<const char*> xs) {
  ClockValuation v;
  for (const char* x : xs) v.push_back(Rational::parse(x));
  return v;
}

PtaSpec trivial(int k) {
  PtaSpec spec;
  spec.states = {"s"};
  for (int i = 1; i <= k; ++i) spec.clocks.push_back("x" + std::to_string(i));
  spec.invariants = {ClockConstraint::truth(true)};
  return spec;
}

PtaSpec fig2() {
  PtaSpec spec;
  spec.states = {"s1", "s2"};
  spec.clocks = {"x1", "x2"};
  spec.invariants = {ClockConstraint::truth(true), ClockConstraint::truth(true)};
  Edge e;
  e.from = 0;
  e.to = 1;
  e.resets = {1};
  spec.edges.push_back(e);
  return spec;
}

const char* kEta1 = "00 30|10 20 21|11 41|01|40|31";

}  // namespace

TEST_CASE("pattern encoding") {
  Pattern eta = decode_pattern(kEta1, 4);
  CHECK(encode_pattern(eta) == kEta1);
  CHECK(eta == pattern_of(vals({"0", "3.118", "5.118", "2", "1.876"}), vals({"4.296", "1.732", "1.414", "5.289", "3.732"})));
  CHECK(encode_pattern(next_pattern(eta)) == "00 30|10 20 21|01 11 41|40|31");
  CHECK_THROWS_AS(decode_pattern("00 30|10 20 21|11 41|01|40", 4), PreconditionError);
  CHECK_THROWS_AS(decode_pattern("00 3x", 1), PreconditionError);
  CHECK_THROWS_AS(decode_pattern("01|00 10 11", 1), PreconditionError);
}

TEST_CASE("successors with trivial invariants") {
  auto spec = trivial(4);
  GConfiguration gc{0, decode_pattern(kEta1, 4), {4, 1, 1, 5, 3}, ""};
  auto succ = g_successors(spec, gc);
  REQUIRE(succ.size() == 2);
  CHECK(succ[0].first.kind == GEdge::Kind::Progress);
  CHECK(succ[0].second.discrete == DiscreteValuation{4, 2, 1, 5, 4});
  CHECK(succ[1].first.kind == GEdge::Kind::Stay);
  auto split = g_successors(spec, succ[0].second);
  CHECK(split.size() == 1);
}

TEST_CASE("reset edges respect the stack") {
  auto spec = fig2();
  spec.stack_alphabet = "ab";
  spec.edges[0].pop = 'a';
  GConfiguration gc{0, Pattern::all_in_one(2), {0, 0, 0}, "b"};
  for (const auto& [edge, next] : g_successors(spec, gc)) CHECK(edge.kind != GEdge::Kind::Reset);
  gc.stack = "ab";
  bool fired = false;
  for (const auto& [edge, next] : g_successors(spec, gc)) {
    if (edge.kind == GEdge::Kind::Reset) {
      fired = true;
      CHECK(next.stack == "b");
    }
  }
  CHECK(fired);
}

TEST_CASE("bounded closure along the k=1 ring") {
  auto spec = trivial(1);
  GConfiguration start{0, Pattern::all_in_one(1), {0, 0}, ""};
  auto zero = g_reach_bounded(spec, start, {0, 0, 5});
  CHECK(zero.nodes.size() == 1);
  // From the regulated start the ring is: split, merge (stay loops back),
  // merge into p0 with +1 on both clocks.
  auto three = g_reach_bounded(spec, start, {3, 0, 5});
  CHECK(three.nodes.size() == 4);
  CHECK(three.nodes[2].discrete == DiscreteValuation{1, 1});
  CHECK(three.steps_exceeded);
  CHECK(is_g_path(spec, extract_path(three, 3)));
}

TEST_CASE("worked run projects into G") {
  auto spec = fig2();
  Configuration start{0, vals({"0", "4.98", "2.52"}), ""};
  auto run = run_trace(spec, start, {TraceStep::progress(Rational::parse("2.47")), TraceStep::fire(0),
                                     TraceStep::progress(Rational::parse("2.89"))});
  GPath path = project_run(spec, run);
  CHECK(is_g_path(spec, path));
  CHECK(path.configs.front().pattern == init_pattern(path.configs.front().pattern));
  CHECK(path.configs.front().discrete == DiscreteValuation{0, 4, 2});
  CHECK(path.configs.back().state == 1);
  CHECK(path.configs.back().discrete == DiscreteValuation{5, 2, 7});
  CHECK(path.configs.back().pattern == pattern_of(start.valuation, vals({"5.36", "2.89", "7.88"})));
  auto reach = g_reach_bounded(spec, path.configs.front(), {static_cast<int>(path.steps.size()), 0, 8});
  CHECK(reach.find(path.configs.back()).has_value());
}

TEST_CASE("pattern ordering graph") {
  Pattern eta = decode_pattern(kEta1, 4);
  auto ps = p_successors(eta, {{4}, {}});
  CHECK(ps.p_succ == next_pattern(eta));
  CHECK(encode_pattern(ps.r_succs.at({4})) == "00 30|10 20 21|11|01 41|40|31");
  CHECK(ps.r_succs.at({}) == eta);
}

TEST_CASE("synchronous counters") {
  SyncState st{{3, 4, 5}, {0, 0, 0}, {false, true, false}};
  SyncLabel add1;
  add1.target_regulated = true;
  auto after = sync_step(st, add1);
  CHECK(after.z == DiscreteValuation{4, 0, 6});
  CHECK(after.delta == std::vector<int>{0, 0, 0});
  CHECK(after.reset_set == std::vector<bool>{false, false, false});

  SyncLabel r;
  r.kind = SyncLabel::Kind::Reset;
  r.r = {2};
  SyncState st2{{3, 4, 5}, {1, 1, 1}, {false, false, false}};
  auto reset = sync_step(st2, r);
  CHECK(reset.z == DiscreteValuation{3, 4, 0});
  CHECK(reset.delta == std::vector<int>{1, 1, 0});
  CHECK(reset.reset_set == std::vector<bool>{false, false, true});

  SyncLabel quiet;
  quiet.increment = {0, 0, 0};
  CHECK(sync_step(st2, quiet) == st2);

  CHECK(check_sync_claim({Pattern::all_in_one(2), {}}, {0, 2, 3}));
  CHECK_THROWS_AS(check_sync_claim({decode_pattern(kEta1, 4), {}}, {0, 0, 0, 0, 0}), PreconditionError);

  // A reset taken at the regulated start, followed by one add-1 path.
  PPath early{Pattern::all_in_one(1), {std::vector<int>{1}, std::nullopt, std::nullopt}};
  CHECK_FALSE(check_sync_claim(early, {0, 5}, SyncRule::Literal));
  CHECK(check_sync_claim(early, {0, 5}, SyncRule::Corrected));
}
