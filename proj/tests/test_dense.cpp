// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ptapat/dense.hpp"

using namespace ptapat;

namespace {

ClockValuation vals(std::initializer_list<const char*> xs) {
  ClockValuation v;
  for (const char* x : xs) v.push_back(Rational::parse(x));
  return v;
}

Rational q(const char* s) { return Rational::parse(s); }

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

PtaSpec one_state(ClockConstraint inv) {
  PtaSpec spec;
  spec.states = {"s"};
  spec.clocks = {"x1"};
  spec.invariants = {std::move(inv)};
  return spec;
}

}  // namespace

TEST_CASE("progress with invariants") {
  auto spec = fig2();
  Configuration c{0, vals({"0", "4.98", "2.52"}), ""};
  CHECK(step_progress(spec, c, q("2.47")).valuation == vals({"2.47", "7.45", "4.99"}));
  CHECK_THROWS_AS(step_progress(spec, c, Rational(0)), StepError);

  auto lt = one_state(ClockConstraint::atom({1, 0, CmpOp::Lt, 1}));
  Configuration z{0, vals({"0", "0"}), ""};
  try {
    step_progress(lt, z, Rational(2));
    FAIL("expected a violation");
  } catch (const StepError& err) {
    CHECK(err.kind() == StepErrorKind::InvariantViolated);
    CHECK(err.witness() == Rational(1));
  }
  auto le = one_state(ClockConstraint::atom({1, 0, CmpOp::Le, 1}));
  CHECK(step_progress(le, z, Rational(1)).valuation == vals({"1", "1"}));
}

TEST_CASE("breakpoint evaluation agrees with sampling") {
  std::mt19937_64 rng(5);
  const CmpOp ops[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Eq, CmpOp::Ge, CmpOp::Gt};
  for (int n = 0; n < 300; ++n) {
    ClockValuation v{Rational(0), Rational(static_cast<std::int64_t>(rng() % 12), 4),
                     Rational(static_cast<std::int64_t>(rng() % 12), 4)};
    Rational delta(static_cast<std::int64_t>(rng() % 12 + 1), 4);
    ClockAtom a{static_cast<int>(rng() % 2) + 1, 0, ops[rng() % 5], static_cast<std::int64_t>(rng() % 4)};
    if (rng() % 3 == 0) a.j = 3 - a.i;
    auto c = ClockConstraint::atom(a);
    const bool whole = !first_violation(c, v, delta).has_value();
    bool sampled = eval_clock_constraint(c, v) && eval_clock_constraint(c, progress_valuation(v, delta));
    for (int s = 0; s < 100 && sampled; ++s) {
      Rational t = delta * Rational(static_cast<std::int64_t>(rng() % 999 + 1), 1000);
      sampled = eval_clock_constraint(c, progress_valuation(v, t));
    }
    for (const auto& t : integer_breakpoints(v, delta)) sampled = sampled && eval_clock_constraint(c, progress_valuation(v, t));
    if (whole) CHECK(sampled);
    if (!sampled) CHECK_FALSE(whole);
  }
}

TEST_CASE("firing edges") {
  auto spec = fig2();
  Configuration c{0, vals({"2.47", "7.45", "4.99"}), ""};
  auto d = step_fire(spec, c, 0);
  CHECK(d.state == 1);
  CHECK(d.valuation == vals({"2.47", "0", "4.99"}));
  CHECK_THROWS_AS(step_fire(spec, d, 0), StepError);

  PtaSpec pda = fig2();
  pda.stack_alphabet = "abc";
  pda.edges[0].pop = 'a';
  pda.edges[0].push = "ba";
  Configuration s{0, vals({"0", "0", "0"}), "ac"};
  CHECK(step_fire(pda, s, 0).stack == "bac");
  s.stack = "bc";
  try {
    step_fire(pda, s, 0);
    FAIL("expected mismatch");
  } catch (const StepError& err) {
    CHECK(err.kind() == StepErrorKind::StackTopMismatch);
  }
}

TEST_CASE("worked runs and transfer") {
  auto spec = fig2();
  Configuration start1{0, vals({"0", "4.98", "2.52"}), ""};
  auto run1 = run_trace(spec, start1, {TraceStep::progress(q("2.47")), TraceStep::fire(0), TraceStep::progress(q("2.89"))});
  CHECK(run1.end().valuation == vals({"5.36", "2.89", "7.88"}));
  CHECK(run1.end().state == 1);
  Configuration start2{0, vals({"0", "4.89", "2.11"}), ""};
  auto run2 = run_trace(spec, start2, {TraceStep::progress(q("2.51")), TraceStep::fire(0), TraceStep::progress(q("2.77"))});
  CHECK(run2.end().valuation == vals({"5.28", "2.77", "7.39"}));

  auto moved = transfer_run(spec, run1, start2.valuation, run2.end().valuation);
  CHECK(moved.steps == run2.steps);
  CHECK(moved.end() == run2.end());

  auto empty = run_trace(spec, start1, {});
  CHECK(empty.checkpoints.size() == 1);
  CHECK(transfer_run(spec, empty, start1.valuation, start1.valuation).steps.empty());
}

TEST_CASE("backward witnesses on small data") {
  auto v0 = vals({"0", "3.118", "5.118", "2", "1.876"});
  auto v1 = vals({"4.296", "1.732", "1.414", "5.289", "3.732"});
  auto w = backward_progress_witness(v0, v1, Rational(0), v0, v1);
  CHECK(w.delta == Rational(0));
  CHECK(w.valuation == v1);

  auto reset = reset_valuation(v1, {4});
  auto back = backward_reset_witness(v0, v1, {4}, v0, reset);
  CHECK(reset_valuation(back, {4}) == reset);
  CHECK(pattern_of(v0, back) == pattern_of(v0, v1));
  CHECK(integral_parts(back) == integral_parts(v1));
  CHECK(backward_reset_witness(v0, v1, {}, v0, v1) == v1);
}

TEST_CASE("random runs replay") {
  auto spec = fig2();
  spec.invariants[0] = ClockConstraint::atom({2, 0, CmpOp::Le, 6});
  spec.edges.push_back(Edge{1, 0, ClockConstraint::atom({1, 0, CmpOp::Ge, 1}), {2}, std::nullopt, ""});
  Configuration start{0, vals({"0", "0", "0"}), ""};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto run = random_run(spec, start, 8, seed);
    auto again = run_trace(spec, start, run.steps);
    CHECK(again.end() == run.end());
    auto same = random_run(spec, start, 8, seed);
    CHECK(same.steps == run.steps);
  }
}
