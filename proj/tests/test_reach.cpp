// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ptapat/reach.hpp"

using namespace ptapat;

namespace {

ClockValuation vals(std::initializer_list<const char*> xs) {
  ClockValuation v;
  for (const char* x : xs) v.push_back(Rational::parse(x));
  return v;
}

ClockConstraint atom(int i, int j, CmpOp op, std::int64_t d) { return ClockConstraint::atom({i, j, op, d}); }

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

PtaSpec push_pop() {
  PtaSpec spec;
  spec.states = {"p", "q", "t"};
  spec.clocks = {"x1"};
  spec.stack_alphabet = "ab";
  spec.invariants.assign(3, ClockConstraint::truth(true));
  auto edge = [](int from, int to, char pop, std::string push) {
    Edge e;
    e.from = from;
    e.to = to;
    e.pop = pop;
    e.push = std::move(push);
    return e;
  };
  spec.edges.push_back(edge(0, 0, 'a', "ba"));
  spec.edges.push_back(edge(0, 0, 'b', ""));
  Edge pq = edge(0, 1, 'a', "");
  pq.guard = atom(1, 0, CmpOp::Ge, 1);
  pq.resets = {1};
  spec.edges.push_back(pq);
  Edge qt = edge(1, 2, 'a', "");
  qt.guard = atom(1, 0, CmpOp::Le, 2);
  spec.edges.push_back(qt);
  return spec;
}

ClockConstraint random_constraint(std::mt19937_64& rng, int k, int depth) {
  std::uniform_int_distribution<int> pick(0, 5);
  int choice = depth <= 0 ? 0 : pick(rng) % 4;
  if (choice == 0) {
    int i = 1 + static_cast<int>(rng() % k);
    int j = rng() % 2 ? 0 : 1 + static_cast<int>(rng() % k);
    if (j == i) j = 0;
    return atom(i, j, static_cast<CmpOp>(rng() % 5), static_cast<std::int64_t>(rng() % 4));
  }
  if (choice == 1) return ClockConstraint::negate(random_constraint(rng, k, depth - 1));
  if (choice == 2)
    return ClockConstraint::conj(random_constraint(rng, k, depth - 1), random_constraint(rng, k, depth - 1));
  return ClockConstraint::disj(random_constraint(rng, k, depth - 1), random_constraint(rng, k, depth - 1));
}

}  // namespace

TEST_CASE("capped abstraction is a congruence") {
  std::mt19937_64 rng(11);
  const auto patterns = enumerate_patterns(2);
  const std::vector<std::vector<int>> resets{{1}, {2}, {1, 2}, {}};
  const std::int64_t m = 3;
  for (int trial = 0; trial < 3000; ++trial) {
    const Pattern& eta = patterns[rng() % patterns.size()];
    DiscreteValuation u{static_cast<std::int64_t>(rng() % 9), static_cast<std::int64_t>(rng() % 9),
                        static_cast<std::int64_t>(rng() % 9)};
    CappedValuation cv = cap_abstract(u, eta, m);
    ClockConstraint c = random_constraint(rng, 2, 3);
    DiscreteConstraint sc = specialize(c, eta);
    REQUIRE(eval_capped(sc, cv, eta) == eval_discrete_constraint(sc, u));
    NextResult nr = next(eta, u);
    CHECK(capped_next(cv, eta) == cap_abstract(nr.discrete, nr.pattern, m));
    const auto& r = resets[rng() % resets.size()];
    ResetResult rr = reset_pattern(eta, u, r);
    CHECK(capped_reset(cv, eta, r) == cap_abstract(rr.discrete, rr.pattern, m));
  }
}

TEST_CASE("control reachability on small instances") {
  auto spec = fig2();
  CHECK(control_reach(spec, 0, "", 1).reachable);
  CHECK(control_reach(spec, 1, "", 1).reachable);
  CHECK_FALSE(control_reach(spec, 1, "", 0).reachable);

  spec.edges[0].guard = atom(1, 0, CmpOp::Lt, 0);
  CHECK_FALSE(control_reach(spec, 0, "", 1).reachable);

  auto pp = push_pop();
  CHECK_FALSE(control_reach(pp, 0, "a", 2).reachable);
  CHECK(control_reach(pp, 0, "a", 1).reachable);
  CHECK(control_reach(pp, 0, "aa", 2).reachable);
  CHECK(control_reach(pp, 0, "ba", 2).reachable == false);
  CHECK(control_reach(pp, 0, "baa", 2).reachable);
  CHECK_THROWS_AS(control_reach(pp, 0, "c", 2), PreconditionError);
}

TEST_CASE("lifting a projected run") {
  auto spec = fig2();
  Configuration start{0, vals({"0", "4.98", "2.52"}), ""};
  auto run = run_trace(spec, start, {TraceStep::progress(Rational::parse("2.47")), TraceStep::fire(0),
                                     TraceStep::progress(Rational::parse("2.89"))});
  GPath path = project_run(spec, run);
  DenseRun lifted = lift_witness(spec, path);
  CHECK(lifted.end().state == 1);
  CHECK(integral_parts(lifted.end().valuation) == DiscreteValuation{5, 2, 7});
  DenseRun moved = transfer_run(spec, lifted, start.valuation, run.end().valuation);
  CHECK(moved.end() == run.end());
}

TEST_CASE("separation agrees with direct evaluation") {
  std::mt19937_64 rng(5);
  auto var = [&](bool primed) {
    TermVar v;
    int kind = static_cast<int>(rng() % 3);
    v.kind = static_cast<TermVar::Kind>(kind);
    v.clock = static_cast<int>(rng() % 3);
    v.symbol = 'a';
    v.primed = primed;
    if (v.kind == TermVar::Kind::Count) v.clock = 0;
    return LinearTerm::variable(v);
  };
  for (int trial = 0; trial < 2000; ++trial) {
    LinearTerm t = LinearTerm::constant(static_cast<std::int64_t>(rng() % 7) - 3);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < terms; ++i) t = rng() % 2 ? LinearTerm::add(t, var(rng() % 2)) : LinearTerm::sub(t, var(rng() % 2));
    MixedAtom a{rng() % 2 ? MixedAtom::Kind::Gt0 : MixedAtom::Kind::Eq0, t, 0};
    MixedLinearRelation l = MixedLinearRelation::atom(a);
    if (rng() % 3 == 0) l = MixedLinearRelation::negate(l);
    SeparatedRelation sep = separate_mixed(l);
    for (int s = 0; s < 5; ++s) {
      auto draw = [&]() {
        ClockValuation v{Rational(0)};
        for (int c = 1; c <= 2; ++c) v.push_back(Rational(static_cast<std::int64_t>(rng() % 40), 1 + rng() % 4 * 3));
        return v;
      };
      ClockValuation v0 = draw();
      v0[0] = Rational(0);
      ClockValuation v1 = draw();
      v1[0] = Rational(static_cast<std::int64_t>(rng() % 30), 7);
      Configuration src{0, v0, std::string(rng() % 3, 'a')};
      Configuration dst{0, v1, std::string(rng() % 3, 'a')};
      REQUIRE(eval_separated(sep, src, dst) == eval_mixed(l, src, dst));
    }
  }
}

TEST_CASE("bounded binary reachability") {
  auto spec = fig2();
  auto gt = [](LinearTerm t) { return MixedLinearRelation::atom({MixedAtom::Kind::Gt0, std::move(t), 0}); };
  TermVar x1p{TermVar::Kind::Dense, 1, 0, true};
  TermVar x2p{TermVar::Kind::Dense, 2, 0, true};
  TermVar x2{TermVar::Kind::Dense, 2, 0, false};

  QueryBounds b{3, 0, 6, std::nullopt};
  auto none = binreach_query(spec, gt(LinearTerm::sub(LinearTerm::variable(x1p), LinearTerm::constant(100))), b);
  CHECK(none.verdict == QueryResult::Verdict::NoWitnessWithinBounds);
  CHECK(none.diagnostics.evaluations > 0);

  auto unsat = binreach_query(spec, gt(LinearTerm::sub(LinearTerm::variable(x2), LinearTerm::variable(x2))), b);
  CHECK(unsat.verdict == QueryResult::Verdict::NoWitnessWithinBounds);
  CHECK(unsat.diagnostics.evaluations == 0);

  auto rel = gt(LinearTerm::sub(LinearTerm::sub(LinearTerm::variable(x2p), LinearTerm::variable(x2)), LinearTerm::constant(1)));
  auto found = binreach_query(spec, rel, b);
  REQUIRE(found.verdict == QueryResult::Verdict::WitnessFound);
  REQUIRE(found.witness.has_value());
  CHECK(eval_mixed(rel, found.witness->start(), found.witness->end()));
  CHECK(run_trace(spec, found.witness->start(), found.witness->steps).end() == found.witness->end());
}
