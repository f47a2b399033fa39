// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ptapat/pattern.hpp"

using namespace ptapat;

namespace {

ClockValuation vals(std::initializer_list<const char*> xs) {
  ClockValuation v;
  for (const char* x : xs) v.push_back(Rational::parse(x));
  return v;
}

using P = std::vector<std::vector<TaggedIndex>>;

const ClockValuation kV0 = vals({"0", "3.118", "5.118", "2", "1.876"});
const ClockValuation kV1 = vals({"4.296", "1.732", "1.414", "5.289", "3.732"});

Pattern eta1() {
  return Pattern::from_positions(
      P{{{0, 0}, {3, 0}}, {{1, 0}, {2, 0}, {2, 1}}, {{1, 1}, {4, 1}}, {{0, 1}}, {{4, 0}}, {{3, 1}}}, 4);
}

Pattern eta2() {
  return Pattern::from_positions(
      P{{{0, 0}, {3, 0}}, {{1, 0}, {2, 0}, {2, 1}}, {{0, 1}, {1, 1}, {4, 1}}, {{4, 0}}, {{3, 1}}}, 4);
}

Pattern eta3() {
  return Pattern::from_positions(
      P{{{0, 0}, {3, 0}}, {{1, 0}, {2, 0}, {2, 1}}, {{0, 1}}, {{1, 1}, {4, 1}}, {{4, 0}}, {{3, 1}}}, 4);
}

}  // namespace

TEST_CASE("relative representation") {
  CHECK(relative_representation(kV1) == vals({"4.704", "1.436", "1.118", "5.993", "3.436"}));
  CHECK(relative_representation(vals({"4.564", "2", "1.682", "5.557", "4"})) ==
        vals({"4.436", "2.436", "1.118", "5.993", "4.436"}));
  CHECK(relative_representation(kV0) == kV0);
}

TEST_CASE("pattern of a pair") {
  CHECK(pattern_of(kV0, kV1) == eta1());
  CHECK(pattern_of(vals({"0", "0", "0"}), vals({"0", "0", "0"})) == Pattern::all_in_one(2));
  CHECK(pattern_of(kV0, progress_valuation(kV1, Rational::parse("0.268"))) == eta2());
  CHECK_THROWS_AS(pattern_of(kV1, kV1), PreconditionError);
}

TEST_CASE("init pattern") {
  Pattern init = init_pattern(eta1());
  CHECK(init.positions() == P{{{0, 0}, {3, 0}, {0, 1}, {3, 1}}, {{1, 0}, {2, 0}, {1, 1}, {2, 1}}, {{4, 0}, {4, 1}}});
  CHECK(init == pattern_of(kV0, kV0));
  CHECK(init_pattern(init) == init);
  CHECK(init_pattern(Pattern::all_in_one(3)) == Pattern::all_in_one(3));
}

TEST_CASE("equivalence") {
  ValuationPair a{vals({"0", "4.98", "2.52"}), vals({"5.36", "2.89", "7.88"})};
  ValuationPair b{vals({"0", "4.89", "2.11"}), vals({"5.28", "2.77", "7.39"})};
  CHECK(equivalent(a, b));
  CHECK(equivalent(a, a));
  ValuationPair c{vals({"0", "4.89", "2.11"}), vals({"5.28", "3.77", "7.39"})};
  CHECK_FALSE(equivalent(a, c));
}

TEST_CASE("next on the worked patterns") {
  DiscreteValuation u{4, 1, 1, 5, 3};
  auto r = next(eta1(), u);
  CHECK(r.pattern == eta2());
  CHECK(r.increment == std::vector<int>{0, 1, 0, 0, 1});
  CHECK(r.discrete == DiscreteValuation{4, 2, 1, 5, 4});
  CHECK(r.discrete == integral_parts(progress_valuation(kV1, Rational::parse("0.268"))));
  auto r2 = next(eta2(), r.discrete);
  CHECK(r2.pattern == eta3());
  CHECK(r2.increment == std::vector<int>{0, 0, 0, 0, 0});
  CHECK(r2.discrete == r.discrete);

  auto reg = Pattern::all_in_one(1);
  auto r3 = next(reg, {0, 0});
  CHECK(r3.pattern.positions() == P{{{0, 0}, {1, 0}, {1, 1}}, {{0, 1}}});
  CHECK(r3.increment == std::vector<int>{0, 0});
  CHECK(r3.pattern == pattern_of(vals({"0", "0"}), vals({"0.001", "0.001"})));
}

TEST_CASE("classification") {
  auto c1 = classify(eta1());
  CHECK(c1.merge);
  CHECK_FALSE(c1.regulated);
  CHECK(c1.now_index == 3);
  auto c0 = classify(Pattern::all_in_one(2));
  CHECK(c0.regulated);
  CHECK(c0.split);
  CHECK(c0.now_index == 0);
  CHECK(classify(eta2()).split);
}

TEST_CASE("reset pattern") {
  auto r = reset_pattern(eta1(), {4, 1, 1, 5, 3}, {4});
  CHECK(r.pattern.positions() ==
        P{{{0, 0}, {3, 0}}, {{1, 0}, {2, 0}, {2, 1}}, {{1, 1}}, {{0, 1}, {4, 1}}, {{4, 0}}, {{3, 1}}});
  CHECK(r.discrete == DiscreteValuation{4, 1, 1, 5, 0});
  CHECK(r.pattern == pattern_of(kV0, reset_valuation(kV1, {4})));
  auto same = reset_pattern(eta1(), {4, 1, 1, 5, 3}, {});
  CHECK(same.pattern == eta1());
  auto all = reset_pattern(eta1(), {4, 1, 1, 5, 3}, {1, 2, 3, 4});
  CHECK(all.discrete == DiscreteValuation{4, 0, 0, 0, 0});
  for (int j = 1; j <= 4; ++j) CHECK(all.pattern.position_of(j, 1) == all.pattern.now_index());
  CHECK_THROWS_AS(reset_pattern(eta1(), {4, 1, 1, 5, 3}, {0}), PreconditionError);
}

TEST_CASE("pattern rings") {
  CHECK(pattern_ring(eta1()).size() == 11);
  CHECK(pattern_ring(Pattern::all_in_one(1)).size() == 3);
  for (const auto& eta : enumerate_patterns(2)) {
    auto ring = pattern_ring(eta);
    const int n = eta.size() - 1;
    const int m = static_cast<int>(ring.size()) - 1;
    CHECK(m == (classify(eta).merge ? 2 * n : 2 * (n + 1)));
    DiscreteValuation u{0, 3, 7};
    for (int s = 0; s < m; ++s) u = next(ring[s], u).discrete;
    CHECK(u == DiscreteValuation{1, 4, 8});
  }
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_patterns(1).size() == 26);
  CHECK(enumerate_patterns(2).size() == 1082);
  std::size_t regulated = 0;
  for (const auto& p : enumerate_patterns(2)) regulated += classify(p).regulated;
  CHECK(regulated == 150);
}

TEST_CASE("fractional orderings from positions") {
  auto e = eta1();
  CHECK_FALSE(frac_atom_truth(e, {FracAtom::Kind::PosEq0, 2, 2}));
  CHECK(frac_atom_dense({FracAtom::Kind::PosGt0, 2, 2}, kV1));
  for (int j = 1; j <= 4; ++j) CHECK(frac_atom_truth(e, {FracAtom::Kind::OrderEq, j, j}));
  auto r = reset_pattern_only(e, {4});
  CHECK(frac_atom_truth(r, {FracAtom::Kind::PosEq0, 4, 4}));
}

TEST_CASE("rewritten constraints and specialization") {
  std::mt19937_64 rng(11);
  const CmpOp ops[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Eq, CmpOp::Ge, CmpOp::Gt};
  for (int n = 0; n < 2000; ++n) {
    ClockValuation v0{Rational(0)};
    ClockValuation v{Rational(static_cast<std::int64_t>(rng() % 40), 4)};
    v0.push_back(Rational(static_cast<std::int64_t>(rng() % 12), 4));
    v0.push_back(Rational(static_cast<std::int64_t>(rng() % 12), 4));
    v.push_back(Rational(static_cast<std::int64_t>(rng() % 16), 4));
    v.push_back(Rational(static_cast<std::int64_t>(rng() % 16), 4));
    ClockAtom a{static_cast<int>(rng() % 2) + 1, 0, ops[rng() % 5], static_cast<std::int64_t>(rng() % 4)};
    if (rng() % 2) a.j = 3 - a.i;
    auto c = ClockConstraint::atom(a);
    const bool direct = eval_clock_constraint(c, v);
    CHECK(eval_rewritten(rewrite_constraint(c), v) == direct);
    CHECK(eval_discrete_constraint(specialize(c, pattern_of(v0, v)), integral_parts(v)) == direct);
  }
}
