// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "ptapat/text.hpp"

using namespace ptapat;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Diagnostic parse_failure(const std::string& text) {
  try {
    parse_automaton(text, "t.pta");
  } catch (const ParseError& e) {
    return e.diagnostic();
  }
  FAIL("expected a parse error");
  return {};
}

LinearTerm random_term(std::mt19937_64& rng, int depth) {
  int pick = depth <= 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 4);
  if (pick == 0) return LinearTerm::constant(static_cast<std::int64_t>(rng() % 5));
  if (pick == 1) {
    TermVar v;
    v.kind = static_cast<TermVar::Kind>(rng() % 3);
    v.clock = v.kind == TermVar::Kind::Count ? 0 : static_cast<int>(rng() % 3);
    v.symbol = v.kind == TermVar::Kind::Count ? "ab"[rng() % 2] : 0;
    v.primed = rng() % 2;
    return LinearTerm::variable(v);
  }
  if (pick == 2) return LinearTerm::add(random_term(rng, depth - 1), random_term(rng, depth - 1));
  return LinearTerm::sub(random_term(rng, depth - 1), random_term(rng, depth - 1));
}

MixedLinearRelation random_relation(std::mt19937_64& rng, int depth) {
  int pick = depth <= 0 ? 0 : static_cast<int>(rng() % 3);
  if (pick == 1) return MixedLinearRelation::negate(random_relation(rng, depth - 1));
  if (pick == 2) return MixedLinearRelation::conj(random_relation(rng, depth - 1), random_relation(rng, depth - 1));
  LinearTerm t = random_term(rng, 2);
  if (!t.has_dense() && rng() % 3 == 0) return MixedLinearRelation::atom({MixedAtom::Kind::Mod, t, 1 + static_cast<std::int64_t>(rng() % 4)});
  return MixedLinearRelation::atom({rng() % 2 ? MixedAtom::Kind::Gt0 : MixedAtom::Kind::Eq0, t, 0});
}

}  // namespace

TEST_CASE("automaton round trip") {
  for (const char* file : {"fig2.pta", "minimal.pta", "pushpop.pta", "unsat.pta"}) {
    const std::string text = slurp(std::string(PTAPAT_MODELS_DIR) + "/" + file);
    PtaSpec spec = parse_automaton(text, file);
    PtaSpec again = parse_automaton(print_automaton(spec));
    CHECK(again == spec);
    CHECK(print_automaton(again) == print_automaton(spec));
  }
  PtaSpec minimal = parse_automaton(slurp(std::string(PTAPAT_MODELS_DIR) + "/minimal.pta"));
  CHECK(minimal.k() == 2);
  CHECK(minimal.states.size() == 2);
  CHECK(minimal.edges.size() == 1);
  CHECK(minimal.edges[0].resets == std::vector<int>{2});
  CHECK(minimal.cap_constant() == 3);
}

TEST_CASE("automaton errors carry spans") {
  auto d = parse_failure("pta {\n  clocks x;\n  state a invariant true;\n  state b invariant true;\n  edge a -> b pop x push \"yx\";\n}\n");
  CHECK(d.span.line == 5);
  CHECK(d.span.column == 15);
  CHECK(d.span.length == 3);
  CHECK(d.message.find("without a stack") != std::string::npos);

  d = parse_failure("pta { clocks x; state a invariant true; state a invariant true; }");
  CHECK(d.message == "duplicate state 'a'");
  CHECK(d.span.column == 47);

  d = parse_failure("pta { clocks x; state a invariant y < 1; }");
  CHECK(d.message == "unknown clock 'y'");

  d = parse_failure("pta { clocks x; state a invariant x < -1; }");
  CHECK(d.message.find("non-negative") != std::string::npos);

  d = parse_failure("pta { clocks x; state a invariant true; edge a -> c; }");
  CHECK(d.message == "unknown state 'c'");
  CHECK(d.span.length == 1);

  d = parse_failure("pta { clocks x; stack ab; state a invariant true; }");
  CHECK(d.message.find("single characters") != std::string::npos);

  d = parse_failure("pta { clocks x; stack a; state s invariant true; edge s -> s pop a push \"ac\"; }");
  CHECK(d.message == "unknown stack symbol 'c'");
  CHECK(d.span.column == 75);

  d = parse_failure("pta { clocks x; state s invariant true; } extra");
  CHECK(d.message.find("unexpected input") != std::string::npos);
  d = parse_failure("pta { state s invariant true; }");
  CHECK(d.message == "missing clocks declaration");
  d = parse_failure("pta { clocks x; state s invariant x < 1 $ }");
  CHECK(d.message == "unexpected character '$'");
}

TEST_CASE("query parsing") {
  auto l = parse_query("x3' - (x1 + x2) > #a(w) - #b(w')", 3, "ab");
  CHECK(print_query(l) == "x3' - (x1 + x2) - (#a(w) - #b(w')) > 0");

  auto trivial = parse_query("x1 = x1", 1, "");
  CHECK(normalize_relation(trivial).kind() == BoolKind::True);

  auto mod = parse_query("(y1 mod 2 = 0) && x1 > 0", 1, "");
  REQUIRE(mod.kind() == BoolKind::And);
  CHECK(mod.child(0).atom_value().kind == MixedAtom::Kind::Mod);
  CHECK(print_query(mod) == "((u1 mod 2 = 0) && x1 > 0)");

  CHECK_THROWS_AS(parse_query("(x1 mod 2 = 0)", 1, ""), ParseError);
  CHECK_THROWS_AS(parse_query("#c(w) > 0", 1, "ab"), ParseError);
  CHECK_THROWS_AS(parse_query("x4 > 0", 3, ""), ParseError);
  CHECK_THROWS_AS(parse_query("x1 >", 1, ""), ParseError);

  auto paren = parse_query("(x1 + x2) >= 3 || !(x1' != 2*x2)", 2, "");
  CHECK(print_query(paren) == "!((!(!(3 - (x1 + x2) > 0)) && !(!(!(x1' - (x2 + x2) = 0)))))");

  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto r = random_relation(rng, 3);
    auto back = parse_query(print_query(r), 2, "ab");
    REQUIRE(back == r);
  }
}

TEST_CASE("json and dot output") {
  PtaSpec spec = parse_automaton(slurp(std::string(PTAPAT_MODELS_DIR) + "/fig2.pta"));
  auto reach = g_reach_bounded(spec, GConfiguration{0, Pattern::all_in_one(2), {0, 0, 0}, ""}, {2, 0, 4});
  std::string dot = graph_dot(spec, reach);
  CHECK(dot == graph_dot(spec, reach));
  CHECK(dot.rfind("digraph G {", 0) == 0);
  CHECK(dot.find("n0 -> n1") != std::string::npos);

  QueryResult r;
  r.diagnostics.time_ms = 12.5;
  std::string j = query_json(spec, r, {false});
  CHECK(j.find("\"time_ms\": 0.0") != std::string::npos);
  CHECK(j.rfind("{\n  \"verdict\": \"no-witness-within-bounds\"", 0) == 0);
}
