// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include "ptapat/lemmas.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ptapat/dense.hpp"
#include "ptapat/pattern.hpp"
#include "ptapat/reach.hpp"
#include "rng.hpp"

namespace ptapat {

std::uint64_t SuiteReport::failures() const {
  std::uint64_t n = 0;
  for (const auto& c : checks) n += c.failures;
  return n;
}

CheckTally& SuiteReport::tally(const std::string& name) {
  for (auto& c : checks)
    if (c.name == name) return c;
  checks.push_back(CheckTally{name, 0, 0, ""});
  return checks.back();
}

const CheckTally* SuiteReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string SuiteReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << suite << '/' << c.name << ": cases=" << c.cases << " failures=" << c.failures << '\n';
    if (c.failures) out << "  first counterexample: " << c.first_failure << '\n';
  }
  return out.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"progress", "reset", "tests", "backwards", "bisim", "sync"};
  return names;
}

namespace {

using detail::Rng;

std::string show(const ClockValuation& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_display();
  return s + ")";
}

std::string show(const std::vector<int>& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "}";
}

void record(SuiteReport& rep, const std::string& check, bool ok, const std::string& detail) {
  CheckTally& t = rep.tally(check);
  ++t.cases;
  if (!ok) {
    if (t.failures == 0) t.first_failure = detail;
    ++t.failures;
  }
}

Rational small_rational(Rng& rng, std::int64_t hi) {
  static const std::int64_t dens[] = {1, 2, 3, 4, 6, 8, 12};
  const std::int64_t den = dens[rng.range(0, 6)];
  return Rational(rng.range(0, hi * den), den);
}

ClockValuation random_initial(Rng& rng, int k) {
  ClockValuation v0(k + 1);
  for (int c = 1; c <= k; ++c) v0[c] = small_rational(rng, 4);
  return v0;
}

ValuationPair random_pair(Rng& rng, int k) {
  ClockValuation v0 = random_initial(rng, k);
  ClockValuation v(k + 1);
  v[0] = small_rational(rng, 5);
  for (int c = 1; c <= k; ++c) v[c] = rng.chance(15) ? Rational(0) : small_rational(rng, 6);
  return {v0, v};
}

std::vector<int> random_subset(Rng& rng, int k) {
  std::vector<int> r;
  for (int c = 1; c <= k; ++c)
    if (rng.coin()) r.push_back(c);
  return r;
}

/// Strictly increasing values in [0, 1) starting at 0.
std::vector<Rational> random_position_values(Rng& rng, int positions) {
  std::set<Rational> picked{Rational(0)};
  while (static_cast<int>(picked.size()) < positions) {
    const std::int64_t den = rng.range(2, 60);
    picked.insert(Rational(rng.range(1, den - 1), den));
  }
  return {picked.begin(), picked.end()};
}

ValuationPair equivalent_pair(Rng& rng, const ClockValuation& v0, const ClockValuation& v) {
  Pattern eta = pattern_of(v0, v);
  return realize_pair(eta, integral_parts(v0), integral_parts(v), random_position_values(rng, eta.size()));
}

/// A delay after which the pair has exactly one pattern change.
Rational one_change_delta(Rng& rng, const ClockValuation& v0, const ClockValuation& v) {
  std::vector<Rational> events = pattern_event_times(v0, v, Rational(1));
  const bool at_start = !events.empty() && events.front().sign() == 0;
  std::optional<Rational> first;
  for (const auto& t : events) {
    if (t.sign() > 0) {
      first = t;
      break;
    }
  }
  if (!first) first = Rational(1);
  if (!at_start) return *first;
  const std::int64_t den = rng.range(2, 9);
  return *first * Rational(rng.range(1, den - 1), den);
}

/// A delay with no pattern change, or nullopt at a split pattern.
std::optional<Rational> no_change_delta(Rng& rng, const ClockValuation& v0, const ClockValuation& v) {
  std::vector<Rational> events = pattern_event_times(v0, v, Rational(1));
  if (!events.empty() && events.front().sign() == 0) return std::nullopt;
  Rational first = events.empty() ? Rational(1) : events.front();
  const std::int64_t den = rng.range(2, 9);
  return first * Rational(rng.range(1, den - 1), den);
}

ClockConstraint constraint_from(Rng& rng, int k, std::int64_t max_constant, int depth) {
  const int choice = depth <= 0 ? 0 : static_cast<int>(rng.range(0, 4));
  if (choice <= 1) {
    ClockAtom a;
    a.i = static_cast<int>(rng.range(1, k));
    a.j = k > 1 && rng.chance(40) ? static_cast<int>(rng.range(1, k)) : 0;
    if (a.j == a.i) a.j = 0;
    a.op = static_cast<CmpOp>(rng.range(0, 4));
    a.d = rng.range(0, max_constant);
    return ClockConstraint::atom(a);
  }
  if (choice == 2) return ClockConstraint::negate(constraint_from(rng, k, max_constant, depth - 1));
  if (choice == 3)
    return ClockConstraint::conj(constraint_from(rng, k, max_constant, depth - 1), constraint_from(rng, k, max_constant, depth - 1));
  return ClockConstraint::disj(constraint_from(rng, k, max_constant, depth - 1), constraint_from(rng, k, max_constant, depth - 1));
}

std::string random_word(Rng& rng, const std::string& alphabet, int max_len) {
  std::string w;
  if (alphabet.empty()) return w;
  const int len = static_cast<int>(rng.range(0, max_len));
  for (int i = 0; i < len; ++i) w += alphabet[rng.range(0, static_cast<std::int64_t>(alphabet.size()) - 1)];
  return w;
}

// ---------------------------------------------------------------------------

void suite_progress(SuiteReport& rep, std::uint64_t cases, Rng& rng) {
  for (std::uint64_t n = 0; n < cases; ++n) {
    const int k = static_cast<int>(rng.range(1, 4));
    auto [v0, v] = random_pair(rng, k);
    const Pattern eta = pattern_of(v0, v);
    const DiscreteValuation u = integral_parts(v);
    Rational delta;
    switch (rng.range(0, 2)) {
      case 0: delta = one_change_delta(rng, v0, v); break;
      case 1: delta = Rational(rng.range(1, 24), 12); break;
      default: {
        auto events = pattern_event_times(v0, v, Rational(2));
        std::vector<Rational> positive;
        for (const auto& t : events)
          if (t.sign() > 0) positive.push_back(t);
        if (positive.empty()) {
          delta = Rational(1, 2);
        } else {
          const std::size_t i = rng.range(0, static_cast<std::int64_t>(positive.size()) - 1);
          delta = rng.coin() || i == 0 ? positive[i] : (positive[i] + positive[i - 1]) / Rational(2);
        }
      }
    }
    const ClockValuation after = progress_valuation(v, delta);
    const auto traj = pattern_trajectory(v0, v, delta);
    const std::size_t changes = traj.size() - 1;
    const std::string where = "v0=" + show(v0) + " v=" + show(v) + " delta=" + delta.to_display();

    const bool one_change = changes == 1 && traj[1] == next_pattern(eta);
    const NextResult nr = next(eta, u);
    const bool next_matches = nr.pattern == pattern_of(v0, after) && nr.discrete == integral_parts(after);
    record(rep, "next-oracle", one_change == next_matches, where);

    if (changes == 0) record(rep, "no-change-integral", integral_parts(after) == u, where);

    // The change bounds get their own delta on the right side of 1.
    Rational small = delta;
    if (small > Rational(1)) {
      small = rng.rational(0, 1, 1000);
      if (small.sign() == 0) small = Rational(1);
    }
    const Rational big = delta >= Rational(1) ? delta : rng.rational(1, 3, 1000);
    const std::size_t small_changes = pattern_trajectory(v0, v, small).size() - 1;
    const std::size_t big_changes = pattern_trajectory(v0, v, big).size() - 1;
    record(rep, "max-changes", small_changes <= static_cast<std::size_t>(4 * (k + 1)),
           where + " small=" + small.to_display());
    record(rep, "min-changes", big_changes >= 1, where + " big=" + big.to_display());
  }
}

void suite_reset(SuiteReport& rep, std::uint64_t cases, Rng& rng) {
  for (std::uint64_t n = 0; n < cases; ++n) {
    const int k = static_cast<int>(rng.range(1, 4));
    auto [v0, v] = random_pair(rng, k);
    const std::vector<int> r = random_subset(rng, k);
    const ResetResult rr = reset_pattern(pattern_of(v0, v), integral_parts(v), r);
    const ClockValuation after = reset_valuation(v, r);
    record(rep, "reset-oracle", rr.pattern == pattern_of(v0, after) && rr.discrete == integral_parts(after),
           "v0=" + show(v0) + " v=" + show(v) + " r=" + show(r));
  }
}

void suite_tests(SuiteReport& rep, std::uint64_t cases, Rng& rng) {
  for (std::uint64_t n = 0; n < cases; ++n) {
    const int k = static_cast<int>(rng.range(1, 4));
    auto [v0, v] = random_pair(rng, k);
    const Pattern eta = pattern_of(v0, v);
    const ClockConstraint c = constraint_from(rng, k, 3, static_cast<int>(rng.range(0, 3)));
    const std::string where = "v0=" + show(v0) + " v=" + show(v);
    const bool truth = eval_clock_constraint(c, v);

    record(rep, "specialize", truth == eval_discrete_constraint(specialize(c, eta), integral_parts(v)), where);
    record(rep, "rewrite", truth == eval_rewritten(rewrite_constraint(c), v), where);

    FracAtom fa;
    fa.kind = static_cast<FracAtom::Kind>(rng.range(0, 3));
    fa.i = static_cast<int>(rng.range(1, k));
    fa.j = static_cast<int>(rng.range(1, k));
    record(rep, "densetest", frac_atom_truth(eta, fa) == frac_atom_dense(fa, v), where);

    auto [w0, w] = equivalent_pair(rng, v0, v);
    record(rep, "equivalent-pairs", eval_clock_constraint(c, w) == truth, where + " w0=" + show(w0) + " w=" + show(w));

    std::optional<Rational> delta = rng.coin() ? std::optional<Rational>(one_change_delta(rng, v0, v)) : no_change_delta(rng, v0, v);
    if (!delta) delta = one_change_delta(rng, v0, v);
    const bool whole = !first_violation(c, v, *delta).has_value();
    const bool ends = truth && eval_clock_constraint(c, progress_valuation(v, *delta));
    record(rep, "endpoints", whole == ends, where + " delta=" + delta->to_display());
  }
}

bool nonnegative(const ClockValuation& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.sign() >= 0; });
}

DenseRun random_start_run(Rng& rng, const PtaSpec& spec, int max_len) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Configuration start{static_cast<int>(rng.range(0, static_cast<std::int64_t>(spec.states.size()) - 1)),
                        random_initial(rng, spec.k()), random_word(rng, spec.stack_alphabet, 2)};
    if (!eval_clock_constraint(spec.invariants[start.state], start.valuation)) continue;
    const int len = static_cast<int>(rng.range(1, max_len));
    try {
      return random_run(spec, start, len, rng.bits());
    } catch (const StepError&) {
    }
  }
  throw StepError(StepErrorKind::DeadEnd, "no run found");
}

void suite_backwards(SuiteReport& rep, std::uint64_t cases, Rng& rng) {
  for (std::uint64_t n = 0; n < cases; ++n) {
    const int k = static_cast<int>(rng.range(1, 4));
    auto [v0, v] = random_pair(rng, k);

    const Rational delta1 = rng.coin() ? one_change_delta(rng, v0, v) : Rational(rng.range(1, 30), 12);
    auto [p0, p] = equivalent_pair(rng, v0, progress_valuation(v, delta1));
    const std::string where = "v0=" + show(v0) + " v=" + show(v) + " delta=" + delta1.to_display() + " target=" + show(p);
    try {
      ProgressWitness pw = backward_progress_witness(v0, v, delta1, p0, p);
      const bool ok = pw.delta.sign() > 0 && nonnegative(pw.valuation) && progress_valuation(pw.valuation, pw.delta) == p &&
                      equivalent({v0, v}, {p0, pw.valuation});
      record(rep, "backward-progress", ok, where);
    } catch (const std::exception& e) {
      record(rep, "backward-progress", false, where + " threw " + e.what());
    }

    const std::vector<int> r = random_subset(rng, k);
    auto [q0, q] = equivalent_pair(rng, v0, reset_valuation(v, r));
    const std::string rwhere = "v0=" + show(v0) + " v=" + show(v) + " r=" + show(r) + " target=" + show(q);
    try {
      ClockValuation w = backward_reset_witness(v0, v, r, q0, q);
      record(rep, "backward-reset", nonnegative(w) && reset_valuation(w, r) == q && equivalent({v0, v}, {q0, w}), rwhere);
    } catch (const std::exception& e) {
      record(rep, "backward-reset", false, rwhere + " threw " + e.what());
    }

    // Transfer of a whole run onto an equivalent endpoint pair.
    const std::uint64_t spec_seed = rng.bits();
    PtaSpec spec = random_small_spec(spec_seed);
    DenseRun run;
    try {
      run = random_start_run(rng, spec, 8);
    } catch (const StepError&) {
      continue;
    }
    auto [t0, t] = equivalent_pair(rng, run.start().valuation, run.end().valuation);
    const std::string twhere = "spec seed " + std::to_string(spec_seed) + " end=" + show(run.end().valuation) + " target=" + show(t);
    try {
      DenseRun moved = transfer_run(spec, run, t0, t);
      DenseRun replay = run_trace(spec, moved.start(), moved.steps);
      const bool ok = moved.start().valuation == t0 && moved.end().valuation == t && moved.end().state == run.end().state &&
                      moved.end().stack == run.end().stack && replay.checkpoints == moved.checkpoints;
      record(rep, "transfer-run", ok, twhere);
    } catch (const std::exception& e) {
      record(rep, "transfer-run", false, twhere + " threw " + e.what());
    }
  }
}

std::int64_t max_integral(const GPath& path) {
  std::int64_t m = 0;
  for (const auto& c : path.configs)
    for (auto u : c.discrete) m = std::max(m, u);
  return m;
}

void suite_bisim(SuiteReport& rep, std::uint64_t cases, Rng& rng) {
  for (std::uint64_t n = 0; n < cases; ++n) {
    const std::uint64_t spec_seed = rng.bits();
    const PtaSpec spec = random_small_spec(spec_seed);
    const std::string where = "spec seed " + std::to_string(spec_seed);

    try {
      DenseRun run = random_start_run(rng, spec, 8);
      GPath path = project_run(spec, run);
      record(rep, "project", is_g_path(spec, path), where);
      int max_stack = 0;
      for (const auto& c : path.configs) max_stack = std::max(max_stack, static_cast<int>(c.stack.size()));
      GReachResult reach = g_reach_bounded(spec, path.configs.front(),
                                           {static_cast<int>(path.steps.size()), max_stack, max_integral(path)});
      record(rep, "closure", reach.find(path.configs.back()).has_value(), where);
    } catch (const StepError&) {
      // Dead-end automaton from this start: nothing to project.
    } catch (const std::exception& e) {
      record(rep, "project", false, where + " threw " + e.what());
    }

    const int s = static_cast<int>(rng.range(0, static_cast<std::int64_t>(spec.states.size()) - 1));
    const ClockValuation v0 = random_initial(rng, spec.k());
    const Configuration c0{s, v0, random_word(rng, spec.stack_alphabet, 2)};
    const GConfiguration g0 = abstract_config(v0, c0);
    GReachResult reach = g_reach_bounded(spec, g0, {8, 3, 5});
    const int node = static_cast<int>(rng.range(0, static_cast<std::int64_t>(reach.nodes.size()) - 1));
    try {
      GPath path = extract_path(reach, node);
      DenseRun lifted = lift_witness(spec, path);
      DenseRun replay = run_trace(spec, lifted.start(), lifted.steps);
      const bool ok = replay.checkpoints == lifted.checkpoints && lifted.end().state == reach.nodes[node].state &&
                      lifted.end().stack == reach.nodes[node].stack &&
                      integral_parts(lifted.end().valuation) == reach.nodes[node].discrete;
      record(rep, "lift", ok, where + " node " + std::to_string(node));
    } catch (const std::exception& e) {
      record(rep, "lift", false, where + " node " + std::to_string(node) + " threw " + e.what());
    }
  }
}

const std::vector<Pattern>& regulated_patterns(int k) {
  static std::map<int, std::vector<Pattern>> cache;
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  std::vector<Pattern> out;
  for (const Pattern& p : enumerate_patterns(k))
    if (classify(p).regulated) out.push_back(p);
  return cache.emplace(k, std::move(out)).first->second;
}

void suite_sync(SuiteReport& rep, std::uint64_t cases, Rng& rng) {
  for (std::uint64_t n = 0; n < cases; ++n) {
    const int k = static_cast<int>(rng.range(1, 3));
    const auto& starts = regulated_patterns(k);
    PPath path;
    path.start = starts[rng.range(0, static_cast<std::int64_t>(starts.size()) - 1)];
    const int len = static_cast<int>(rng.range(0, 14));
    for (int i = 0; i < len; ++i) {
      if (rng.chance(35))
        path.steps.emplace_back(random_subset(rng, k));
      else
        path.steps.emplace_back(std::nullopt);
    }
    DiscreteValuation u(k + 1, 0);
    for (int c = 1; c <= k; ++c) u[c] = rng.range(0, 5);
    std::string where = "start " + encode_pattern(path.start) + " steps";
    for (const auto& st : path.steps) where += st ? " r" + show(*st) : " p";
    record(rep, "claim", check_sync_claim(path, u, SyncRule::Corrected), where);
    record(rep, "add1", check_add1(path, u, SyncRule::Corrected), where);
  }
}

}  // namespace

SuiteReport run_suite(const std::string& suite, std::uint64_t cases, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = suite;
  Rng rng(seed);
  if (suite == "progress") suite_progress(rep, cases, rng);
  else if (suite == "reset") suite_reset(rep, cases, rng);
  else if (suite == "tests") suite_tests(rep, cases, rng);
  else if (suite == "backwards") suite_backwards(rep, cases, rng);
  else if (suite == "bisim") suite_bisim(rep, cases, rng);
  else if (suite == "sync") suite_sync(rep, cases, rng);
  else throw PreconditionError("unknown suite '" + suite + "'");
  return rep;
}

ClockConstraint random_clock_constraint(std::uint64_t seed, int k, std::int64_t max_constant, int depth) {
  Rng rng(seed);
  return constraint_from(rng, k, max_constant, depth);
}

PtaSpec random_small_spec(std::uint64_t seed, const SpecShape& shape) {
  Rng rng(seed);
  PtaSpec spec;
  const int states = static_cast<int>(rng.range(shape.min_states, shape.max_states));
  const int k = static_cast<int>(rng.range(1, shape.max_clocks));
  for (int s = 0; s < states; ++s) spec.states.push_back("s" + std::to_string(s));
  for (int c = 1; c <= k; ++c) spec.clocks.push_back("x" + std::to_string(c));
  const int symbols = static_cast<int>(rng.range(0, shape.max_symbols));
  for (int i = 0; i < symbols; ++i) spec.stack_alphabet += static_cast<char>('a' + i);
  for (int s = 0; s < states; ++s) {
    if (rng.chance(60)) {
      spec.invariants.push_back(ClockConstraint::truth(true));
    } else {
      ClockAtom a{static_cast<int>(rng.range(1, k)), 0, rng.coin() ? CmpOp::Le : CmpOp::Lt, rng.range(1, shape.max_constant)};
      spec.invariants.push_back(ClockConstraint::atom(a));
    }
  }
  const int edges = static_cast<int>(rng.range(1, 2 * states));
  for (int i = 0; i < edges; ++i) {
    Edge e;
    e.from = static_cast<int>(rng.range(0, states - 1));
    e.to = static_cast<int>(rng.range(0, states - 1));
    if (rng.chance(70)) e.guard = constraint_from(rng, k, shape.max_constant, static_cast<int>(rng.range(0, 2)));
    e.resets = random_subset(rng, k);
    if (!spec.stack_alphabet.empty() && rng.chance(50)) {
      e.pop = spec.stack_alphabet[rng.range(0, static_cast<std::int64_t>(spec.stack_alphabet.size()) - 1)];
      e.push = random_word(rng, spec.stack_alphabet, 2);
    }
    spec.edges.push_back(std::move(e));
  }
  validate_spec(spec);
  return spec;
}

bool check_add1(const PPath& path, const DiscreteValuation& u_start, SyncRule rule) {
  if (!classify(path.start).regulated) throw PreconditionError("add-1 checks start at a regulated pattern");
  const int k = path.start.k();
  Pattern eta = path.start;
  DiscreteValuation y = u_start;
  DiscreteValuation seg = u_start;
  std::vector<bool> reset(k + 1, false);
  for (const auto& step : path.steps) {
    if (step) {
      const bool at_start = classify(eta).regulated;
      ResetResult rr = reset_pattern(eta, y, *step);
      eta = rr.pattern;
      y = rr.discrete;
      for (int i : *step) {
        if (rule == SyncRule::Corrected && at_start)
          seg[i] = 0;
        else
          reset[i] = true;
      }
      continue;
    }
    NextResult nr = next(eta, y);
    eta = nr.pattern;
    y = nr.discrete;
    if (!classify(eta).regulated) continue;
    for (int i = 1; i <= k; ++i) {
      if (reset[i] ? y[i] != 0 : y[i] != seg[i] + 1) return false;
    }
    seg = y;
    std::fill(reset.begin(), reset.end(), false);
  }
  for (int i = 1; i <= k; ++i)
    if (reset[i] && y[i] != 0) return false;
  return true;
}

}  // namespace ptapat
