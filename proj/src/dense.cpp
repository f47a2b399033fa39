// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include "ptapat/dense.hpp"

#include <algorithm>

#include "rng.hpp"

namespace ptapat {

const char* step_error_name(StepErrorKind kind) {
  switch (kind) {
    case StepErrorKind::InvariantViolated: return "InvariantViolated";
    case StepErrorKind::NonPositiveDelta: return "NonPositiveDelta";
    case StepErrorKind::GuardFailed: return "GuardFailed";
    case StepErrorKind::SourceInvariantFailed: return "SourceInvariantFailed";
    case StepErrorKind::TargetInvariantFailed: return "TargetInvariantFailed";
    case StepErrorKind::StackTopMismatch: return "StackTopMismatch";
    case StepErrorKind::EmptyStack: return "EmptyStack";
    case StepErrorKind::UnknownEdge: return "UnknownEdge";
    case StepErrorKind::WrongState: return "WrongState";
    case StepErrorKind::DeadEnd: return "DeadEnd";
  }
  return "?";
}

std::vector<Rational> integer_breakpoints(const ClockValuation& v, const Rational& delta) {
  std::vector<Rational> out{Rational(0), delta};
  for (std::size_t i = 1; i < v.size(); ++i) {
    Rational frac = v[i].fractional();
    Rational t = frac.sign() == 0 ? Rational(1) : Rational(1) - frac;
    for (; t < delta; t += Rational(1)) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Rational> first_violation(const ClockConstraint& c, const ClockValuation& v, const Rational& delta) {
  const std::vector<Rational> points = integer_breakpoints(v, delta);
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (!eval_clock_constraint(c, progress_valuation(v, points[p]))) return points[p];
    if (p + 1 < points.size()) {
      Rational mid = (points[p] + points[p + 1]) / Rational(2);
      if (!eval_clock_constraint(c, progress_valuation(v, mid))) return mid;
    }
  }
  return std::nullopt;
}

namespace {

void check_config(const PtaSpec& spec, const Configuration& c) {
  if (c.state < 0 || c.state >= static_cast<int>(spec.states.size())) throw PreconditionError("configuration state out of range");
  check_valuation(c.valuation, spec.k());
}

}  // namespace

Configuration step_progress(const PtaSpec& spec, const Configuration& c, const Rational& delta) {
  check_config(spec, c);
  if (delta.sign() <= 0) throw StepError(StepErrorKind::NonPositiveDelta, "progress delta must be positive");
  if (auto bad = first_violation(spec.invariants[c.state], c.valuation, delta)) {
    throw StepError(StepErrorKind::InvariantViolated,
                    "invariant of " + spec.states[c.state] + " fails after " + bad->to_display(), *bad);
  }
  return {c.state, progress_valuation(c.valuation, delta), c.stack};
}

Configuration step_fire(const PtaSpec& spec, const Configuration& c, int edge_id) {
  check_config(spec, c);
  if (edge_id < 0 || edge_id >= static_cast<int>(spec.edges.size()))
    throw StepError(StepErrorKind::UnknownEdge, "no edge " + std::to_string(edge_id));
  const Edge& e = spec.edges[edge_id];
  if (e.from != c.state) throw StepError(StepErrorKind::WrongState, "edge does not leave " + spec.states[c.state]);
  if (!eval_clock_constraint(spec.invariants[e.from], c.valuation))
    throw StepError(StepErrorKind::SourceInvariantFailed, "source invariant fails");
  if (!eval_clock_constraint(e.guard, c.valuation)) throw StepError(StepErrorKind::GuardFailed, "guard fails");
  ClockValuation next = reset_valuation(c.valuation, e.resets);
  if (!eval_clock_constraint(spec.invariants[e.to], next))
    throw StepError(StepErrorKind::TargetInvariantFailed, "target invariant fails");
  StackWord stack = c.stack;
  if (e.pop) {
    if (stack.empty()) throw StepError(StepErrorKind::EmptyStack, "pop on empty stack");
    if (stack.front() != *e.pop) throw StepError(StepErrorKind::StackTopMismatch, "stack top does not match pop symbol");
    stack = e.push + stack.substr(1);
  }
  return {e.to, std::move(next), std::move(stack)};
}

DenseRun run_trace(const PtaSpec& spec, const Configuration& start, const std::vector<TraceStep>& steps) {
  check_config(spec, start);
  DenseRun run;
  run.checkpoints.push_back(start);
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const TraceStep& step = steps[s];
    try {
      if (step.kind == TraceStep::Kind::Progress) {
        run.checkpoints.push_back(step_progress(spec, run.checkpoints.back(), step.delta));
      } else {
        run.checkpoints.push_back(step_fire(spec, run.checkpoints.back(), step.edge));
      }
    } catch (const StepError& err) {
      throw StepError(err.kind(), "step " + std::to_string(s) + ": " + err.what(), err.witness(), static_cast<int>(s));
    }
    run.steps.push_back(step);
  }
  return run;
}

DenseRun random_run(const PtaSpec& spec, const Configuration& start, int length, std::uint64_t seed) {
  check_config(spec, start);
  detail::Rng rng(seed);
  DenseRun run;
  run.checkpoints.push_back(start);
  static const std::int64_t kDens[] = {1, 2, 4, 5, 10, 100, 1000};
  for (int step = 0; step < length; ++step) {
    const Configuration cur = run.checkpoints.back();
    const bool prefer_fire = rng.coin();
    bool done = false;
    for (int attempt = 0; attempt < 2 && !done; ++attempt) {
      const bool fire = (attempt == 0) == prefer_fire;
      if (fire) {
        std::vector<std::pair<int, Configuration>> enabled;
        for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e) {
          if (spec.edges[e].from != cur.state) continue;
          try {
            enabled.emplace_back(e, step_fire(spec, cur, e));
          } catch (const StepError&) {
          }
        }
        if (enabled.empty()) continue;
        auto& pick = enabled[rng.range(0, static_cast<std::int64_t>(enabled.size()) - 1)];
        run.steps.push_back(TraceStep::fire(pick.first));
        run.checkpoints.push_back(std::move(pick.second));
        done = true;
      } else {
        for (int tries = 0; tries < 40 && !done; ++tries) {
          const std::int64_t den = rng.chance(60) ? kDens[rng.range(0, 6)] : rng.range(1, 1000);
          // Later tries shrink towards small delays so tight invariants still admit a step.
          const std::int64_t top = tries < 20 ? 4 * den : std::max<std::int64_t>(1, den / (tries - 18));
          Rational delta(rng.range(1, top), den);
          try {
            run.checkpoints.push_back(step_progress(spec, cur, delta));
            run.steps.push_back(TraceStep::progress(delta));
            done = true;
          } catch (const StepError&) {
          }
        }
      }
    }
    if (!done) throw StepError(StepErrorKind::DeadEnd, "no legal step found at step " + std::to_string(step), std::nullopt, step);
  }
  return run;
}

// ---------------------------------------------------------------------------

namespace {

/// Relative fractions of every tagged index, slot order tag*(k+1)+clock.
std::vector<Rational> pair_values(const ClockValuation& v0, const ClockValuation& v) {
  const std::size_t n = v0.size();
  std::vector<Rational> out(2 * n);
  const Rational neg0 = (Rational(0) - v[0]).fractional();
  for (std::size_t c = 0; c < n; ++c) {
    out[c] = v0[c].fractional();
    out[n + c] = c == 0 ? neg0 : (v[c] - v[0]).fractional();
  }
  return out;
}

/// Distinct values of the pair other than the slot of 0^1, sorted.
std::vector<Rational> other_values(const ClockValuation& v0, const ClockValuation& v) {
  std::vector<Rational> vals = pair_values(v0, v);
  vals.erase(vals.begin() + static_cast<std::ptrdiff_t>(v0.size()));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

Rational gap_up(const std::vector<Rational>& sorted, const Rational& f) {
  auto it = std::upper_bound(sorted.begin(), sorted.end(), f);
  return (it == sorted.end() ? Rational(1) : *it) - f;
}

void require_pair(const ClockValuation& v0, const ClockValuation& v) {
  if (v0.empty() || v0[0].sign() != 0) throw PreconditionError("first valuation of a pair must be initial (x0 = 0)");
  if (v0.size() != v.size()) throw PreconditionError("valuations of a pair must have equal length");
}

}  // namespace

std::vector<Rational> pattern_event_times(const ClockValuation& v0, const ClockValuation& v, const Rational& delta) {
  require_pair(v0, v);
  const Rational f = (Rational(0) - v[0]).fractional();
  std::vector<Rational> out;
  for (const Rational& c : other_values(v0, v)) {
    for (Rational t = (f - c).fractional(); t <= delta; t += Rational(1)) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Pattern> pattern_trajectory(const ClockValuation& v0, const ClockValuation& v, const Rational& delta) {
  std::vector<Rational> points = pattern_event_times(v0, v, delta);
  points.push_back(Rational(0));
  points.push_back(delta);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Pattern> out;
  auto visit = [&](const Rational& t) {
    Pattern p = pattern_of(v0, progress_valuation(v, t));
    if (out.empty() || !(out.back() == p)) out.push_back(std::move(p));
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    visit(points[i]);
    if (i + 1 < points.size()) visit((points[i] + points[i + 1]) / Rational(2));
  }
  return out;
}

ProgressWitness backward_progress_witness(const ClockValuation& v0_1, const ClockValuation& v1, const Rational& delta1,
                                          const ClockValuation& v0_2, const ClockValuation& v2) {
  require_pair(v0_1, v1);
  require_pair(v0_2, v2);
  if (delta1.sign() < 0) throw PreconditionError("negative delta");
  if (!equivalent({v0_1, progress_valuation(v1, delta1)}, {v0_2, v2}))
    throw PreconditionError("backward progress: pairs are not equivalent");

  // Phases of pair 1 along [0, delta1]: true for an instant where 0^1
  // shares a position, false for an open stretch where it is alone.
  const std::vector<Rational> events = pattern_event_times(v0_1, v1, delta1);
  std::vector<bool> phases;
  phases.push_back(!events.empty() && events.front().sign() == 0);
  for (const Rational& t : events) {
    if (t.sign() == 0) continue;
    if (phases.back()) phases.push_back(false);
    phases.push_back(true);
  }
  const bool ends_on_event = !events.empty() && events.back() == delta1;
  if (!ends_on_event && phases.back() && delta1.sign() > 0) phases.push_back(false);

  const std::vector<Rational> others = other_values(v0_2, v2);
  Rational f = (Rational(0) - v2[0]).fractional();
  Rational total(0);
  auto move = [&](const Rational& step) {
    total += step;
    f = (f + step).fractional();
  };
  for (std::size_t p = phases.size(); p-- > 1;) {
    const Rational gap = gap_up(others, f);
    move(phases[p] ? gap / Rational(2) : gap);
  }
  if (phases.size() == 1 && delta1.sign() > 0) move(gap_up(others, f) / Rational(2));

  ClockValuation u = v2;
  for (auto& x : u) {
    x -= total;
    if (x.sign() < 0) throw PreconditionError("backward progress: witness would be negative");
  }
  return {total, std::move(u)};
}

ClockValuation backward_reset_witness(const ClockValuation& v0_1, const ClockValuation& v1, const std::vector<int>& r,
                                      const ClockValuation& v0_2, const ClockValuation& v2) {
  require_pair(v0_1, v1);
  require_pair(v0_2, v2);
  if (!equivalent({v0_1, reset_valuation(v1, r)}, {v0_2, v2}))
    throw PreconditionError("backward reset: pairs are not equivalent");
  const std::size_t n = v1.size();

  ClockValuation w = v2;
  std::vector<int> pending = r;
  std::sort(pending.begin(), pending.end());
  pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
  // Restore one clock at a time; pair 1 loses one reset per round.
  while (!pending.empty()) {
    const int j = pending.front();
    pending.erase(pending.begin());
    const Pattern target = pattern_of(v0_1, reset_valuation(v1, pending));
    const std::vector<Rational> vals = pair_values(v0_2, w);
    const std::size_t js = n + static_cast<std::size_t>(j);
    const int m = target.position_of(j, 1);
    std::optional<Rational> f;
    std::optional<Rational> below;
    std::optional<Rational> above;
    for (std::size_t s = 0; s < vals.size(); ++s) {
      if (s == js) continue;
      const int pos = target.slots()[s];
      if (pos == m) f = vals[s];
      if (pos == m - 1) below = vals[s];
      if (pos == m + 1) above = vals[s];
    }
    if (!f) {
      if (!below) throw std::logic_error("backward reset: position below is empty");
      f = (*below + above.value_or(Rational(1))) / Rational(2);
    }
    w[j] = Rational(split(v1[j]).integral) + (*f + w[0]).fractional();
  }
  return w;
}

DenseRun transfer_run(const PtaSpec& spec, const DenseRun& run1, const ClockValuation& v0_2, const ClockValuation& v2) {
  if (run1.checkpoints.size() != run1.steps.size() + 1) throw PreconditionError("malformed run");
  const ClockValuation& v0_1 = run1.start().valuation;
  if (!equivalent({v0_1, run1.end().valuation}, {v0_2, v2})) throw PreconditionError("transfer: end pairs are not equivalent");

  std::vector<TraceStep> steps(run1.steps.size());
  ClockValuation cur = v2;
  for (std::size_t s = run1.steps.size(); s-- > 0;) {
    const TraceStep& step = run1.steps[s];
    const ClockValuation& before = run1.checkpoints[s].valuation;
    if (step.kind == TraceStep::Kind::Progress) {
      ProgressWitness w = backward_progress_witness(v0_1, before, step.delta, v0_2, cur);
      steps[s] = TraceStep::progress(w.delta);
      cur = std::move(w.valuation);
    } else {
      cur = backward_reset_witness(v0_1, before, spec.edges.at(step.edge).resets, v0_2, cur);
      steps[s] = step;
    }
  }
  if (!(cur == v0_2)) throw std::logic_error("transfer: backward walk did not reach the initial valuation");
  Configuration start = run1.start();
  start.valuation = v0_2;
  DenseRun out = run_trace(spec, start, steps);
  if (!(out.end().valuation == v2) || out.end().state != run1.end().state || out.end().stack != run1.end().stack)
    throw std::logic_error("transfer: replay did not end at the prescribed configuration");
  return out;
}

}  // namespace ptapat
