// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include "ptapat/reach.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ptapat {

namespace {

// Shifted bounds in specialized constraints stay within [-1, M+1], so
// saturating one above that keeps every comparison exact.
std::int64_t saturation(std::int64_t m) { return m + 2; }

std::int64_t clamp_to(std::int64_t x, std::int64_t b) { return std::clamp(x, -b, b); }

bool frac_less(const Pattern& eta, int i, int j) {
  return frac_atom_truth(eta, FracAtom{FracAtom::Kind::OrderLt, i, j});
}

bool frac_positive(const Pattern& eta, int i) {
  return frac_atom_truth(eta, FracAtom{FracAtom::Kind::PosGt0, i, i});
}

}  // namespace

CappedValuation cap_abstract(const DiscreteValuation& u, const Pattern& eta, std::int64_t m) {
  const int k = eta.k();
  if (static_cast<int>(u.size()) != k + 1) throw PreconditionError("discrete valuation has the wrong length");
  const std::int64_t b = saturation(m);
  CappedValuation cv;
  cv.cap = m;
  cv.capped.resize(k + 1);
  for (int i = 0; i <= k; ++i) cv.capped[i] = std::min(u[i], b);
  cv.diffs.assign(k + 1, std::vector<std::int64_t>(k + 1, 0));
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      if (i == j) continue;
      cv.diffs[i][j] = clamp_to(u[i] - u[j] - (frac_less(eta, i, j) ? 1 : 0), b);
    }
  }
  return cv;
}

CappedValuation capped_next(const CappedValuation& c, const Pattern& eta) {
  const std::int64_t b = saturation(c.cap);
  const std::vector<int> inc = increment_vector(eta);
  CappedValuation out = c;
  for (std::size_t i = 0; i < out.capped.size(); ++i) out.capped[i] = std::min(out.capped[i] + inc[i], b);
  return out;
}

CappedValuation capped_reset(const CappedValuation& c, const Pattern& eta, const std::vector<int>& r) {
  const std::int64_t b = saturation(c.cap);
  const Pattern after = reset_pattern_only(eta, r);
  const int k = eta.k();
  std::vector<bool> in_r(k + 1, false);
  for (int j : r) in_r.at(j) = true;
  CappedValuation out = c;
  for (int j : r) out.capped[j] = 0;
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      if (i == j) continue;
      if (in_r[i] && in_r[j]) {
        out.diffs[i][j] = 0;
      } else if (in_r[i]) {
        out.diffs[i][j] = clamp_to(-out.capped[j] - (frac_positive(after, j) ? 1 : 0), b);
      } else if (in_r[j]) {
        out.diffs[i][j] = out.capped[i];
      }
    }
  }
  return out;
}

bool eval_capped(const DiscreteConstraint& c, const CappedValuation& cv, const Pattern& eta) {
  return c.evaluate([&](const IntegralAtom& a) {
    std::int64_t lhs = a.j == 0 ? cv.capped.at(a.i) : cv.diffs.at(a.i).at(a.j) + (frac_less(eta, a.i, a.j) ? 1 : 0);
    return compare_int(lhs, a.op, a.d);
  });
}

// ---------------------------------------------------------------------------
// post* saturation

namespace {

struct Control {
  int state = 0;
  Pattern pattern;
  CappedValuation cv;
};

std::string control_key(const Control& c) {
  std::string key = std::to_string(c.state);
  key += '/';
  for (auto s : c.pattern.slots()) key += static_cast<char>('a' + s);
  key += '/';
  for (auto u : c.cv.capped) key += std::to_string(u) + ",";
  key += '/';
  for (const auto& row : c.cv.diffs)
    for (auto d : row) key += std::to_string(d) + ",";
  return key;
}

struct PopRule {
  char symbol = 0;
  std::string push;
  int target = 0;
};

struct ControlMoves {
  bool computed = false;
  std::vector<int> internal;
  std::vector<PopRule> pops;
  std::vector<std::vector<int>> mids;  // per pop rule, intermediate states for long pushes
};

constexpr int kEps = -1;

class Saturation {
 public:
  Saturation(const PtaSpec& spec, int to) : spec_(spec), to_(to) {}

  ControlReachResult run(const Control& start, const StackWord& w) {
    final_ = new_state(false);
    const int c0 = control_id(start);
    if (w.empty()) {
      add(c0, kEps, final_);
    } else {
      int from = c0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        int to = i + 1 == w.size() ? final_ : new_state(false);
        add(from, static_cast<unsigned char>(w[i]), to);
        from = to;
      }
    }
    while (!work_.empty() && !found_) {
      auto [p, x, q] = work_.front();
      work_.pop_front();
      process(p, x, q);
    }
    ControlReachResult res;
    res.reachable = found_;
    res.controls = controls_.size();
    std::unordered_set<Pattern> pats;
    for (const auto& c : controls_) pats.insert(c.pattern);
    res.patterns = pats.size();
    res.transitions = trans_.size();
    return res;
  }

 private:
  int new_state(bool control) {
    out_.emplace_back();
    eps_preds_.emplace_back();
    control_of_.push_back(control ? static_cast<int>(controls_.size()) : -1);
    return static_cast<int>(out_.size()) - 1;
  }

  int control_id(const Control& c) {
    std::string key = control_key(c);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    int id = new_state(true);
    controls_.push_back(c);
    moves_.emplace_back();
    ids_.emplace(std::move(key), id);
    return id;
  }

  void add(int p, int x, int q) {
    if (!trans_.insert({p, x, q}).second) return;
    if (control_of_[p] >= 0 && controls_[control_of_[p]].state == to_) found_ = true;
    out_[p].emplace_back(x, q);
    work_.emplace_back(p, x, q);
  }

  void process(int p, int x, int q) {
    for (std::size_t i = 0; i < eps_preds_[p].size(); ++i) add(eps_preds_[p][i], x, q);
    if (x == kEps) {
      eps_preds_[q].push_back(p);
      for (std::size_t i = 0; i < out_[q].size(); ++i) {
        auto [y, q2] = out_[q][i];
        add(p, y, q2);
      }
    }
    if (control_of_[p] < 0) return;
    const int ci = control_of_[p];
    ensure_moves(ci);
    for (std::size_t i = 0; i < moves_[ci].internal.size(); ++i) add(moves_[ci].internal[i], x, q);
    if (x == kEps) return;
    for (std::size_t r = 0; r < moves_[ci].pops.size(); ++r) {
      const PopRule rule = moves_[ci].pops[r];
      if (static_cast<unsigned char>(rule.symbol) != x) continue;
      if (rule.push.empty()) {
        add(rule.target, kEps, q);
        continue;
      }
      if (moves_[ci].mids[r].empty() && rule.push.size() > 1) {
        std::vector<int> mids;
        for (std::size_t j = 0; j + 1 < rule.push.size(); ++j) mids.push_back(new_state(false));
        moves_[ci].mids[r] = mids;
        int from = rule.target;
        for (std::size_t j = 0; j + 1 < rule.push.size(); ++j) {
          add(from, static_cast<unsigned char>(rule.push[j]), mids[j]);
          from = mids[j];
        }
      }
      const int last_from = rule.push.size() > 1 ? moves_[ci].mids[r].back() : rule.target;
      add(last_from, static_cast<unsigned char>(rule.push.back()), q);
    }
  }

  void ensure_moves(int ci) {
    if (moves_[ci].computed) return;
    const Control c = controls_[ci];
    ControlMoves mv;
    mv.computed = true;
    const ClockConstraint& inv = spec_.invariants.at(c.state);
    if (eval_capped(specialize(inv, c.pattern), c.cv, c.pattern)) {
      Pattern np = next_pattern(c.pattern);
      CappedValuation ncv = capped_next(c.cv, c.pattern);
      if (eval_capped(specialize(inv, np), ncv, np)) mv.internal.push_back(control_id({c.state, np, ncv}));
    }
    for (const Edge& edge : spec_.edges) {
      if (edge.from != c.state) continue;
      if (!eval_capped(specialize(ClockConstraint::conj(edge.guard, inv), c.pattern), c.cv, c.pattern)) continue;
      Pattern np = reset_pattern_only(c.pattern, edge.resets);
      CappedValuation ncv = capped_reset(c.cv, c.pattern, edge.resets);
      if (!eval_capped(specialize(spec_.invariants.at(edge.to), np), ncv, np)) continue;
      int target = control_id({edge.to, np, ncv});
      if (edge.pop) {
        mv.pops.push_back({*edge.pop, edge.push, target});
        mv.mids.emplace_back();
      } else {
        mv.internal.push_back(target);
      }
    }
    moves_[ci] = std::move(mv);
  }

  const PtaSpec& spec_;
  int to_;
  int final_ = 0;
  bool found_ = false;
  std::vector<Control> controls_;
  std::vector<ControlMoves> moves_;
  std::unordered_map<std::string, int> ids_;
  std::vector<int> control_of_;
  std::vector<std::vector<std::pair<int, int>>> out_;
  std::vector<std::vector<int>> eps_preds_;
  std::set<std::tuple<int, int, int>> trans_;
  std::deque<std::tuple<int, int, int>> work_;
};

}  // namespace

ControlReachResult control_reach(const PtaSpec& spec, int from, const StackWord& stack, int to) {
  validate_spec(spec);
  if (from < 0 || from >= static_cast<int>(spec.states.size()) || to < 0 || to >= static_cast<int>(spec.states.size()))
    throw PreconditionError("state index out of range");
  for (char ch : stack) {
    if (spec.stack_alphabet.find(ch) == std::string::npos)
      throw PreconditionError(std::string("stack symbol '") + ch + "' is not in the alphabet");
  }
  const int k = spec.k();
  const std::int64_t m = spec.cap_constant();
  const Pattern start = Pattern::all_in_one(k);
  Control c0{from, start, cap_abstract(DiscreteValuation(k + 1, 0), start, m)};
  Saturation sat(spec, to);
  ControlReachResult res = sat.run(c0, stack);
  res.cap = m;
  return res;
}

// ---------------------------------------------------------------------------
// Separation

namespace {

void linearize_into(const LinearTerm& t, std::int64_t sign, LinearForm& out) {
  switch (t.kind()) {
    case LinearTerm::Kind::Const: out.constant += sign * t.value(); return;
    case LinearTerm::Kind::Var: out.coefficients[t.var()] += sign; return;
    case LinearTerm::Kind::Add:
      linearize_into(t.lhs(), sign, out);
      linearize_into(t.rhs(), sign, out);
      return;
    case LinearTerm::Kind::Sub:
      linearize_into(t.lhs(), sign, out);
      linearize_into(t.rhs(), -sign, out);
      return;
  }
}

SeparatedRelation sep_atom(bool dense, MixedAtom::Kind kind, std::map<TermVar, std::int64_t> coefs, std::int64_t constant,
                           std::int64_t modulus = 0) {
  SeparatedAtom a;
  a.dense = dense;
  a.kind = kind;
  a.coefficients = std::move(coefs);
  a.constant = constant;
  a.modulus = modulus;
  return SeparatedRelation::atom(std::move(a));
}

const Rational& var_value(const TermVar& v, const Configuration& source, const Configuration& target) {
  const Configuration& c = v.primed ? target : source;
  if (v.clock < 0 || v.clock >= static_cast<int>(c.valuation.size()))
    throw PreconditionError("clock index " + std::to_string(v.clock) + " out of range");
  return c.valuation[v.clock];
}

}  // namespace

LinearForm linearize(const LinearTerm& t) {
  LinearForm out;
  linearize_into(t, 1, out);
  for (auto it = out.coefficients.begin(); it != out.coefficients.end();) {
    if (it->second == 0)
      it = out.coefficients.erase(it);
    else
      ++it;
  }
  return out;
}

SeparatedRelation separate_mixed(const MixedLinearRelation& l) {
  return l.map<SeparatedAtom>([](const MixedAtom& a) -> SeparatedRelation {
    LinearForm f = linearize(a.term);
    std::map<TermVar, std::int64_t> dense;
    std::map<TermVar, std::int64_t> discrete;
    for (const auto& [v, c] : f.coefficients) {
      if (v.kind == TermVar::Kind::Dense) {
        dense[v] += c;
        TermVar iv = v;
        iv.kind = TermVar::Kind::Integral;
        discrete[iv] += c;
      } else {
        discrete[v] += c;
      }
    }
    std::erase_if(discrete, [](const auto& kv) { return kv.second == 0; });
    if (a.kind == MixedAtom::Kind::Mod) {
      if (!dense.empty()) throw PreconditionError("mod atoms must not mention dense variables");
      return sep_atom(false, a.kind, discrete, f.constant, a.modulus);
    }
    if (dense.empty()) return sep_atom(false, a.kind, discrete, f.constant);
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (const auto& [v, c] : dense) (c < 0 ? lo : hi) += c;
    SeparatedRelation out = SeparatedRelation::truth(false);
    if (a.kind == MixedAtom::Kind::Gt0) out = sep_atom(false, MixedAtom::Kind::Gt0, discrete, f.constant + lo);
    for (std::int64_t e = lo; e <= hi; ++e) {
      SeparatedRelation part = SeparatedRelation::conj(sep_atom(false, MixedAtom::Kind::Eq0, discrete, f.constant + e),
                                                       sep_atom(true, a.kind, dense, -e));
      out = out.kind() == BoolKind::False ? part : SeparatedRelation::disj(out, part);
    }
    return out;
  });
}

bool eval_separated(const SeparatedRelation& s, const Configuration& source, const Configuration& target) {
  return s.evaluate([&](const SeparatedAtom& a) {
    if (a.dense) {
      Rational sum(a.constant);
      for (const auto& [v, c] : a.coefficients) sum += Rational(c) * var_value(v, source, target).fractional();
      return a.kind == MixedAtom::Kind::Gt0 ? sum.sign() > 0 : sum.sign() == 0;
    }
    std::int64_t sum = a.constant;
    for (const auto& [v, c] : a.coefficients) {
      if (v.kind == TermVar::Kind::Count) {
        const StackWord& w = v.primed ? target.stack : source.stack;
        sum += c * static_cast<std::int64_t>(std::count(w.begin(), w.end(), v.symbol));
      } else {
        sum += c * var_value(v, source, target).floor();
      }
    }
    switch (a.kind) {
      case MixedAtom::Kind::Gt0: return sum > 0;
      case MixedAtom::Kind::Eq0: return sum == 0;
      case MixedAtom::Kind::Mod:
        if (a.modulus == 0) throw PreconditionError("modulus must be nonzero");
        return sum % a.modulus == 0;
    }
    return false;
  });
}

MixedLinearRelation normalize_relation(const MixedLinearRelation& l) {
  return fold_constants(l.map<MixedAtom>([](const MixedAtom& a) {
    LinearForm f = linearize(a.term);
    if (!f.coefficients.empty()) return MixedLinearRelation::atom(a);
    switch (a.kind) {
      case MixedAtom::Kind::Gt0: return MixedLinearRelation::truth(f.constant > 0);
      case MixedAtom::Kind::Eq0: return MixedLinearRelation::truth(f.constant == 0);
      case MixedAtom::Kind::Mod:
        if (a.modulus == 0) throw PreconditionError("modulus must be nonzero");
        return MixedLinearRelation::truth(f.constant % a.modulus == 0);
    }
    return MixedLinearRelation::atom(a);
  }));
}

// ---------------------------------------------------------------------------
// Lifting

namespace {

// Relative fraction of 0^1 and the sorted distinct values of every other
// index of the pair.
std::pair<Rational, std::vector<Rational>> relative_values(const ClockValuation& v0, const ClockValuation& v) {
  const ClockValuation rel = relative_representation(v);
  std::vector<Rational> others;
  for (std::size_t c = 0; c < v0.size(); ++c) others.push_back(v0[c].fractional());
  for (std::size_t c = 1; c < v.size(); ++c) others.push_back(rel[c].fractional());
  std::sort(others.begin(), others.end());
  others.erase(std::unique(others.begin(), others.end()), others.end());
  return {rel[0].fractional(), others};
}

Rational progress_delta(const ClockValuation& v0, const ClockValuation& v, GEdge::Kind kind) {
  auto [a, others] = relative_values(v0, v);
  const bool on_value = std::binary_search(others.begin(), others.end(), a);
  std::optional<Rational> below;
  for (const Rational& o : others)
    if (o < a) below = o;
  if (kind == GEdge::Kind::Stay) {
    if (on_value || !below) throw std::logic_error("stay step at a split pattern");
    return (a - *below) / Rational(2);
  }
  if (!on_value) {
    if (!below) throw std::logic_error("merge step without a lower value");
    return a - *below;
  }
  if (below) return (a - *below) / Rational(2);
  // 0^1 sits at 0: it wraps to the middle of the top interval.
  return (Rational(1) - others.back()) / Rational(2);
}

}  // namespace

DenseRun lift_witness(const PtaSpec& spec, const GPath& path) {
  if (path.configs.empty() || path.configs.size() != path.steps.size() + 1)
    throw PreconditionError("a G-path needs one more configuration than steps");
  const GConfiguration& g0 = path.configs.front();
  if (!(init_pattern(g0.pattern) == g0.pattern)) throw PreconditionError("a lifted path must start at an init pattern");
  auto [v0, v] = realize_pair(g0.pattern, g0.discrete, g0.discrete, even_position_values(g0.pattern.size()));
  DenseRun run;
  run.checkpoints.push_back(Configuration{g0.state, v, g0.stack});
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& step = path.steps[i];
    const Configuration& cur = run.checkpoints.back();
    Configuration nxt;
    try {
      if (step.kind == GEdge::Kind::Reset) {
        nxt = step_fire(spec, cur, step.edge);
        run.steps.push_back(TraceStep::fire(step.edge));
      } else {
        Rational delta = progress_delta(v0, cur.valuation, step.kind);
        nxt = step_progress(spec, cur, delta);
        run.steps.push_back(TraceStep::progress(delta));
      }
    } catch (const StepError& e) {
      throw std::logic_error("lifting failed at step " + std::to_string(i) + ": " + e.what());
    }
    if (!(abstract_config(v0, nxt) == path.configs[i + 1]))
      throw std::logic_error("lifted configuration diverges from the G-path at step " + std::to_string(i));
    run.checkpoints.push_back(std::move(nxt));
  }
  return run;
}

// ---------------------------------------------------------------------------
// Bounded binary reachability

const char* verdict_name(QueryResult::Verdict v) {
  switch (v) {
    case QueryResult::Verdict::WitnessFound: return "witness";
    case QueryResult::Verdict::NoWitnessWithinBounds: return "no-witness-within-bounds";
    case QueryResult::Verdict::Unreachable: return "unreachable";
  }
  return "?";
}

std::vector<std::vector<Rational>> sample_position_values(int positions) {
  std::vector<std::vector<Rational>> out;
  out.push_back(even_position_values(positions));
  const Rational eps(1, 100 * static_cast<std::int64_t>(positions));
  std::vector<Rational> low(positions);
  std::vector<Rational> high(positions);
  for (int m = 0; m < positions; ++m) {
    low[m] = eps * Rational(m);
    high[m] = m == 0 ? Rational(0) : Rational(1) - eps * Rational(positions - m);
  }
  if (positions > 1) {
    out.push_back(low);
    out.push_back(high);
  }
  return out;
}

namespace {

void stack_words(const std::string& alphabet, int max_len, std::vector<StackWord>& out) {
  std::vector<StackWord> layer{""};
  out.push_back("");
  for (int len = 1; len <= max_len; ++len) {
    std::vector<StackWord> nxt;
    for (const auto& w : layer)
      for (char ch : alphabet) nxt.push_back(w + ch);
    out.insert(out.end(), nxt.begin(), nxt.end());
    layer = std::move(nxt);
  }
}

void integral_starts(int k, std::int64_t cap, std::vector<DiscreteValuation>& out) {
  DiscreteValuation u(k + 1, 0);
  while (true) {
    out.push_back(u);
    int i = k;
    while (i >= 1 && u[i] == cap) u[i--] = 0;
    if (i < 1) return;
    ++u[i];
  }
}

}  // namespace

QueryResult binreach_query(const PtaSpec& spec, const MixedLinearRelation& l, const QueryBounds& bounds) {
  const auto t0 = std::chrono::steady_clock::now();
  validate_spec(spec);
  validate_relation(l, spec.k(), spec.stack_alphabet);
  if (bounds.max_steps < 0 || bounds.max_stack < 0 || bounds.clock_cap < 0)
    throw PreconditionError("bounds must be non-negative");
  QueryResult res;
  res.bounds = bounds;
  auto finish = [&]() {
    res.diagnostics.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };
  const MixedLinearRelation norm = normalize_relation(l);
  if (norm.kind() == BoolKind::False) return finish();

  const int k = spec.k();
  std::vector<int> states;
  if (bounds.from_state) {
    states.push_back(*bounds.from_state);
  } else {
    for (int s = 0; s < static_cast<int>(spec.states.size()); ++s) states.push_back(s);
  }
  std::vector<Pattern> inits;
  for (const Pattern& p : enumerate_patterns(k))
    if (init_pattern(p) == p) inits.push_back(p);
  std::vector<DiscreteValuation> us;
  integral_starts(k, bounds.clock_cap, us);
  std::vector<StackWord> words;
  stack_words(spec.stack_alphabet, bounds.max_stack, words);

  std::unordered_set<Pattern> seen;
  GBounds gb{bounds.max_steps, bounds.max_stack, bounds.clock_cap};
  for (int s : states) {
    for (const Pattern& eta0 : inits) {
      for (const DiscreteValuation& u0 : us) {
        for (const StackWord& w0 : words) {
          ++res.diagnostics.starts;
          GConfiguration start{s, eta0, u0, w0};
          GReachResult reach = g_reach_bounded(spec, start, gb);
          res.diagnostics.nodes_explored += reach.nodes.size();
          res.diagnostics.steps_exceeded |= reach.steps_exceeded;
          res.diagnostics.stack_exceeded |= reach.stack_exceeded;
          res.diagnostics.cap_exceeded |= reach.cap_exceeded;
          for (int n = 0; n < static_cast<int>(reach.nodes.size()); ++n) {
            const GConfiguration& g = reach.nodes[n];
            seen.insert(g.pattern);
            for (const auto& values : sample_position_values(g.pattern.size())) {
              auto [v0, v] = realize_pair(g.pattern, u0, g.discrete, values);
              Configuration src{s, v0, w0};
              Configuration dst{g.state, v, g.stack};
              ++res.diagnostics.evaluations;
              if (!eval_mixed(norm, src, dst)) continue;
              DenseRun lifted = lift_witness(spec, extract_path(reach, n));
              DenseRun run = transfer_run(spec, lifted, v0, v);
              DenseRun replay = run_trace(spec, src, run.steps);
              if (!(replay.end() == dst) || !eval_mixed(l, replay.start(), replay.end()))
                throw std::logic_error("witness replay does not satisfy the relation");
              res.verdict = QueryResult::Verdict::WitnessFound;
              res.witness = std::move(replay);
              res.diagnostics.patterns_seen = seen.size();
              return finish();
            }
          }
        }
      }
    }
  }
  res.diagnostics.patterns_seen = seen.size();
  return finish();
}

}  // namespace ptapat
