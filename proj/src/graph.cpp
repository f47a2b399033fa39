// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include "ptapat/graph.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace ptapat {

std::string encode_pattern(const Pattern& eta) {
  std::string out;
  const auto positions = eta.positions();
  for (std::size_t m = 0; m < positions.size(); ++m) {
    if (m > 0) out += '|';
    for (std::size_t t = 0; t < positions[m].size(); ++t) {
      if (t > 0) out += ' ';
      out += std::to_string(positions[m][t].clock);
      out += static_cast<char>('0' + positions[m][t].tag);
    }
  }
  return out;
}

Pattern decode_pattern(const std::string& text, int k) {
  std::vector<std::vector<TaggedIndex>> positions(1);
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    if (token.size() < 2) throw PreconditionError("pattern index '" + token + "' needs a clock and a tag digit");
    for (char c : token) {
      if (c < '0' || c > '9') throw PreconditionError("pattern index '" + token + "' must be digits");
    }
    const int tag = token.back() - '0';
    if (tag > 1) throw PreconditionError("pattern index '" + token + "' has a tag other than 0 or 1");
    const std::string clock = token.substr(0, token.size() - 1);
    if (clock.size() > 1 && clock[0] == '0') throw PreconditionError("pattern index '" + token + "' has a leading zero");
    positions.back().push_back({std::stoi(clock), tag});
    token.clear();
  };
  for (char c : text) {
    if (c == '|') {
      flush();
      positions.emplace_back();
    } else if (c == ' ') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  for (auto& p : positions) std::sort(p.begin(), p.end());
  return Pattern::from_positions(positions, k);
}

const char* gedge_kind_name(GEdge::Kind kind) {
  switch (kind) {
    case GEdge::Kind::Progress: return "progress";
    case GEdge::Kind::Stay: return "stay";
    case GEdge::Kind::Reset: return "reset";
  }
  return "?";
}

std::vector<std::pair<GEdge, GConfiguration>> g_successors(const PtaSpec& spec, const GConfiguration& gc) {
  std::vector<std::pair<GEdge, GConfiguration>> out;
  const int s = gc.state;
  const ClockConstraint& inv = spec.invariants.at(s);
  const DiscreteConstraint here = specialize(inv, gc.pattern);
  const bool here_ok = eval_discrete_constraint(here, gc.discrete);

  if (here_ok) {
    NextResult nr = next(gc.pattern, gc.discrete);
    DiscreteConstraint post = specialize(inv, nr.pattern);
    if (eval_discrete_constraint(post, nr.discrete)) {
      GEdge e{GEdge::Kind::Progress, -1, s, s, gc.pattern, nr.pattern, here, post};
      out.emplace_back(std::move(e), GConfiguration{s, nr.pattern, nr.discrete, gc.stack});
    }
    if (classify(gc.pattern).merge) {
      GEdge e{GEdge::Kind::Stay, -1, s, s, gc.pattern, gc.pattern, here, here};
      out.emplace_back(std::move(e), gc);
    }
  }

  for (int id = 0; id < static_cast<int>(spec.edges.size()); ++id) {
    const Edge& edge = spec.edges[id];
    if (edge.from != s) continue;
    StackWord stack = gc.stack;
    if (edge.pop) {
      if (stack.empty() || stack.front() != *edge.pop) continue;
      stack = edge.push + stack.substr(1);
    }
    DiscreteConstraint pre = specialize(ClockConstraint::conj(edge.guard, inv), gc.pattern);
    if (!eval_discrete_constraint(pre, gc.discrete)) continue;
    ResetResult rr = reset_pattern(gc.pattern, gc.discrete, edge.resets);
    DiscreteConstraint post = specialize(spec.invariants.at(edge.to), rr.pattern);
    if (!eval_discrete_constraint(post, rr.discrete)) continue;
    GEdge e{GEdge::Kind::Reset, id, s, edge.to, gc.pattern, rr.pattern, pre, post};
    out.emplace_back(std::move(e), GConfiguration{edge.to, rr.pattern, rr.discrete, std::move(stack)});
  }
  return out;
}

std::string gconfig_key(const GConfiguration& gc) {
  std::string key = std::to_string(gc.state);
  key += '/';
  for (auto s : gc.pattern.slots()) key += static_cast<char>('a' + s);
  key += '/';
  for (auto u : gc.discrete) {
    key += std::to_string(u);
    key += ',';
  }
  key += '/';
  key += gc.stack;
  return key;
}

std::optional<int> GReachResult::find(const GConfiguration& gc) const {
  auto it = index.find(gconfig_key(gc));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

GReachResult g_reach_bounded(const PtaSpec& spec, const GConfiguration& start, const GBounds& bounds) {
  if (!classify(start.pattern).regulated) throw PreconditionError("G exploration must start at a regulated pattern");
  if (start.discrete.empty() || start.discrete[0] != 0) throw PreconditionError("G exploration must start with y0 = 0");
  GReachResult res;
  auto add = [&](const GConfiguration& gc, int parent, GEdge::Kind via, int via_edge, int depth) {
    const int id = static_cast<int>(res.nodes.size());
    res.index.emplace(gconfig_key(gc), id);
    res.nodes.push_back(gc);
    res.parent.push_back(parent);
    res.via.push_back(via);
    res.via_edge.push_back(via_edge);
    res.depth.push_back(depth);
    return id;
  };
  std::vector<int> layer{add(start, -1, GEdge::Kind::Progress, -1, 0)};
  std::vector<std::string> encodings;
  for (int depth = 0; !layer.empty(); ++depth) {
    std::vector<std::tuple<std::string, std::string, DiscreteValuation, StackWord, int>> order;
    order.reserve(layer.size());
    for (int id : layer) {
      const auto& gc = res.nodes[id];
      order.emplace_back(spec.states[gc.state], encode_pattern(gc.pattern), gc.discrete, gc.stack, id);
    }
    std::sort(order.begin(), order.end());
    std::vector<int> next_layer;
    for (const auto& entry : order) {
      const int id = std::get<4>(entry);
      for (auto& [edge, succ] : g_successors(spec, res.nodes[id])) {
        if (res.index.count(gconfig_key(succ))) continue;
        if (static_cast<int>(succ.stack.size()) > bounds.max_stack) {
          res.stack_exceeded = true;
          continue;
        }
        if (std::any_of(succ.discrete.begin(), succ.discrete.end(), [&](std::int64_t u) { return u > bounds.clock_cap; })) {
          res.cap_exceeded = true;
          continue;
        }
        if (depth >= bounds.max_steps) {
          res.steps_exceeded = true;
          continue;
        }
        next_layer.push_back(add(succ, id, edge.kind, edge.edge, depth + 1));
      }
    }
    layer = std::move(next_layer);
  }
  return res;
}

GPath extract_path(const GReachResult& reach, int node) {
  std::vector<int> chain;
  for (int n = node; n >= 0; n = reach.parent[n]) chain.push_back(n);
  std::reverse(chain.begin(), chain.end());
  GPath path;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    path.configs.push_back(reach.nodes[chain[i]]);
    if (i > 0) path.steps.push_back({reach.via[chain[i]], reach.via_edge[chain[i]]});
  }
  return path;
}

bool is_g_path(const PtaSpec& spec, const GPath& path) {
  if (path.configs.size() != path.steps.size() + 1) return false;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    bool found = false;
    for (const auto& [edge, succ] : g_successors(spec, path.configs[i])) {
      if (edge.kind == path.steps[i].kind && edge.edge == path.steps[i].edge && succ == path.configs[i + 1]) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

GConfiguration abstract_config(const ClockValuation& v0, const Configuration& c) {
  return {c.state, pattern_of(v0, c.valuation), integral_parts(c.valuation), c.stack};
}

GPath project_run(const PtaSpec& spec, const DenseRun& run) {
  const ClockValuation& v0 = run.start().valuation;
  GPath path;
  path.configs.push_back(abstract_config(v0, run.start()));
  for (std::size_t s = 0; s < run.steps.size(); ++s) {
    const TraceStep& step = run.steps[s];
    const Configuration& before = run.checkpoints[s];
    GConfiguration cur = path.configs.back();
    if (step.kind == TraceStep::Kind::Progress) {
      const std::vector<Pattern> traj = pattern_trajectory(v0, before.valuation, step.delta);
      if (traj.size() == 1) {
        path.steps.push_back({GEdge::Kind::Stay, -1});
        path.configs.push_back(cur);
      }
      for (std::size_t t = 1; t < traj.size(); ++t) {
        NextResult nr = next(cur.pattern, cur.discrete);
        if (!(nr.pattern == traj[t])) throw std::logic_error("projection: dense pattern change is not a Next step");
        cur.pattern = nr.pattern;
        cur.discrete = nr.discrete;
        path.steps.push_back({GEdge::Kind::Progress, -1});
        path.configs.push_back(cur);
      }
    } else {
      const Edge& e = spec.edges.at(step.edge);
      ResetResult rr = reset_pattern(cur.pattern, cur.discrete, e.resets);
      cur.state = e.to;
      cur.pattern = rr.pattern;
      cur.discrete = rr.discrete;
      if (e.pop) cur.stack = e.push + cur.stack.substr(1);
      path.steps.push_back({GEdge::Kind::Reset, step.edge});
      path.configs.push_back(cur);
    }
    if (!(path.configs.back() == abstract_config(v0, run.checkpoints[s + 1])))
      throw std::logic_error("projection: checkpoint " + std::to_string(s + 1) + " disagrees with its abstraction");
  }
  return path;
}

// ---------------------------------------------------------------------------

PSuccessors p_successors(const Pattern& eta, const std::vector<std::vector<int>>& resets) {
  PSuccessors out{next_pattern(eta), {}};
  for (const auto& r : resets) out.r_succs.emplace(r, reset_pattern_only(eta, r));
  return out;
}

SyncState sync_start(const DiscreteValuation& u) {
  return {u, std::vector<int>(u.size(), 0), std::vector<bool>(u.size(), false)};
}

SyncState sync_step(const SyncState& st, const SyncLabel& label, SyncRule rule) {
  SyncState out = st;
  const std::size_t n = st.z.size();
  if (label.kind == SyncLabel::Kind::Progress) {
    if (label.target_regulated) {
      for (std::size_t c = 0; c < n; ++c) out.z[c] = st.reset_set[c] ? 0 : st.z[c] + 1;
      std::fill(out.delta.begin(), out.delta.end(), 0);
      std::fill(out.reset_set.begin(), out.reset_set.end(), false);
    } else {
      for (std::size_t c = 0; c < n; ++c) out.delta[c] += label.increment.at(c);
    }
    return out;
  }
  for (int j : label.r) {
    out.z.at(j) = 0;
    out.delta.at(j) = 0;
    if (rule == SyncRule::Literal || !label.source_regulated) out.reset_set.at(j) = true;
  }
  return out;
}

DiscreteValuation sync_value(const SyncState& st) {
  DiscreteValuation y(st.z.size());
  for (std::size_t c = 0; c < y.size(); ++c) y[c] = st.reset_set[c] ? 0 : st.z[c] + st.delta[c];
  return y;
}

bool check_sync_claim(const PPath& path, const DiscreteValuation& u_start, SyncRule rule) {
  if (!classify(path.start).regulated) throw PreconditionError("sync claim needs a regulated start pattern");
  if (static_cast<int>(u_start.size()) != path.start.k() + 1) throw PreconditionError("start valuation has the wrong length");
  Pattern eta = path.start;
  DiscreteValuation y = u_start;
  SyncState st = sync_start(u_start);
  for (const auto& step : path.steps) {
    SyncLabel label;
    if (!step) {
      NextResult nr = next(eta, y);
      label.kind = SyncLabel::Kind::Progress;
      label.increment = nr.increment;
      label.target_regulated = classify(nr.pattern).regulated;
      eta = nr.pattern;
      y = nr.discrete;
    } else {
      label.kind = SyncLabel::Kind::Reset;
      label.r = *step;
      label.source_regulated = classify(eta).regulated;
      ResetResult rr = reset_pattern(eta, y, *step);
      eta = rr.pattern;
      y = rr.discrete;
    }
    st = sync_step(st, label, rule);
  }
  return y == sync_value(st);
}

}  // namespace ptapat
