// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include "ptapat/pattern.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ptapat {

namespace {

std::size_t slot_count(int k) { return 2 * static_cast<std::size_t>(k + 1); }
std::size_t slot_of(int k, int clock, int tag) { return static_cast<std::size_t>(tag * (k + 1) + clock); }

/// Renumbers position numbers so that the used ones become 0..n in order.
Pattern compact(int k, std::vector<std::uint8_t> slots) {
  std::vector<std::uint8_t> used(slots.begin(), slots.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (auto& s : slots) s = static_cast<std::uint8_t>(std::lower_bound(used.begin(), used.end(), s) - used.begin());
  return Pattern::from_slots(k, std::move(slots));
}

Pattern pattern_from_values(int k, const std::vector<Rational>& values) {
  std::vector<Rational> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::uint8_t> slots(values.size());
  for (std::size_t s = 0; s < values.size(); ++s)
    slots[s] = static_cast<std::uint8_t>(std::lower_bound(sorted.begin(), sorted.end(), values[s]) - sorted.begin());
  return Pattern::from_slots(k, std::move(slots));
}

void require_initial(const ClockValuation& v0) {
  if (v0.empty() || v0[0].sign() != 0) throw PreconditionError("first valuation of a pair must be initial (x0 = 0)");
}

}  // namespace

ClockValuation relative_representation(const ClockValuation& v) {
  ClockValuation out(v.size());
  if (v.empty()) return out;
  const Rational shift = (Rational(1) - v[0].fractional()).fractional();
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto [whole, frac] = split(v[i]);
    Rational rel = i == 0 ? shift : (frac + shift).fractional();
    out[i] = Rational(whole) + rel;
  }
  return out;
}

Pattern pattern_of(const ClockValuation& v0, const ClockValuation& v1) {
  require_initial(v0);
  if (v0.size() != v1.size() || v0.size() < 2) throw PreconditionError("valuations of a pair must have equal length k+1 >= 2");
  const int k = static_cast<int>(v0.size()) - 1;
  const ClockValuation rel = relative_representation(v1);
  std::vector<Rational> values(slot_count(k));
  for (int c = 0; c <= k; ++c) {
    values[slot_of(k, c, 0)] = split(v0[c]).fractional;
    values[slot_of(k, c, 1)] = split(rel[c]).fractional;
  }
  return pattern_from_values(k, values);
}

Pattern init_pattern(const Pattern& eta) {
  const int k = eta.k();
  std::vector<std::uint8_t> slots = eta.slots();
  for (int c = 0; c <= k; ++c) slots[slot_of(k, c, 1)] = slots[slot_of(k, c, 0)];
  return compact(k, std::move(slots));
}

bool equivalent(const ValuationPair& a, const ValuationPair& b) {
  require_initial(a.first);
  require_initial(b.first);
  if (a.first.size() != b.first.size() || a.second.size() != b.second.size()) return false;
  if (integral_parts(a.first) != integral_parts(b.first)) return false;
  if (integral_parts(a.second) != integral_parts(b.second)) return false;
  return pattern_of(a.first, a.second) == pattern_of(b.first, b.second);
}

PatternClass classify(const Pattern& eta) {
  PatternClass pc;
  pc.now_index = eta.now_index();
  int members = 0;
  for (auto s : eta.slots()) members += s == pc.now_index;
  pc.merge = pc.now_index > 0 && members == 1;
  pc.split = !pc.merge;
  pc.regulated = pc.now_index == 0;
  return pc;
}

std::vector<int> increment_vector(const Pattern& eta) {
  const int k = eta.k();
  std::vector<int> inc(k + 1, 0);
  const PatternClass pc = classify(eta);
  if (!pc.merge) return inc;
  const int target = pc.now_index - 1;
  for (int j = 1; j <= k; ++j) {
    if (eta.position_of(j, 1) == target) inc[j] = 1;
  }
#ifndef PTAPAT_MUTATION_DROP_U0_INCREMENT
  if (pc.now_index == 1) inc[0] = 1;
#endif
  return inc;
}

Pattern next_pattern(const Pattern& eta) {
  const int k = eta.k();
  const PatternClass pc = classify(eta);
  const int i = pc.now_index;
  std::vector<std::uint8_t> slots = eta.slots();
  const std::size_t now_slot = slot_of(k, 0, 1);
  if (pc.merge) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (s == now_slot) {
        slots[s] = static_cast<std::uint8_t>(i - 1);
      } else if (slots[s] > i) {
        slots[s] = static_cast<std::uint8_t>(slots[s] - 1);
      }
    }
  } else if (i > 0) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (s != now_slot && slots[s] >= i) slots[s] = static_cast<std::uint8_t>(slots[s] + 1);
    }
  } else {
    slots[now_slot] = static_cast<std::uint8_t>(eta.size());
  }
  return Pattern::from_slots(k, std::move(slots));
}

NextResult next(const Pattern& eta, const DiscreteValuation& u) {
  if (static_cast<int>(u.size()) != eta.k() + 1) throw PreconditionError("discrete valuation length does not match pattern");
  NextResult out{next_pattern(eta), u, increment_vector(eta)};
  for (std::size_t c = 0; c < u.size(); ++c) out.discrete[c] += out.increment[c];
  return out;
}

Pattern reset_pattern_only(const Pattern& eta, const std::vector<int>& r) {
  const int k = eta.k();
  std::vector<std::uint8_t> slots = eta.slots();
  const auto now = static_cast<std::uint8_t>(eta.now_index());
  for (int j : r) {
    if (j == 0) throw PreconditionError("clock 0 cannot be reset");
    if (j < 0 || j > k) throw PreconditionError("reset index out of range");
    slots[slot_of(k, j, 1)] = now;
  }
  return compact(k, std::move(slots));
}

ResetResult reset_pattern(const Pattern& eta, const DiscreteValuation& u, const std::vector<int>& r) {
  if (static_cast<int>(u.size()) != eta.k() + 1) throw PreconditionError("discrete valuation length does not match pattern");
  ResetResult out{reset_pattern_only(eta, r), u};
  for (int j : r) out.discrete[j] = 0;
  return out;
}

std::vector<Pattern> pattern_ring(const Pattern& eta) {
  std::vector<Pattern> ring{eta};
  Pattern cur = next_pattern(eta);
  const std::size_t limit = 4 * slot_count(eta.k()) + 4;
  while (!(cur == eta)) {
    ring.push_back(cur);
    if (ring.size() > limit) throw std::logic_error("pattern ring does not close");
    cur = next_pattern(cur);
  }
  ring.push_back(eta);
  return ring;
}

std::vector<Pattern> enumerate_patterns(int k) {
  const std::size_t total = slot_count(k);
  std::vector<Pattern> out;
  // Set partitions as restricted growth strings, then every block order
  // that keeps the block of slot 0 in front.
  std::vector<std::uint8_t> rgs(total, 0);
  auto emit = [&](int blocks) {
    std::vector<std::uint8_t> order(blocks);
    std::iota(order.begin(), order.end(), 0);
    do {
      std::vector<std::uint8_t> slots(total);
      for (std::size_t s = 0; s < total; ++s) slots[s] = order[rgs[s]];
      out.push_back(Pattern::from_slots(k, std::move(slots)));
    } while (std::next_permutation(order.begin() + 1, order.end()));
  };
  auto rec = [&](auto&& self, std::size_t pos, int blocks) -> void {
    if (pos == total) {
      emit(blocks);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[pos] = static_cast<std::uint8_t>(b);
      self(self, pos + 1, std::max(blocks, b + 1));
    }
  };
  rgs[0] = 0;
  rec(rec, 1, 1);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

RewrittenConstraint int_atom(int i, int j, CmpOp op, std::int64_t d) {
  RewrittenAtom a;
  a.integral = IntegralAtom{i, j, op, d};
  return RewrittenConstraint::atom(a);
}

RewrittenConstraint frac_atom(FracAtom::Kind kind, int i, int j) {
  RewrittenAtom a;
  a.is_frac = true;
  a.frac = FracAtom{kind, i, j};
  return RewrittenConstraint::atom(a);
}

RewrittenConstraint rewrite_atom(const ClockAtom& c) {
  using E = RewrittenConstraint;
  using K = FracAtom::Kind;
  const int i = c.i;
  const int j = c.j;
  const std::int64_t d = c.d;
  if (j == 0) {
    switch (c.op) {
      case CmpOp::Lt: return int_atom(i, 0, CmpOp::Lt, d);
      case CmpOp::Le:
        return E::disj(int_atom(i, 0, CmpOp::Lt, d), E::conj(int_atom(i, 0, CmpOp::Eq, d), frac_atom(K::PosEq0, i, i)));
      case CmpOp::Eq: return E::conj(int_atom(i, 0, CmpOp::Eq, d), frac_atom(K::PosEq0, i, i));
      case CmpOp::Gt:
        return E::disj(int_atom(i, 0, CmpOp::Gt, d), E::conj(int_atom(i, 0, CmpOp::Eq, d), frac_atom(K::PosGt0, i, i)));
      case CmpOp::Ge: return int_atom(i, 0, CmpOp::Ge, d);
    }
  }
  switch (c.op) {
    case CmpOp::Lt:
      return E::disj(int_atom(i, j, CmpOp::Lt, d), E::conj(int_atom(i, j, CmpOp::Eq, d), frac_atom(K::OrderLt, i, j)));
    case CmpOp::Le:
      return E::disj(int_atom(i, j, CmpOp::Lt, d),
                     E::conj(int_atom(i, j, CmpOp::Eq, d), E::disj(frac_atom(K::OrderLt, i, j), frac_atom(K::OrderEq, i, j))));
    case CmpOp::Eq: return E::conj(int_atom(i, j, CmpOp::Eq, d), frac_atom(K::OrderEq, i, j));
    case CmpOp::Gt:
      return E::disj(int_atom(i, j, CmpOp::Gt, d), E::conj(int_atom(i, j, CmpOp::Eq, d), frac_atom(K::OrderLt, j, i)));
    case CmpOp::Ge:
      return E::disj(int_atom(i, j, CmpOp::Gt, d),
                     E::conj(int_atom(i, j, CmpOp::Eq, d), E::disj(frac_atom(K::OrderLt, j, i), frac_atom(K::OrderEq, i, j))));
  }
  throw std::logic_error("unreachable CmpOp");
}

/// frac(x_j1) > frac(x_j2) from positions m1, m2 and now-index i.
bool frac_greater(int m1, int m2, int i) {
  return (m1 < i && i <= m2) || (m2 < m1 && m1 < i) || (i <= m2 && m2 < m1);
}

}  // namespace

RewrittenConstraint rewrite_constraint(const ClockConstraint& c) {
  return c.map<RewrittenAtom>([](const ClockAtom& a) { return rewrite_atom(a); });
}

bool frac_atom_truth(const Pattern& eta, const FracAtom& atom) {
  const int now = eta.now_index();
  const int m1 = eta.position_of(atom.i, 1);
  const int m2 = eta.position_of(atom.j, 1);
  switch (atom.kind) {
    case FracAtom::Kind::OrderLt: return frac_greater(m2, m1, now);
    case FracAtom::Kind::OrderEq: return m1 == m2;
    case FracAtom::Kind::PosGt0: return m1 != now;
    case FracAtom::Kind::PosEq0: return m1 == now;
  }
  return false;
}

bool frac_atom_dense(const FracAtom& atom, const ClockValuation& v) {
  const Rational fi = v.at(atom.i).fractional();
  const Rational fj = v.at(atom.j).fractional();
  switch (atom.kind) {
    case FracAtom::Kind::OrderLt: return fi < fj;
    case FracAtom::Kind::OrderEq: return fi == fj;
    case FracAtom::Kind::PosGt0: return fi.sign() > 0;
    case FracAtom::Kind::PosEq0: return fi.sign() == 0;
  }
  return false;
}

bool eval_rewritten(const RewrittenConstraint& c, const ClockValuation& v) {
  const DiscreteValuation u = integral_parts(v);
  return c.evaluate([&](const RewrittenAtom& a) {
    if (a.is_frac) return frac_atom_dense(a.frac, v);
    const auto& ia = a.integral;
    std::int64_t lhs = ia.j == 0 ? u.at(ia.i) : u.at(ia.i) - u.at(ia.j);
    return compare_int(lhs, ia.op, ia.d);
  });
}

DiscreteConstraint specialize(const ClockConstraint& c, const Pattern& eta) {
  DiscreteConstraint raw = rewrite_constraint(c).map<IntegralAtom>([&](const RewrittenAtom& a) {
    if (a.is_frac) return DiscreteConstraint::truth(frac_atom_truth(eta, a.frac));
    return DiscreteConstraint::atom(a.integral);
  });
  return fold_constants(raw);
}

// ---------------------------------------------------------------------------

std::vector<Rational> even_position_values(int positions) {
  std::vector<Rational> out(positions);
  for (int m = 0; m < positions; ++m) out[m] = Rational(m, positions);
  return out;
}

ValuationPair realize_pair(const Pattern& eta, const DiscreteValuation& u0, const DiscreteValuation& u1,
                           const std::vector<Rational>& values) {
  const int k = eta.k();
  if (static_cast<int>(u0.size()) != k + 1 || static_cast<int>(u1.size()) != k + 1)
    throw PreconditionError("integral parts have the wrong length");
  if (u0[0] != 0) throw PreconditionError("source integral part of x0 must be 0");
  if (static_cast<int>(values.size()) != eta.size()) throw PreconditionError("one value per position is required");
  if (values[0].sign() != 0) throw PreconditionError("position 0 must have value 0");
  for (std::size_t m = 1; m < values.size(); ++m) {
    if (!(values[m - 1] < values[m]) || !(values[m] < Rational(1)))
      throw PreconditionError("position values must increase strictly below 1");
  }
  ClockValuation v0(k + 1);
  ClockValuation v1(k + 1);
  const Rational f10 = values[eta.position_of(0, 1)];
  for (int c = 0; c <= k; ++c) {
    if (u0[c] < 0 || u1[c] < 0) throw PreconditionError("negative integral part");
    v0[c] = Rational(u0[c]) + values[eta.position_of(c, 0)];
    if (c == 0) {
      v1[c] = Rational(u1[c]) + (Rational(1) - f10).fractional();
    } else {
      v1[c] = Rational(u1[c]) + (values[eta.position_of(c, 1)] - f10).fractional();
    }
  }
  return {v0, v1};
}

}  // namespace ptapat
