// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include "ptapat/ptapat.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ptapat/dense.hpp"
#include "ptapat/lemmas.hpp"
#include "ptapat/reach.hpp"
#include "ptapat/text.hpp"

struct ptapat_spec {
  ptapat::PtaSpec spec;
};

namespace {

thread_local std::string g_last_error;

ptapat_status fail(ptapat_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

ptapat_status emit(const std::string& text, char** out) {
  if (!out) return fail(PTAPAT_EINPUT, "output pointer is null");
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) return fail(PTAPAT_EINTERNAL, "out of memory");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  *out = buf;
  return PTAPAT_OK;
}

// Maps exceptions onto status codes.
template <typename F>
ptapat_status guarded(F&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const ptapat::ParseError& e) {
    return fail(PTAPAT_EINPUT, e.what());
  } catch (const ptapat::PreconditionError& e) {
    return fail(PTAPAT_EINPUT, e.what());
  } catch (const ptapat::StepError& e) {
    return fail(PTAPAT_FALSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PTAPAT_EINTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PTAPAT_EINTERNAL, std::string("internal error: ") + e.what());
  }
}

int state_arg(const ptapat::PtaSpec& spec, const char* name) {
  if (!name) throw ptapat::PreconditionError("state name is null");
  auto idx = spec.state_index(name);
  if (!idx) throw ptapat::PreconditionError(std::string("unknown state '") + name + "'");
  return *idx;
}

std::string stack_arg(const ptapat::PtaSpec& spec, const char* stack) {
  std::string w = stack ? stack : "";
  for (char ch : w) {
    if (spec.stack_alphabet.find(ch) == std::string::npos)
      throw ptapat::PreconditionError(std::string("stack symbol '") + ch + "' is not in the alphabet");
  }
  return w;
}

}  // namespace

extern "C" {

const char* ptapat_last_error(void) { return g_last_error.c_str(); }

const char* ptapat_version(void) { return "0.1.0"; }

void ptapat_string_free(char* s) { std::free(s); }

ptapat_status ptapat_spec_parse(const char* text, const char* filename, ptapat_spec** out) {
  return guarded([&] {
    if (!text || !out) return fail(PTAPAT_EINPUT, "null argument");
    auto* h = new ptapat_spec{ptapat::parse_automaton(text, filename ? filename : "<input>")};
    *out = h;
    return PTAPAT_OK;
  });
}

void ptapat_spec_free(ptapat_spec* spec) { delete spec; }

ptapat_status ptapat_spec_print(const ptapat_spec* spec, char** out) {
  return guarded([&] {
    if (!spec) return fail(PTAPAT_EINPUT, "null spec");
    return emit(ptapat::print_automaton(spec->spec), out);
  });
}

int ptapat_spec_clock_count(const ptapat_spec* spec) { return spec ? spec->spec.k() : -1; }

int ptapat_spec_state_count(const ptapat_spec* spec) { return spec ? static_cast<int>(spec->spec.states.size()) : -1; }

ptapat_status ptapat_ring(int k, const char* pattern, char** out) {
  return guarded([&] {
    if (k < 1 || k > 9) return fail(PTAPAT_EINPUT, "k must be between 1 and 9");
    ptapat::Pattern eta = pattern ? ptapat::decode_pattern(pattern, k) : ptapat::Pattern::all_in_one(k);
    std::string text;
    for (const auto& p : ptapat::pattern_ring(eta)) {
      auto cls = ptapat::classify(p);
      text += ptapat::encode_pattern(p);
      text += cls.merge ? "  merge" : "  split";
      if (cls.regulated) text += " regulated";
      text += '\n';
    }
    return emit(text, out);
  });
}

ptapat_status ptapat_graph_dot(const ptapat_spec* spec, const char* from, const char* stack, const ptapat_bounds* bounds,
                               char** out) {
  return guarded([&] {
    if (!spec) return fail(PTAPAT_EINPUT, "null spec");
    const auto& s = spec->spec;
    ptapat::GBounds gb;
    if (bounds) gb = {bounds->max_steps, bounds->max_stack, bounds->clock_cap};
    const int k = s.k();
    ptapat::GConfiguration start{state_arg(s, from), ptapat::Pattern::all_in_one(k), ptapat::DiscreteValuation(k + 1, 0),
                                 stack_arg(s, stack)};
    return emit(ptapat::graph_dot(s, ptapat::g_reach_bounded(s, start, gb)), out);
  });
}

ptapat_status ptapat_reach(const ptapat_spec* spec, const char* from, const char* stack, const char* to, int timing,
                           char** json_out) {
  return guarded([&] {
    if (!spec) return fail(PTAPAT_EINPUT, "null spec");
    const auto& s = spec->spec;
    const auto t0 = std::chrono::steady_clock::now();
    auto res = ptapat::control_reach(s, state_arg(s, from), stack_arg(s, stack), state_arg(s, to));
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    ptapat_status st = emit(ptapat::reach_json(s, res, ms, {timing != 0}), json_out);
    if (st != PTAPAT_OK) return st;
    return res.reachable ? PTAPAT_OK : PTAPAT_FALSE;
  });
}

ptapat_status ptapat_query(const ptapat_spec* spec, const char* relation, const char* from, const ptapat_bounds* bounds,
                           int timing, char** json_out) {
  return guarded([&] {
    if (!spec || !relation) return fail(PTAPAT_EINPUT, "null argument");
    const auto& s = spec->spec;
    auto l = ptapat::parse_query(relation, s.k(), s.stack_alphabet);
    ptapat::QueryBounds qb;
    if (bounds) {
      qb.max_steps = bounds->max_steps;
      qb.max_stack = bounds->max_stack;
      qb.clock_cap = bounds->clock_cap;
    }
    if (from) qb.from_state = state_arg(s, from);
    auto res = ptapat::binreach_query(s, l, qb);
    ptapat_status st = emit(ptapat::query_json(s, res, {timing != 0}), json_out);
    if (st != PTAPAT_OK) return st;
    return res.verdict == ptapat::QueryResult::Verdict::WitnessFound ? PTAPAT_OK : PTAPAT_FALSE;
  });
}

ptapat_status ptapat_query_print(const ptapat_spec* spec, const char* relation, char** out) {
  return guarded([&] {
    if (!spec || !relation) return fail(PTAPAT_EINPUT, "null argument");
    return emit(ptapat::print_query(ptapat::parse_query(relation, spec->spec.k(), spec->spec.stack_alphabet)) + "\n", out);
  });
}

ptapat_status ptapat_simulate(const ptapat_spec* spec, const char* from, uint64_t seed, int length, char** json_out) {
  return guarded([&] {
    if (!spec) return fail(PTAPAT_EINPUT, "null spec");
    if (length < 0) return fail(PTAPAT_EINPUT, "length must be non-negative");
    const auto& s = spec->spec;
    ptapat::Configuration start{state_arg(s, from), ptapat::ClockValuation(s.k() + 1), ""};
    return emit(ptapat::run_json(s, ptapat::random_run(s, start, length, seed)), json_out);
  });
}

ptapat_status ptapat_fuzz_lemmas(const char* suite, uint64_t cases, uint64_t seed, char** report_out) {
  return guarded([&] {
    if (!suite) return fail(PTAPAT_EINPUT, "null suite");
    auto rep = ptapat::run_suite(suite, cases, seed);
    ptapat_status st = emit(rep.summary(), report_out);
    if (st != PTAPAT_OK) return st;
    if (!rep.passed()) return fail(PTAPAT_EINTERNAL, "counterexample found in suite " + rep.suite);
    return PTAPAT_OK;
  });
}

}  // extern "C"
