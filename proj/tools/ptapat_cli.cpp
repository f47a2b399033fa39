// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "ptapat/ptapat.h"

namespace {

constexpr int kUsage = 2;

struct SpecHandle {
  ptapat_spec* ptr = nullptr;
  ~SpecHandle() { ptapat_spec_free(ptr); }
};

struct Output {
  char* ptr = nullptr;
  ~Output() { ptapat_string_free(ptr); }
};

int report(ptapat_status st) {
  if (st == PTAPAT_EINPUT || st == PTAPAT_EINTERNAL || (st == PTAPAT_FALSE && *ptapat_last_error()))
    std::cerr << "error: " << ptapat_last_error() << '\n';
  return static_cast<int>(st);
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int load(const std::string& path, SpecHandle& h) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << '\n';
    return kUsage;
  }
  return report(ptapat_spec_parse(text->c_str(), path.c_str(), &h.ptr));
}

// "steps=N,stack=M,cap=C"; missing keys keep their defaults.
bool parse_bounds(const std::string& text, ptapat_bounds& b) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) return false;
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (val.empty() || val.size() > 9 || val.find_first_not_of("0123456789") != std::string::npos) return false;
    const long n = std::stol(val);
    if (key == "steps") b.max_steps = static_cast<int32_t>(n);
    else if (key == "stack") b.max_stack = static_cast<int32_t>(n);
    else if (key == "cap") b.clock_cap = n;
    else return false;
  }
  return true;
}

int print_out(ptapat_status st, const Output& out) {
  if (st == PTAPAT_OK || st == PTAPAT_FALSE) {
    if (out.ptr) std::fputs(out.ptr, stdout);
  }
  return report(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern abstraction tools for pushdown timed automata"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ptapat_version());

  std::string file;
  std::string from;
  std::string to;
  std::string stack;
  std::string bounds_text;
  std::string dot_out;
  std::string rel;
  std::string pattern;
  std::string suite;
  int k = 1;
  int len = 8;
  uint64_t seed = 1;
  uint64_t cases = 1000;
  bool no_timing = false;
  bool print_spec = false;
  bool print_core = false;

  auto* check = app.add_subcommand("check", "Validate an automaton file");
  check->add_option("FILE", file)->required();
  check->add_flag("--print", print_spec, "Print the canonical form");

  auto* ring = app.add_subcommand("ring", "Print a pattern ring");
  ring->add_option("-k", k, "Number of clocks")->required();
  ring->add_option("--pattern", pattern, "Encoded start pattern");

  auto* graph = app.add_subcommand("graph", "Write the explored slice of G as DOT");
  graph->add_option("FILE", file)->required();
  graph->add_option("--from", from)->required();
  graph->add_option("--stack", stack);
  graph->add_option("--bounds", bounds_text, "steps=N,stack=M,cap=C");
  graph->add_option("--dot", dot_out, "Output file, - for stdout")->required();

  auto* reach = app.add_subcommand("reach", "Exact control-state reachability");
  reach->add_option("FILE", file)->required();
  reach->add_option("--from", from)->required();
  reach->add_option("--stack", stack);
  reach->add_option("--to", to)->required();
  reach->add_flag("--no-timing", no_timing, "Write time_ms as 0");

  auto* query = app.add_subcommand("query", "Bounded binary reachability for a mixed linear relation");
  query->add_option("FILE", file)->required();
  query->add_option("--rel", rel)->required();
  query->add_option("--bounds", bounds_text, "steps=N,stack=M,cap=C");
  query->add_option("--from", from, "Restrict the source state");
  query->add_flag("--no-timing", no_timing, "Write time_ms as 0");
  query->add_flag("--print-core", print_core, "Print the desugared relation and exit");

  auto* simulate = app.add_subcommand("simulate", "Random dense run as JSON");
  simulate->add_option("FILE", file)->required();
  simulate->add_option("--from", from)->required();
  simulate->add_option("--seed", seed);
  simulate->add_option("--len", len);

  auto* fuzz = app.add_subcommand("fuzz-lemmas", "Run a property suite");
  fuzz->add_option("--suite", suite)->required()->check(
      CLI::IsMember({"progress", "reset", "tests", "backwards", "bisim", "sync"}));
  fuzz->add_option("--cases", cases);
  fuzz->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  ptapat_bounds bounds{8, 4, 8};
  if (*query) bounds = {6, 0, 4};
  if (!bounds_text.empty() && !parse_bounds(bounds_text, bounds)) {
    std::cerr << "error: malformed --bounds '" << bounds_text << "'\n";
    return kUsage;
  }

  if (*ring) {
    Output out;
    return print_out(ptapat_ring(k, pattern.empty() ? nullptr : pattern.c_str(), &out.ptr), out);
  }
  if (*fuzz) {
    Output out;
    return print_out(ptapat_fuzz_lemmas(suite.c_str(), cases, seed, &out.ptr), out);
  }

  SpecHandle spec;
  if (int rc = load(file, spec)) return rc;

  if (*check) {
    if (print_spec) {
      Output out;
      return print_out(ptapat_spec_print(spec.ptr, &out.ptr), out);
    }
    std::cout << "ok: " << ptapat_spec_state_count(spec.ptr) << " states, " << ptapat_spec_clock_count(spec.ptr)
              << " clocks\n";
    return 0;
  }
  if (*graph) {
    Output out;
    ptapat_status st = ptapat_graph_dot(spec.ptr, from.c_str(), stack.c_str(), &bounds, &out.ptr);
    if (st != PTAPAT_OK) return report(st);
    if (dot_out == "-") {
      std::fputs(out.ptr, stdout);
      return 0;
    }
    std::ofstream f(dot_out, std::ios::binary);
    if (!(f << out.ptr)) {
      std::cerr << "error: cannot write " << dot_out << '\n';
      return kUsage;
    }
    return 0;
  }
  if (*reach) {
    Output out;
    return print_out(ptapat_reach(spec.ptr, from.c_str(), stack.c_str(), to.c_str(), no_timing ? 0 : 1, &out.ptr), out);
  }
  if (*query) {
    Output out;
    if (print_core) return print_out(ptapat_query_print(spec.ptr, rel.c_str(), &out.ptr), out);
    return print_out(ptapat_query(spec.ptr, rel.c_str(), from.empty() ? nullptr : from.c_str(), &bounds,
                                  no_timing ? 0 : 1, &out.ptr),
                     out);
  }
  if (*simulate) {
    Output out;
    return print_out(ptapat_simulate(spec.ptr, from.c_str(), seed, len, &out.ptr), out);
  }
  return kUsage;
}
