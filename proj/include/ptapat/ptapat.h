/* Copyright (c) ptapat contributors.
 * SPDX-License-Identifier: Apache-2.0 */
#ifndef PTAPAT_PTAPAT_H
#define PTAPAT_PTAPAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PTAPAT_API __declspec(dllexport)
#else
#define PTAPAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum ptapat_status {
  PTAPAT_OK = 0,       /* success, or a true/reachable verdict */
  PTAPAT_FALSE = 1,    /* false verdict or no witness */
  PTAPAT_EINPUT = 2,   /* malformed input or bad arguments */
  PTAPAT_EINTERNAL = 3 /* internal invariant breach or counterexample */
} ptapat_status;

typedef struct ptapat_spec ptapat_spec;

typedef struct ptapat_bounds {
  int32_t max_steps;
  int32_t max_stack;
  int64_t clock_cap;
} ptapat_bounds;

/* Message for the last non-OK status on this thread; never NULL. */
PTAPAT_API const char* ptapat_last_error(void);
PTAPAT_API const char* ptapat_version(void);

/* Strings returned through char** are owned by the caller. */
PTAPAT_API void ptapat_string_free(char* s);

PTAPAT_API ptapat_status ptapat_spec_parse(const char* text, const char* filename, ptapat_spec** out);
PTAPAT_API void ptapat_spec_free(ptapat_spec* spec);
PTAPAT_API ptapat_status ptapat_spec_print(const ptapat_spec* spec, char** out);
PTAPAT_API int ptapat_spec_clock_count(const ptapat_spec* spec);
PTAPAT_API int ptapat_spec_state_count(const ptapat_spec* spec);

/* Pattern ring of the given encoded pattern, or of the all-in-one pattern
 * when pattern is NULL. One encoded pattern per line. */
PTAPAT_API ptapat_status ptapat_ring(int k, const char* pattern, char** out);

/* Explored slice of G from (from, zero valuation, stack) as DOT. */
PTAPAT_API ptapat_status ptapat_graph_dot(const ptapat_spec* spec, const char* from, const char* stack,
                                          const ptapat_bounds* bounds, char** out);

/* Exact control-state reachability. OK when reachable, FALSE otherwise.
 * timing = 0 writes time_ms as 0 for byte-stable output. */
PTAPAT_API ptapat_status ptapat_reach(const ptapat_spec* spec, const char* from, const char* stack, const char* to,
                                      int timing, char** json_out);

/* Bounded binary reachability for a mixed linear relation. from may be
 * NULL to start from every state. OK with a witness, FALSE without. */
PTAPAT_API ptapat_status ptapat_query(const ptapat_spec* spec, const char* relation, const char* from,
                                      const ptapat_bounds* bounds, int timing, char** json_out);

/* Parses a relation and prints its core form. */
PTAPAT_API ptapat_status ptapat_query_print(const ptapat_spec* spec, const char* relation, char** out);

/* Random dense run from (from, zero valuation, empty stack). */
PTAPAT_API ptapat_status ptapat_simulate(const ptapat_spec* spec, const char* from, uint64_t seed, int length,
                                         char** json_out);

/* Runs a property suite. OK when every case passes, EINTERNAL on a
 * counterexample. The report lists per-check counts. */
PTAPAT_API ptapat_status ptapat_fuzz_lemmas(const char* suite, uint64_t cases, uint64_t seed, char** report_out);

#ifdef __cplusplus
}
#endif

#endif /* PTAPAT_PTAPAT_H */
