#ifndef HOMSHIFT_H
#define HOMSHIFT_H

/* C interface of the homshift library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * string returned through a char** out-parameter is owned by the caller and
 * must be released with hs_string_free. On failure a function returns a
 * nonzero hs_status, leaves its out-parameters untouched and records a
 * message retrievable with hs_last_error (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HOMSHIFT_BUILDING)
#    define HS_API __declspec(dllexport)
#  else
#    define HS_API __declspec(dllimport)
#  endif
#else
#  define HS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hs_automaton hs_automaton;

typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_INVALID_ARGUMENT,
  HS_ERR_SCHEMA,
  HS_ERR_CAP_EXCEEDED,
  HS_ERR_BUDGET_EXCEEDED,
  HS_ERR_INVALID_SPLIT,
  HS_ERR_INVALID_PARTITION,
  HS_ERR_INVALID_CERTIFICATE,
  HS_ERR_NOT_TRIM,
  HS_ERR_NOT_SYMMETRIC,
  HS_ERR_TOO_LARGE,
  HS_ERR_OVERFLOW,
  HS_ERR_INTERNAL
} hs_status;

HS_API const char* hs_version(void);
HS_API const char* hs_status_name(hs_status status);
/* Message of the last failed call on this thread; "" if none. */
HS_API const char* hs_last_error(void);
HS_API void hs_string_free(char* s);

/* Automaton documents (JSON, kind "automaton"). */
HS_API hs_status hs_automaton_parse(const char* json, hs_automaton** out);
HS_API hs_status hs_automaton_to_json(const hs_automaton* a, char** out);
HS_API void hs_automaton_free(hs_automaton* a);
HS_API size_t hs_automaton_arity(const hs_automaton* a);
HS_API size_t hs_automaton_state_count(const hs_automaton* a);

/* Automaton of the Hom shift of a graph document (undirected or directed). */
HS_API hs_status hs_hom_automaton(const char* graph_json, size_t arity, hs_automaton** out);

HS_API hs_status hs_trim(const hs_automaton* a, hs_automaton** out);
HS_API hs_status hs_total_amalgamation(const hs_automaton* a, hs_automaton** out);
/* At most `rounds` coarsest amalgamation rounds. */
HS_API hs_status hs_amalgamate_rounds(const hs_automaton* a, size_t rounds, hs_automaton** out);
HS_API hs_status hs_random_split_walk(const hs_automaton* a, size_t rounds, uint64_t seed,
                                      hs_automaton** out);

/* Block-count report (JSON). Requires a trim automaton. */
HS_API hs_status hs_count_blocks(const hs_automaton* a, size_t height, char** report_json);
/* Blocks of the given height (JSON); cap 0 selects the default. */
HS_API hs_status hs_enumerate_blocks(const hs_automaton* a, size_t height, size_t cap,
                                     char** blocks_json);

/* Compiles an SFT document; state_cap 0 selects the default. */
HS_API hs_status hs_compile(const char* sft_json, size_t state_cap, hs_automaton** out);

/* Decisions. *answer is 1 for yes and 0 for no; the verdict document
 * carries the amalgamation, certificate, witness or failure. */
HS_API hs_status hs_check_hom(const hs_automaton* a, int* answer, char** verdict_json);
HS_API hs_status hs_check_directed_hom(const hs_automaton* a, int* answer, char** verdict_json);
/* node_budget 0 selects the default. */
HS_API hs_status hs_conjugate(const hs_automaton* a, const hs_automaton* b, uint64_t node_budget,
                              int* answer, char** verdict_json);

/* The witness graph document of a verdict; HS_ERR_INVALID_ARGUMENT if none. */
HS_API hs_status hs_verdict_witness(const char* verdict_json, char** graph_json);
/* One line: "yes", or "no: <reason>". */
HS_API hs_status hs_verdict_summary(const char* verdict_json, char** summary);

HS_API hs_status hs_verify_roundtrip(const hs_automaton* a, size_t rounds, uint64_t seed,
                                     int* passed, char** report_json);

/* Graphviz text for a graph document. */
HS_API hs_status hs_graph_to_dot(const char* graph_json, char** dot);

#ifdef __cplusplus
}
#endif

#endif
