/* C interface to the unification-semiring library.
 *
 * Every object belongs to the context it was created in; objects from
 * different contexts cannot be combined. Free wirings and automata before
 * their context. Strings returned through `char**` are owned by the caller
 * and released with us_string_free. On failure a function returns a non-zero
 * status and us_last_error(ctx) describes it until the next call on ctx.
 */
#ifndef UNISEM_UNISEM_H
#define UNISEM_UNISEM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define US_API __declspec(dllexport)
#else
#define US_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct us_context us_context;
typedef struct us_wiring us_wiring;
typedef struct us_automaton us_automaton;

typedef enum us_status {
  US_OK = 0,
  US_ERR_INVALID_ARGUMENT = 1,
  US_ERR_PARSE = 2,
  US_ERR_UNSAFE_FLOW = 3,
  US_ERR_UNBALANCED = 4,
  US_ERR_VERTEX_BUDGET = 5,
  US_ERR_OUT_DEGREE = 6,
  US_ERR_POSITION_COUNT = 7,
  US_ERR_DUPLICATE_POSITION = 8,
  US_ERR_NOT_IN_ALPHABET = 9,
  US_ERR_AUTOMATON = 10,
  US_ERR_IO = 11,
  US_ERR_INTERNAL = 99
} us_status;

typedef enum us_method { US_METHOD_GRAPH = 0, US_METHOD_ITERATE = 1 } us_method;

/* US_SCOPE_DEFAULT: the full computation space for us_nilpotent and
 * us_graph_dot, the head-instance support for us_accept and
 * us_cross_validate. */
typedef enum us_scope { US_SCOPE_DEFAULT = 0, US_SCOPE_FULL = 1, US_SCOPE_SUPPORT = 2 } us_scope;

typedef enum us_answer { US_NILPOTENT = 0, US_NOT_NILPOTENT = 1, US_BOUND_EXCEEDED = 2 } us_answer;

typedef struct us_options {
  us_method method;
  us_scope scope;
  uint64_t max_vertices;    /* 0 means 1000000 */
  uint64_t iteration_bound; /* 0 picks |Comp(F)|+1 or |support|+2 */
  int cross_check_unify;    /* build edges by unification instead of matching */
} us_options;

typedef struct us_result {
  us_answer answer;
  uint64_t vertices; /* graph method */
  uint64_t edges;
  uint64_t degree; /* iteration: first zero power, first repeated power, or 0
                      when the bound ran out */
  uint64_t bound;  /* iteration bound used */
  char* witness;   /* cycle as "t1 -> t2 -> ...", NULL when none */
} us_result;

US_API const char* us_version(void);
US_API const char* us_status_name(us_status status);

US_API us_context* us_context_new(void);
US_API void us_context_free(us_context* ctx);
US_API const char* us_last_error(const us_context* ctx);
US_API void us_string_free(char* s);
US_API void us_options_init(us_options* options);
/* Frees result->witness and zeroes the result. Functions filling a
 * us_result overwrite it without freeing, so clear it before reuse. */
US_API void us_result_clear(us_result* result);

/* Wirings: text with one `HEAD <- BODY` flow per line, `%` comments and
 * `% key: value` headers. */
US_API us_status us_wiring_parse(us_context* ctx, const char* text, us_wiring** out);
US_API us_status us_wiring_read_file(us_context* ctx, const char* path, us_wiring** out);
US_API void us_wiring_free(us_wiring* w);
US_API size_t us_wiring_size(const us_wiring* w);
/* Canonical text including headers. */
US_API us_status us_wiring_to_string(us_context* ctx, const us_wiring* w, char** out);
/* *out is NULL when the header is absent. */
US_API us_status us_wiring_header(us_context* ctx, const us_wiring* w, const char* key, char** out);
US_API us_status us_wiring_set_header(us_context* ctx, us_wiring* w, const char* key, const char* value);
US_API us_status us_wiring_equal(us_context* ctx, const us_wiring* a, const us_wiring* b, int* equal);

US_API us_status us_wiring_sum(us_context* ctx, const us_wiring* a, const us_wiring* b, us_wiring** out);
US_API us_status us_wiring_product(us_context* ctx, const us_wiring* a, const us_wiring* b, us_wiring** out);
US_API us_status us_wiring_power(us_context* ctx, const us_wiring* f, uint64_t n, us_wiring** out);
US_API us_status us_wiring_tensor(us_context* ctx, const us_wiring* a, const us_wiring* b, us_wiring** out);
/* Images of a closed term, one per line. */
US_API us_status us_wiring_apply(us_context* ctx, const us_wiring* f, const char* fact, char** out);

US_API us_status us_check_balanced(us_context* ctx, const us_wiring* f, int* result);
US_API us_status us_check_deterministic(us_context* ctx, const us_wiring* f, int* result);
/* alphabet: comma-separated letters. */
US_API us_status us_check_observation(us_context* ctx, const us_wiring* f, const char* alphabet, int* result);
/* *word receives the represented word (or NULL) when non-NULL. */
US_API us_status us_check_word_rep(us_context* ctx, const us_wiring* f, int* result, char** word);

/* Size of the computation space and its cardinality bound, as text. */
US_API us_status us_space_info(us_context* ctx, const us_wiring* f, char** out);
US_API us_status us_nilpotent(us_context* ctx, const us_wiring* f, const us_options* options, us_result* out);
US_API us_status us_graph_dot(us_context* ctx, const us_wiring* f, const us_options* options, char** out);

/* Word over `alphabet`: single characters, or comma-separated letters. The
 * result carries `alphabet` and `positions` headers. */
US_API us_status us_word_represent(us_context* ctx, const char* alphabet, const char* word, us_wiring** out);
/* alphabet may be NULL to use the observation's `alphabet` header. */
US_API us_status us_accept(us_context* ctx, const us_wiring* observation, const char* alphabet, const char* word,
                           const us_options* options, us_result* out, int* accepted);

/* Automata: JSON description, see README. */
US_API us_status us_automaton_parse(us_context* ctx, const char* json, us_automaton** out);
US_API us_status us_automaton_read_file(us_context* ctx, const char* path, us_automaton** out);
US_API void us_automaton_free(us_automaton* m);
US_API us_status us_automaton_compile(us_context* ctx, const us_automaton* m, us_wiring** out);
/* *cycle receives a reachable loop, one configuration per line, or NULL. */
US_API us_status us_automaton_simulate(us_context* ctx, const us_automaton* m, const char* word, int* halts,
                                       char** cycle);
/* Words of length <= max_len; *report lists mismatches one per line. */
US_API us_status us_cross_validate(us_context* ctx, const us_automaton* m, size_t max_len, const us_options* options,
                                   size_t* words, size_t* mismatches, char** report);

#ifdef __cplusplus
}
#endif

#endif
