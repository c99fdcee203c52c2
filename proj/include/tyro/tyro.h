#ifndef TYRO_H
#define TYRO_H

/* C API for the tyro type error localization library.
 *
 * All functions returning tyro_status set a thread-local error message
 * retrievable with tyro_last_error() on failure. Strings returned through
 * `char **` out-parameters are heap-allocated and must be released with
 * tyro_free(). Handles have their own _free functions.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tyro_status {
  TYRO_OK = 0,
  TYRO_ERR_SYNTAX,              /* source text does not parse */
  TYRO_ERR_UNBOUND,             /* unbound variable */
  TYRO_ERR_IR_SYNTAX,           /* IR text does not parse */
  TYRO_ERR_DANGLING_LOC,        /* constraint references undeclared location */
  TYRO_ERR_UNKNOWN_SCHEME,      /* instantiation of undeclared scheme */
  TYRO_ERR_MALFORMED_LOCATIONS, /* ranges partially overlap or coincide */
  TYRO_ERR_SOLVER_NOT_FOUND,
  TYRO_ERR_SOLVER_TIMEOUT,
  TYRO_ERR_SOLVER_CRASH,
  TYRO_ERR_UNPARSEABLE_OUTPUT,
  TYRO_ERR_HARD_CONFLICT,       /* hard locations alone are inconsistent */
  TYRO_ERR_TOO_LARGE,           /* oracle enumeration guard exceeded */
  TYRO_ERR_NO_ERROR_SOURCE,
  TYRO_ERR_EMPTY_INPUT,
  TYRO_ERR_INVALID_ARGUMENT,
  TYRO_ERR_INTERNAL
} tyro_status;

/* line is 1-based; col is 0-based, end-exclusive */
typedef struct tyro_range {
  int start_line;
  int start_col;
  int end_line;
  int end_col;
} tyro_range;

const char *tyro_status_name(tyro_status s);
const char *tyro_last_error(void);
void tyro_free(void *p);

/* ---- frontend + constraint generation -------------------------------- */

/* Parse `source` and emit the constraint IR. `prelude` lists built-ins as
 * "name : type" lines; pass NULL for the default prelude. */
tyro_status tyro_source_to_ir(const char *source, const char *prelude,
                              char **ir_out);

/* ---- IR --------------------------------------------------------------- */

/* Parse IR text and print it back in canonical form. */
tyro_status tyro_ir_normalize(const char *ir_text, char **out);

/* Counts over a parsed IR document. Any out-pointer may be NULL. */
tyro_status tyro_ir_stats(const char *ir_text, int *locations_out,
                          int *equalities_out, int *instantiations_out,
                          int *schemes_out);

/* ---- encoder ---------------------------------------------------------- */

typedef enum tyro_encoding { TYRO_ENCODE_DEEP = 0, TYRO_ENCODE_FLAT = 1 } tyro_encoding;

/* Encode IR text into an SMT-LIB MaxSMT script. `hard`/`hard_count` force
 * the listed location indices to weight 0 (may be NULL/0). */
tyro_status tyro_ir_encode(const char *ir_text, tyro_encoding enc,
                           const int *hard, size_t hard_count,
                           char **smt_out);

/* ---- solver pipeline -------------------------------------------------- */

typedef struct tyro_localize_opts {
  const char *solver_cmd; /* NULL: $TYRO_SOLVER, then tyro-z3 next to the
                             calling executable, then z3 on PATH */
  double timeout_sec;     /* <= 0: default 100 */
  tyro_encoding encoding; /* default TYRO_ENCODE_FLAT when zero-initialized
                             is DEEP; callers should set explicitly */
  const int *hard;
  size_t hard_count;
} tyro_localize_opts;

typedef struct tyro_result tyro_result;

tyro_status tyro_localize_ir(const char *ir_text,
                             const tyro_localize_opts *opts,
                             tyro_result **out);

int tyro_result_total_weight(const tyro_result *r);
size_t tyro_result_removed_count(const tyro_result *r);
int tyro_result_removed_index(const tyro_result *r, size_t i);
tyro_range tyro_result_removed_range(const tyro_result *r, size_t i);
int tyro_result_removed_weight(const tyro_result *r, size_t i);
void tyro_result_free(tyro_result *r);

/* Re-solve with `removed` forced false and every other location forced
 * true; *ok_out is 1 iff the residual problem is satisfiable. */
tyro_status tyro_verify_error_source(const char *ir_text,
                                     const tyro_localize_opts *opts,
                                     const int *removed, size_t removed_count,
                                     int *ok_out);

/* ---- oracle ----------------------------------------------------------- */

typedef struct tyro_sources tyro_sources;

/* Brute-force enumeration of all minimum error sources. `max_locations`
 * <= 0 uses the default guard of 20. */
tyro_status tyro_oracle_ir(const char *ir_text, int max_locations,
                           tyro_sources **out);

int tyro_sources_min_weight(const tyro_sources *s);
size_t tyro_sources_count(const tyro_sources *s);
size_t tyro_sources_size(const tyro_sources *s, size_t k);
int tyro_sources_index(const tyro_sources *s, size_t k, size_t i);
void tyro_sources_free(tyro_sources *s);

/* Classical eager-unification inference. *ok_out is 1 on success; on
 * failure *blame_out receives the blamed range. */
tyro_status tyro_classical_infer(const char *source, const char *prelude,
                                 int *ok_out, tyro_range *blame_out);

/* ---- accuracy classification ------------------------------------------ */

typedef enum tyro_verdict {
  TYRO_HIT = 0,
  TYRO_CLOSE = 1,
  TYRO_MISS = 2
} tyro_verdict;

tyro_status tyro_classify(const tyro_range *reported, size_t reported_count,
                          const tyro_range *truth, size_t truth_count,
                          tyro_verdict *out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TYRO_H */
