#ifndef CHARDEG_H
#define CHARDEG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChardegStatus {
  CHARDEG_STATUS_OK = 0,
  CHARDEG_STATUS_NULL_POINTER = 1,
  CHARDEG_STATUS_INVALID_UTF8 = 2,
  CHARDEG_STATUS_PARSE = 3,
  CHARDEG_STATUS_INVALID_ARGUMENT = 4,
  CHARDEG_STATUS_CLASSIFY = 5,
  CHARDEG_STATUS_DOCUMENT = 6,
  CHARDEG_STATUS_PANIC = 7,
} ChardegStatus;

typedef enum ChardegVerdictKind {
  CHARDEG_VERDICT_KIND_OCCURS = 0,
  CHARDEG_VERDICT_KIND_NOT_OCCURS = 1,
  CHARDEG_VERDICT_KIND_UNKNOWN = 2,
} ChardegVerdictKind;

typedef struct ChardegGraph ChardegGraph;

typedef struct ChardegSession ChardegSession;

/**
 * A verdict together with the graph it was computed for.
 */
typedef struct ChardegVerdict ChardegVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or an empty
 * string. Valid until the next call into this library on the same thread.
 */
const char *chardeg_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or came from this library and has not been freed.
 */
void chardeg_string_free(char *s);

/**
 * Parses a graph in the `v NAME` / `e NAME NAME` text format.
 *
 * # Safety
 * `source` is a NUL-terminated string; `out_graph` is writable.
 */
enum ChardegStatus chardeg_graph_parse(const char *source, struct ChardegGraph **out_graph);

/**
 * Builds the two-clique family member with cliques of sizes `k` and `t`
 * joined by a matching of size `min(k, t)`.
 *
 * # Safety
 * `out_graph` is writable.
 */
enum ChardegStatus chardeg_graph_gamma(size_t k, size_t t, struct ChardegGraph **out_graph);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `graph` is null or a live graph handle.
 */
size_t chardeg_graph_order(const struct ChardegGraph *graph);

/**
 * The graph in the text format accepted by [`chardeg_graph_parse`].
 *
 * # Safety
 * `graph` is a live graph handle; `out_text` is writable.
 */
enum ChardegStatus chardeg_graph_to_text(const struct ChardegGraph *graph, char **out_text);

/**
 * # Safety
 * `graph` is null or a live graph handle, not used afterwards.
 */
void chardeg_graph_free(struct ChardegGraph *graph);

/**
 * A session with the default engine settings.
 *
 * # Safety
 * `out_session` is writable.
 */
enum ChardegStatus chardeg_session_new(struct ChardegSession **out_session);

/**
 * A session with explicit Sylow branching limits. `narrow_edges` selects
 * the smaller edge family.
 *
 * # Safety
 * `out_session` is writable.
 */
enum ChardegStatus chardeg_session_new_with(uint64_t max_branches,
                                            size_t max_depth,
                                            bool narrow_edges,
                                            struct ChardegSession **out_session);

/**
 * Adds the results in a certificate document, or a JSON array of them,
 * to the session's knowledge base. Each certificate is checked first; one
 * bad entry rejects the whole call and leaves earlier entries in place.
 *
 * # Safety
 * `session` is a live session handle; `json` is a NUL-terminated string.
 */
enum ChardegStatus chardeg_session_seed_json(struct ChardegSession *session, const char *json);

/**
 * # Safety
 * `session` is null or a live session handle, not used afterwards.
 */
void chardeg_session_free(struct ChardegSession *session);

/**
 * Classifies `graph`. The verdict handle keeps its own copy of the graph.
 *
 * # Safety
 * `session` and `graph` are live handles; `out_verdict` is writable. A
 * session must not be used from two threads at once.
 */
enum ChardegStatus chardeg_classify(struct ChardegSession *session,
                                    const struct ChardegGraph *graph,
                                    struct ChardegVerdict **out_verdict);

/**
 * # Safety
 * `verdict` is a live verdict handle; `out_kind` is writable.
 */
enum ChardegStatus chardeg_verdict_kind(const struct ChardegVerdict *verdict,
                                        enum ChardegVerdictKind *out_kind);

/**
 * The rule or witness tag, e.g. `all_admissible` or `direct_product`.
 *
 * # Safety
 * `verdict` is a live verdict handle; `out_rule` is writable.
 */
enum ChardegStatus chardeg_verdict_rule(const struct ChardegVerdict *verdict, char **out_rule);

/**
 * The certificate document, the same bytes `chardeg classify --json`
 * prints.
 *
 * # Safety
 * `verdict` is a live verdict handle; `out_json` is writable.
 */
enum ChardegStatus chardeg_verdict_to_json(const struct ChardegVerdict *verdict, char **out_json);

/**
 * # Safety
 * `verdict` is null or a live verdict handle, not used afterwards.
 */
void chardeg_verdict_free(struct ChardegVerdict *verdict);

/**
 * Checks a certificate document without consulting any knowledge base.
 * When `graph` is not null the document must also be about that exact
 * graph. On return `*out_valid` says whether it checked out; if not and
 * `out_reason` is not null, `*out_reason` receives an owned explanation.
 *
 * # Safety
 * `json` is a NUL-terminated string; `graph` is null or a live handle;
 * `out_valid` is writable; `out_reason` is null or writable.
 */
enum ChardegStatus chardeg_verify_json(const char *json,
                                       const struct ChardegGraph *graph,
                                       bool *out_valid,
                                       char **out_reason);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARDEG_H */
