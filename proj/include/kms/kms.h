/* C interface for the KMS inequality checker.
 *
 * All functions return KMS_OK (0) on success or a nonzero error code. String
 * outputs (*out, *err) are heap-allocated, NUL-terminated, and must be
 * released with kms_free_string. Output parameters may be NULL when the
 * caller does not need them. Handles are opaque and freed with their
 * dedicated functions.
 */
#ifndef KMS_H
#define KMS_H

#ifdef __cplusplus
extern "C" {
#endif

#define KMS_OK 0        /* success */
#define KMS_EINVAL 1    /* invalid argument or shape mismatch */
#define KMS_EPARSE 2    /* expression or JSON parse error */
#define KMS_EBUDGET 3   /* budget out of range */
#define KMS_EVERIFY 4   /* evidence failed exact re-verification */
#define KMS_EINTERNAL 5 /* internal error */

typedef struct kms_partmap kms_partmap_t;
typedef struct kms_operator kms_operator_t;

const char* kms_version(void);

void kms_free_string(char* s);
void kms_partmap_free(kms_partmap_t* p);
void kms_operator_free(kms_operator_t* b);

/* Part map / operator construction from the expression language (see the
 * project README) in dimension n, or from canonical JSON. */
int kms_parse_partmap(const char* text, int n, kms_partmap_t** out,
                      char** err);
int kms_parse_operator(const char* text, int n, kms_operator_t** out,
                       char** err);
int kms_partmap_from_json(const char* json_text, kms_partmap_t** out,
                          char** err);
int kms_operator_from_json(const char* json_text, kms_operator_t** out,
                           char** err);
int kms_partmap_to_json(const kms_partmap_t* p, char** out);
int kms_operator_to_json(const kms_operator_t* b, char** out);

/* Run one check and return a JSON report with verdict, note, budget usage,
 * and (for CertifiedNo with evidence) a self-contained evidence record.
 *
 * check is one of: "validity" (default when NULL), "reduced_ellipticity",
 * "reduced_c_ellipticity", "reduced_cancellation", "full_cancellation",
 * "partial_cancellation", "cocancellation", "constant_rank".
 *
 * a is required for the reduced and partial checks; t only for
 * "partial_cancellation". budget_json may be NULL for defaults; recognized
 * keys: samples, smax, depth, seed. */
int kms_check(const char* check, const kms_partmap_t* a,
              const kms_operator_t* b, const kms_partmap_t* t,
              const char* budget_json, char** report_json, char** err);

/* The (A, S[curl]) validity survey over all part-map pairs in dimension n.
 * format: "json", "md", or "csv". */
int kms_table(int n, const char* budget_json, const char* format, char** out,
              char** err);

/* Counterexample blow-up experiment. config_json keys (all optional):
 * R, ratios, N, L_over_R, stencil_N. format as in kms_table. */
int kms_blowup(const char* config_json, const char* format, char** out,
               char** err);

/* Exact re-verification of serialized evidence. The input may be a single
 * evidence record, any JSON document containing such records (check reports,
 * table reports), or an array. Returns KMS_OK when every record verifies,
 * KMS_EVERIFY when one fails, KMS_EINVAL when none are found. *count_out
 * (optional) receives the number of records checked. */
int kms_verify(const char* evidence_json, int* count_out, char** err);

#ifdef __cplusplus
}
#endif

#endif /* KMS_H */
