/* C API for the BELIEF library: binary expansion linear-effect modeling of a
 * binary response.
 *
 * All functions return a belief_status; BELIEF_OK is 0. On failure a
 * thread-local message is available from belief_last_error(). Strings
 * returned through char** out-parameters are heap-allocated and must be
 * released with belief_free_string(). Handles are opaque and freed with
 * their *_close() function.
 */
#ifndef BELIEF_BELIEF_H
#define BELIEF_BELIEF_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum belief_status {
    BELIEF_OK = 0,
    BELIEF_ERR_ARG = 1,        /* bad arguments or configuration */
    BELIEF_ERR_DATA = 2,       /* malformed or unusable data */
    BELIEF_ERR_DEGENERATE = 3, /* sample too degenerate for the operation */
    BELIEF_ERR_IO = 4,         /* file I/O failure */
    BELIEF_ERR_INTERNAL = 5
} belief_status;

typedef struct belief_dataset belief_dataset;
typedef struct belief_model belief_model;

const char* belief_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* belief_last_error(void);

void belief_free_string(char* s);

/* Dataset: a CSV file plus an expansion configuration.
 *
 * config_json mirrors the expansion configuration:
 *   { "response": {"name": "...", "positive_level": "..."},
 *     "variables": [ {"name": "...", "kind": "continuous-ecdf" |
 *                     "continuous-known-range" | "binary",
 *                     "depth": 1, "lo": -1, "hi": 1,
 *                     "positive_level": "..."} ] }
 */
belief_status belief_dataset_open_csv(const char* csv_path, const char* config_json,
                                      belief_dataset** out);
void belief_dataset_close(belief_dataset* dataset);
int64_t belief_dataset_rows(const belief_dataset* dataset);

/* Binary expansion of the dataset without fitting. Output:
 * {"rows": n, "P": p, "labels": [...], "cell": [...], "signs": [[...], ...]}
 * where cell[i] is the packed cell index of row i (bit k set means sign -1)
 * and signs[i] lists the +/-1 sign of each bit. */
belief_status belief_dataset_expand(const belief_dataset* dataset, char** json_out);

/* Fitting. estimator_kind is "lse", "mp", or "ridge"; lambda is ignored
 * unless ridge. */
belief_status belief_fit(const belief_dataset* dataset, const char* estimator_kind,
                         double lambda, belief_model** out);
void belief_model_close(belief_model* model);

int belief_model_num_bits(const belief_model* model);

/* Model persistence: JSON document with P, labels, estimator_kind, lambda,
 * beta (ascending mask order), empty_cells, n, counts, and the frozen
 * expansion transform. */
belief_status belief_model_to_json(const belief_model* model, char** json_out);
belief_status belief_model_open_json(const char* json_text, belief_model** out);

/* Human-readable fit report: slope table, bound slacks, separation status,
 * degeneracy case, empty cells. */
belief_status belief_model_report(const belief_model* model, char** text_out);

/* Prediction at a cell index (bit k of `cell` set means sign bit k is -1). */
belief_status belief_predict_cell(const belief_model* model, uint32_t cell,
                                  double* expectation, double* prob_plus);

/* Per-row predictions for a CSV with the model's predictor columns; new
 * continuous values are mapped through the training empirical CDF.
 * Output: {"rows": n, "expectation": [...], "prob_plus": [...]}. */
belief_status belief_predict_csv(const belief_model* model, const char* csv_path,
                                 char** json_out);

/* Slope significance (Bonferroni-corrected z tests at level alpha) plus the
 * conditional-independence statement from the significant masks. Requires a
 * degeneracy case-1 fit; more degenerate models yield a partial report. */
belief_status belief_infer(const belief_model* model, double alpha, char** json_out,
                           char** text_out);

/* GLM/BELIEF bridge report for a main-effects GLM over independent uniform
 * predictors. request_json:
 *   { "link": "logit" | "probit" | "linear", "intercept": g0,
 *     "coefficients": [g1, ...], "depth": D,
 *     "bit_weights": "dyadic" | "unit",
 *     "scale": "expectation" | "probability" }
 */
belief_status belief_glm_report(const char* request_json, char** json_out);

/* Simulation comparison (BELIEF vs logistic baseline). request_json:
 *   { "scenario": 1|2|3, "seed": 7, "depths": [1,2,3],
 *     "n_train": 8192, "n_test": 4096 }
 * Output has per-method AUCs and ROC point lists. */
belief_status belief_simulate(const char* request_json, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* BELIEF_BELIEF_H */
