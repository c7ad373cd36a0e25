#ifndef SIEGELLAB_H
#define SIEGELLAB_H

/* C interface to the siegellab computation core. All state lives behind
 * opaque handles; every call returns a status code. Strings returned by
 * accessor functions stay owned by the handle (or by thread-local storage
 * for siegel_last_error) and remain valid until the handle is freed. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SIEGEL_OK = 0,
    SIEGEL_ERR_DOMAIN = 1, /* invalid values, failed preconditions */
    SIEGEL_ERR_USAGE = 2,  /* malformed subcommand or config */
    SIEGEL_ERR_IO = 3,
    SIEGEL_ERR_INTERNAL = 4
} siegel_status;

typedef struct siegel_run siegel_run;

/* Runs a subcommand ("classify", "rotnum", "partition", "density-scan",
 * "deep-fit", "render", "cover-check", "cellgraph") against a JSON config.
 * On success *out owns the result; on failure *out is NULL and
 * siegel_last_error() describes the problem. */
siegel_status siegel_run_command(const char* subcommand, const char* config_json,
                                 siegel_run** out);

/* Payload bytes (JSON or CSV text, or a binary pixmap). Not NUL-terminated;
 * *size receives the length. */
const char* siegel_run_payload(const siegel_run* run, size_t* size);

/* "application/json", "text/csv", or "image/x-portable-graymap". */
const char* siegel_run_content_type(const siegel_run* run);

/* Envelope JSON: resolved config echo, version tag, payload kind. */
const char* siegel_run_envelope(const siegel_run* run);

/* Atomic write (temp file + rename) of the payload. */
siegel_status siegel_run_write(const siegel_run* run, const char* path);

void siegel_run_free(siegel_run* run);

const char* siegel_version(void);

/* Message for the most recent failure on the calling thread. */
const char* siegel_last_error(void);

/* Direct numeric entry points for embedding without JSON. */
siegel_status siegel_solve_parameter(double alpha, double tol, double* t_out,
                                     double* residual_out);
siegel_status siegel_rotation_number(double t, long long n_iter, double* rho_out,
                                     double* err_bound_out);
siegel_status siegel_lemma1_constants(double c, double eta, long long* M_out, long long* n0_out,
                                      double* zeta_out, double* lambda_out);

#ifdef __cplusplus
}
#endif

#endif /* SIEGELLAB_H */
