/* C interface to the signed-loop Ising library.
 *
 * Every fallible call returns a slising_status; on failure the thread-local
 * message from slising_last_error() describes what went wrong. Handles are
 * opaque and must be released with their matching *_free function. Strings
 * returned through char** are heap-allocated and released with
 * slising_string_free.
 */
#ifndef SLISING_H
#define SLISING_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct slising_graph slising_graph;
typedef struct slising_weights slising_weights;

typedef enum slising_status {
    SLISING_OK = 0,
    SLISING_ERR_INVALID_INPUT = 1, /* malformed graphs, unknown ids, bad parameters */
    SLISING_ERR_CAP_EXCEEDED = 2,  /* enumeration or spin-count cap hit */
    SLISING_ERR_DOMAIN = 3,        /* method outside its certified regime */
    SLISING_ERR_NUMERIC = 4,       /* numerical consistency check failed */
    SLISING_ERR_INTERNAL = 5
} slising_status;

typedef enum slising_backend {
    SLISING_BACKEND_ENUMERATION = 0,
    SLISING_BACKEND_DETERMINANT = 1
} slising_backend;

typedef enum slising_boundary {
    SLISING_BC_FREE = 0,
    SLISING_BC_PLUS = 1
} slising_boundary;

const char* slising_version(void);

/* Message for the last error raised on the calling thread ("" if none). */
const char* slising_last_error(void);

/* -- graphs ------------------------------------------------------------- */

slising_status slising_graph_rectangle(int32_t width, int32_t height, slising_graph** out);
/* Plane representation of the M x N torus (wrap chains of additional
 * edges with weight product -1; representative weights 1). */
slising_status slising_graph_torus(int32_t m, int32_t n, slising_graph** out);
slising_status slising_graph_from_json(const char* json, slising_graph** out);
slising_status slising_graph_weak_dual(const slising_graph* g, slising_graph** out);
void slising_graph_free(slising_graph* g);

int32_t slising_graph_vertex_count(const slising_graph* g);
int32_t slising_graph_edge_count(const slising_graph* g);
slising_status slising_graph_to_json(const slising_graph* g, char** out);

/* -- edge weights ------------------------------------------------------- */

slising_status slising_weights_uniform(const slising_graph* g, double value,
                                       slising_weights** out);
/* {"default": f, "overrides": [{"u": id, "v": id, "w": f}]} */
slising_status slising_weights_from_json(const slising_graph* g, const char* json,
                                         slising_weights** out);
void slising_weights_free(slising_weights* w);

/* -- evaluations --------------------------------------------------------- */

/* Even-subgraph generating function Z(x). */
slising_status slising_generating_function(const slising_graph* g, const slising_weights* w,
                                           slising_backend backend, double* out);

/* Ising partition function on a rectangle (free or plus boundary). */
slising_status slising_partition_function(const slising_graph* g, double beta,
                                          slising_boundary bc, slising_backend backend,
                                          double* out);

/* -beta f(beta) by the Onsager double integral; err reports the final
 * grid-doubling residual of the quadrature. */
slising_status slising_free_energy_onsager(double beta, double* value, double* err);

/* -beta f(beta) by the signed-loop series truncated at r_max; tail reports
 * the rigorous bound on the dropped remainder. */
slising_status slising_free_energy_series(double beta, int32_t r_max, double* value,
                                          double* tail);

/* Correlations on rectangles. Vertices are addressed by their integer
 * lattice offsets from the rectangle origin; route 0 runs the horizontal
 * leg of the auxiliary path first, route 1 the vertical leg. */
slising_status slising_two_point_plus(const slising_graph* g, double beta, int32_t ux,
                                      int32_t uy, int32_t vx, int32_t vy,
                                      slising_backend backend, int32_t route, double* out);
slising_status slising_one_point_plus(const slising_graph* g, double beta, int32_t ux,
                                      int32_t uy, slising_backend backend, double* out);
slising_status slising_two_point_free(const slising_graph* g, double beta, int32_t ux,
                                      int32_t uy, int32_t vx, int32_t vy,
                                      slising_backend backend, int32_t route, double* out);

/* Two-point decay audit below beta_c: value, the geometric bound
 * 16 sum_{r>=|u-v|} (tanh(beta)/tanh(beta_c))^r, and pass in {0,1}. */
slising_status slising_decay_bound(const slising_graph* g, double beta, int32_t ux, int32_t uy,
                                   int32_t vx, int32_t vy, double* value, double* bound,
                                   int32_t* pass);

/* -- norms and constants -------------------------------------------------- */

slising_status slising_torus_operator_norm(int32_t m, int32_t n, double* out);
slising_status slising_torus_fourier_determinant(int32_t m, int32_t n, double x, double* out);
slising_status slising_beta_critical(double* out);

/* -- verification suites -------------------------------------------------- */

/* Suites: identities, cancellation, bijection, norms, all. *report gets the
 * JSON report; *pass gets 0/1. */
slising_status slising_verify(const char* suite, char** report, int32_t* pass);

void slising_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SLISING_H */
