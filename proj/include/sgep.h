/* Copyright (c) 2026 sgep contributors
 * Licensed under Apache 2.0
 *
 * C API of the sgep shared library: sparse generalized eigenvector solvers
 * for a symmetric pair (A, B), B positive definite.
 *
 * Conventions:
 *  - every fallible function returns sgep_status; SGEP_OK is 0;
 *  - sgep_last_error() returns a thread-local detail message for the most
 *    recent failure on the calling thread;
 *  - matrices are dense row-major double arrays;
 *  - objects returned through sgep_*_create/gen are released with the
 *    matching *_destroy; buffers returned as double** are released with
 *    sgep_free.
 */
#ifndef SGEP_H
#define SGEP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgep_status {
  SGEP_OK = 0,
  SGEP_ERR_DIMENSION_MISMATCH = 1,
  SGEP_ERR_NONFINITE_ENTRY = 2,
  SGEP_ERR_EXCESSIVE_ASYMMETRY = 3,
  SGEP_ERR_NOT_HERMITIAN = 4,
  SGEP_ERR_NONPOSITIVE_B = 5,
  SGEP_ERR_NOT_DIAGONAL_B = 6,
  SGEP_ERR_NOT_ORTHONORMAL = 7,
  SGEP_ERR_INFEASIBLE_START = 8,
  SGEP_ERR_ZERO_RESIDUAL = 9,
  SGEP_ERR_SINGULAR = 10,
  SGEP_ERR_LINEAR_SOLVE = 11,
  SGEP_ERR_INVALID_CONFIG = 12,
  SGEP_ERR_IO = 13,
  SGEP_ERR_PARSE = 14,
  SGEP_ERR_NULL_ARGUMENT = 15,
  SGEP_ERR_INTERNAL = 16
} sgep_status;

typedef enum sgep_family {
  SGEP_FAMILY_LP = 0,
  SGEP_FAMILY_LOG = 1,
  SGEP_FAMILY_EXP = 2
} sgep_family;

typedef enum sgep_solver {
  SGEP_SOLVER_IRQM = 0,              /* reweighted quadratic minorization */
  SGEP_SOLVER_IRQM_CONTINUATION = 1, /* IRQM over a decreasing epsilon schedule */
  SGEP_SOLVER_MM_DIAG = 2,           /* closed-form MM, smoothed penalty; B diagonal */
  SGEP_SOLVER_MM_L0 = 3              /* closed-form MM, exact l0 penalty; B diagonal */
} sgep_solver;

/* Penalty: family, shape parameter p (0 < p <= 1 for LP, p > 0 otherwise),
 * weight rho >= 0, smoothing epsilon > 0. For SGEP_SOLVER_MM_L0 only rho is
 * used. */
typedef struct sgep_penalty {
  int family;
  double p;
  double rho;
  double epsilon;
} sgep_penalty;

typedef struct sgep_options {
  double tol_outer;                /* relative objective stopping rule (1e-5) */
  long max_outer;                  /* outer iteration cap (1000) */
  double tol_inner;                /* eigensolver tolerance (1e-10) */
  long max_inner;                  /* eigensolver iteration cap (5000) */
  double precond_ratio_threshold;  /* preconditioner activation ratio (100) */
  int continuation_steps;          /* decreasing-epsilon steps T (5) */
  double continuation_epsilon_final; /* last-stage epsilon (1e-8) */
} sgep_options;

void sgep_options_init(sgep_options* opts);
void sgep_penalty_init(sgep_penalty* penalty);

const char* sgep_status_message(sgep_status status);
const char* sgep_last_error(void);
void sgep_free(void* ptr);

/* ---- problems ---------------------------------------------------------- */

typedef struct sgep_problem sgep_problem;

/* Symmetrizes (M+M')/2; rejects asymmetry beyond 1e-8 of the max-norm. */
sgep_status sgep_problem_create(long n, const double* a, const double* b, sgep_problem** out);

/* Real 2n x 2n embedding [[Re,-Im],[Im,Re]] of a Hermitian pair given as
 * separate real/imaginary row-major arrays (imaginary parts may be NULL). */
sgep_status sgep_problem_create_complex(long n, const double* a_re, const double* a_im,
                                        const double* b_re, const double* b_im,
                                        sgep_problem** out);

/* Covariance problem from an m x n data matrix: A = C'C, B = I. */
sgep_status sgep_problem_from_data(long m, long n, const double* c, sgep_problem** out);

sgep_status sgep_problem_read_mtx(const char* a_path, const char* b_path, sgep_problem** out);

long sgep_problem_dim(const sgep_problem* problem);
/* Copies A and/or B (row-major n*n); either output may be NULL. */
sgep_status sgep_problem_get(const sgep_problem* problem, double* a_out, double* b_out);
void sgep_problem_destroy(sgep_problem* problem);

/* ---- solving ----------------------------------------------------------- */

typedef struct sgep_report sgep_report;

/* Runs the selected solver. x0 (length n, x0'Bx0 = 1) may be NULL, in which
 * case a random feasible start is drawn from x0_seed. The MM solvers require
 * B diagonal and internally shift A to be PSD when needed; reported
 * objectives always refer to the original problem. */
sgep_status sgep_solve(const sgep_problem* problem, sgep_solver solver,
                       const sgep_penalty* penalty, const sgep_options* opts, const double* x0,
                       uint64_t x0_seed, sgep_report** out);

long sgep_report_dim(const sgep_report* report);
sgep_status sgep_report_get_x(const sgep_report* report, double* x_out);
double sgep_report_objective(const sgep_report* report);
long sgep_report_cardinality(const sgep_report* report);
long sgep_report_outer_iters(const sgep_report* report);
int sgep_report_converged(const sgep_report* report);
double sgep_report_wall_ms(const sgep_report* report);
long sgep_report_trace_len(const sgep_report* report);
sgep_status sgep_report_get_trace(const sgep_report* report, double* trace_out);
void sgep_report_destroy(sgep_report* report);

/* Stationarity gap sqrt(g'B^{-1}g) - g'x of the convexified problem at a
 * feasible x; pass alpha < 0 to use the library default. */
sgep_status sgep_stationarity_gap(const sgep_problem* problem, const sgep_penalty* penalty,
                                  double alpha, const double* x, double* gap_out);

/* ---- synthetic data ---------------------------------------------------- */

/* A = C + C' (C n x n), B = D'D (D ceil(1.2n) x n), entries iid N(0,1). */
sgep_status sgep_gen_random_pair(long n, uint64_t seed, sgep_problem** out);

/* Planted generalized eigenstructure (defaults follow the n=100 two-sparse-
 * vector model; larger n keeps the same leading pattern). Optional outputs:
 * v1_out (length n) the planted leading sparse eigenvector, d_out (length n)
 * the generalized eigenvalues. */
sgep_status sgep_gen_planted(long n, uint64_t seed, sgep_problem** out, double* v1_out,
                             double* d_out);

/* Sparse-PCA samples: m x n data with covariance V Diag(d) V', d = (400,
 * 300, 1, ...). c_out must hold m*n doubles; v1_out (length n) optional. */
sgep_status sgep_gen_sparse_pca(long n, long m, uint64_t seed, double* c_out, double* v1_out);

/* Independent sub-stream seeds for trial parallelism. */
uint64_t sgep_stream_seed(uint64_t base, uint64_t index);

/* ---- file I/O ---------------------------------------------------------- */

sgep_status sgep_read_mtx(const char* path, long* rows, long* cols, double** data_out);
sgep_status sgep_write_mtx(const char* path, long rows, long cols, const double* data,
                           int symmetric);

/* Rectangular numeric CSV; header skips the first row, center subtracts
 * column means. */
sgep_status sgep_read_csv(const char* path, int header, int center, long* rows, long* cols,
                          double** data_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SGEP_H */
