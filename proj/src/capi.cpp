// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// extern-C shim: maps the C++ core onto opaque handles and status codes.

#include "sgep.h"

#include "sgep/csvio.hpp"
#include "sgep/datagen.hpp"
#include "sgep/irqm.hpp"
#include "sgep/mmio.hpp"
#include "sgep/structured.hpp"
#include "sgep/types.hpp"

#include <cstring>
#include <exception>
#include <memory>
#include <mutex>
#include <new>
#include <string>

namespace {

// Structured form for the MM solvers, built once per problem handle.
struct StructuredForm {
  sgep::DiagonalProblem diag;
  double alpha = 0.0;
};

}  // namespace

struct sgep_problem {
  sgep::ProblemInstance instance;
  mutable std::mutex cache_mutex;
  mutable std::shared_ptr<const StructuredForm> structured;
};

struct sgep_report {
  sgep::SolveReport report;
};

namespace {

thread_local std::string g_last_error;

sgep_status code_to_status(sgep::ErrorCode code) {
  using sgep::ErrorCode;
  switch (code) {
    case ErrorCode::DimensionMismatch:
      return SGEP_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NonFiniteEntry:
      return SGEP_ERR_NONFINITE_ENTRY;
    case ErrorCode::ExcessiveAsymmetry:
      return SGEP_ERR_EXCESSIVE_ASYMMETRY;
    case ErrorCode::NotHermitian:
      return SGEP_ERR_NOT_HERMITIAN;
    case ErrorCode::NonPositiveB:
      return SGEP_ERR_NONPOSITIVE_B;
    case ErrorCode::NotDiagonalB:
      return SGEP_ERR_NOT_DIAGONAL_B;
    case ErrorCode::NotOrthonormal:
      return SGEP_ERR_NOT_ORTHONORMAL;
    case ErrorCode::InfeasibleStart:
      return SGEP_ERR_INFEASIBLE_START;
    case ErrorCode::ZeroResidual:
      return SGEP_ERR_ZERO_RESIDUAL;
    case ErrorCode::SingularV:
      return SGEP_ERR_SINGULAR;
    case ErrorCode::LinearSolveFailure:
      return SGEP_ERR_LINEAR_SOLVE;
    case ErrorCode::InvalidConfig:
      return SGEP_ERR_INVALID_CONFIG;
    case ErrorCode::IoError:
      return SGEP_ERR_IO;
    case ErrorCode::ParseError:
      return SGEP_ERR_PARSE;
  }
  return SGEP_ERR_INTERNAL;
}

template <class Fn>
sgep_status guarded(Fn&& fn) {
  try {
    fn();
    return SGEP_OK;
  } catch (const sgep::Error& e) {
    g_last_error = e.what();
    return code_to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SGEP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SGEP_ERR_INTERNAL;
  }
}

sgep_status require(bool ok, const char* what) {
  if (ok) return SGEP_OK;
  g_last_error = what;
  return SGEP_ERR_NULL_ARGUMENT;
}

sgep::Matrix map_rowmajor(long rows, long cols, const double* data) {
  return Eigen::Map<const sgep::Matrix>(data, rows, cols);
}

sgep::PenaltyConfig to_penalty(const sgep_penalty& p) {
  sgep::Family family;
  switch (p.family) {
    case SGEP_FAMILY_LP:
      family = sgep::Family::Lp;
      break;
    case SGEP_FAMILY_LOG:
      family = sgep::Family::Log;
      break;
    case SGEP_FAMILY_EXP:
      family = sgep::Family::Exp;
      break;
    default:
      throw sgep::Error(sgep::ErrorCode::InvalidConfig, "unknown penalty family id");
  }
  return sgep::PenaltyConfig(family, p.p, p.rho, p.epsilon);
}

sgep::SolverConfig to_config(const sgep_options* opts, bool continuation) {
  sgep::SolverConfig config;
  if (opts) {
    config.tol_outer = opts->tol_outer;
    config.max_outer = static_cast<int>(opts->max_outer);
    config.tol_inner = opts->tol_inner;
    config.max_inner = static_cast<int>(opts->max_inner);
    config.precond_ratio_threshold = opts->precond_ratio_threshold;
    if (continuation)
      config.continuation =
          sgep::ContinuationSchedule{opts->continuation_steps, opts->continuation_epsilon_final};
  } else if (continuation) {
    config.continuation = sgep::ContinuationSchedule{};
  }
  config.validate();
  return config;
}

double* copy_out(const sgep::Matrix& m) {
  double* data = static_cast<double*>(::operator new[](sizeof(double) * m.size()));
  std::memcpy(data, m.data(), sizeof(double) * m.size());
  return data;
}

std::shared_ptr<const StructuredForm> structured_form(const sgep_problem& problem) {
  std::lock_guard<std::mutex> lock(problem.cache_mutex);
  if (!problem.structured) {
    auto diag = problem.instance.b_diagonal();
    if (!diag)
      throw sgep::Error(sgep::ErrorCode::NotDiagonalB, "the MM solvers require a diagonal B");
    auto form = std::make_shared<StructuredForm>();
    form->diag = sgep::DiagonalProblem::make_shifted(problem.instance.a(), *diag, &form->alpha);
    problem.structured = std::move(form);
  }
  return problem.structured;
}

}  // namespace

extern "C" {

void sgep_options_init(sgep_options* opts) {
  if (!opts) return;
  const sgep::SolverConfig defaults;
  opts->tol_outer = defaults.tol_outer;
  opts->max_outer = defaults.max_outer;
  opts->tol_inner = defaults.tol_inner;
  opts->max_inner = defaults.max_inner;
  opts->precond_ratio_threshold = defaults.precond_ratio_threshold;
  const sgep::ContinuationSchedule schedule;
  opts->continuation_steps = schedule.steps;
  opts->continuation_epsilon_final = schedule.epsilon_final;
}

void sgep_penalty_init(sgep_penalty* penalty) {
  if (!penalty) return;
  const sgep::PenaltyConfig defaults;
  penalty->family = SGEP_FAMILY_LOG;
  penalty->p = defaults.p;
  penalty->rho = defaults.rho;
  penalty->epsilon = defaults.epsilon;
}

const char* sgep_status_message(sgep_status status) {
  switch (status) {
    case SGEP_OK:
      return "ok";
    case SGEP_ERR_DIMENSION_MISMATCH:
      return "dimension mismatch";
    case SGEP_ERR_NONFINITE_ENTRY:
      return "non-finite entry";
    case SGEP_ERR_EXCESSIVE_ASYMMETRY:
      return "excessive asymmetry";
    case SGEP_ERR_NOT_HERMITIAN:
      return "matrix is not Hermitian";
    case SGEP_ERR_NONPOSITIVE_B:
      return "B (or b) is not strictly positive";
    case SGEP_ERR_NOT_DIAGONAL_B:
      return "B is not diagonal";
    case SGEP_ERR_NOT_ORTHONORMAL:
      return "columns are not orthonormal";
    case SGEP_ERR_INFEASIBLE_START:
      return "infeasible starting point";
    case SGEP_ERR_ZERO_RESIDUAL:
      return "zero residual";
    case SGEP_ERR_SINGULAR:
      return "singular matrix";
    case SGEP_ERR_LINEAR_SOLVE:
      return "linear solve failed";
    case SGEP_ERR_INVALID_CONFIG:
      return "invalid configuration";
    case SGEP_ERR_IO:
      return "I/O error";
    case SGEP_ERR_PARSE:
      return "parse error";
    case SGEP_ERR_NULL_ARGUMENT:
      return "null argument";
    case SGEP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* sgep_last_error(void) { return g_last_error.c_str(); }

void sgep_free(void* ptr) { ::operator delete[](ptr); }

sgep_status sgep_problem_create(long n, const double* a, const double* b, sgep_problem** out) {
  if (auto st = require(a && b && out && n > 0, "sgep_problem_create: bad arguments")) return st;
  return guarded([&] {
    *out = new sgep_problem{
        sgep::ProblemInstance::validate_and_symmetrize(map_rowmajor(n, n, a),
                                                       map_rowmajor(n, n, b))};
  });
}

sgep_status sgep_problem_create_complex(long n, const double* a_re, const double* a_im,
                                        const double* b_re, const double* b_im,
                                        sgep_problem** out) {
  if (auto st = require(a_re && b_re && out && n > 0, "sgep_problem_create_complex: bad arguments"))
    return st;
  return guarded([&] {
    sgep::ComplexMatrix a(n, n), b(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        a(i, j) = {a_re[i * n + j], a_im ? a_im[i * n + j] : 0.0};
        b(i, j) = {b_re[i * n + j], b_im ? b_im[i * n + j] : 0.0};
      }
    *out = new sgep_problem{sgep::ProblemInstance::embed_complex(a, b)};
  });
}

sgep_status sgep_problem_from_data(long m, long n, const double* c, sgep_problem** out) {
  if (auto st = require(c && out && m > 0 && n > 0, "sgep_problem_from_data: bad arguments"))
    return st;
  return guarded([&] {
    const sgep::Matrix data = map_rowmajor(m, n, c);
    sgep::Matrix a = data.transpose() * data;
    *out = new sgep_problem{
        sgep::ProblemInstance::validate_and_symmetrize(a, sgep::Matrix::Identity(n, n))};
  });
}

sgep_status sgep_problem_read_mtx(const char* a_path, const char* b_path, sgep_problem** out) {
  if (auto st = require(a_path && b_path && out, "sgep_problem_read_mtx: bad arguments")) return st;
  return guarded([&] {
    *out = new sgep_problem{sgep::ProblemInstance::validate_and_symmetrize(
        sgep::mmio::read_matrix(a_path), sgep::mmio::read_matrix(b_path))};
  });
}

long sgep_problem_dim(const sgep_problem* problem) {
  return problem ? problem->instance.dim() : 0;
}

sgep_status sgep_problem_get(const sgep_problem* problem, double* a_out, double* b_out) {
  if (auto st = require(problem != nullptr, "sgep_problem_get: null problem")) return st;
  const long n = problem->instance.dim();
  if (a_out) std::memcpy(a_out, problem->instance.a().data(), sizeof(double) * n * n);
  if (b_out) std::memcpy(b_out, problem->instance.b().data(), sizeof(double) * n * n);
  return SGEP_OK;
}

void sgep_problem_destroy(sgep_problem* problem) { delete problem; }

sgep_status sgep_solve(const sgep_problem* problem, sgep_solver solver,
                       const sgep_penalty* penalty, const sgep_options* opts, const double* x0,
                       uint64_t x0_seed, sgep_report** out) {
  if (auto st = require(problem && penalty && out, "sgep_solve: bad arguments")) return st;
  return guarded([&] {
    const auto& instance = problem->instance;
    const auto pen = to_penalty(*penalty);
    const auto config = to_config(opts, solver == SGEP_SOLVER_IRQM_CONTINUATION);
    sgep::Vector start;
    if (x0)
      start = Eigen::Map<const sgep::Vector>(x0, instance.dim());
    else
      start = sgep::random_feasible_x0(instance, x0_seed);

    sgep::SolveReport report;
    switch (solver) {
      case SGEP_SOLVER_IRQM:
        report = sgep::irqm_solve(instance, pen, config, start);
        break;
      case SGEP_SOLVER_IRQM_CONTINUATION:
        report = sgep::irqm_continuation(instance, pen, config, start);
        break;
      case SGEP_SOLVER_MM_DIAG:
      case SGEP_SOLVER_MM_L0: {
        const auto form = structured_form(*problem);
        report = solver == SGEP_SOLVER_MM_DIAG
                     ? sgep::mm_diag_surrogate(form->diag, pen, config, start)
                     : sgep::mm_diag_l0(form->diag, pen.rho, config, start);
        // The shift adds the constant alpha on the constraint set; report
        // the original problem's objective.
        report.objective -= form->alpha;
        for (auto& value : report.objective_trace) value -= form->alpha;
        break;
      }
      default:
        throw sgep::Error(sgep::ErrorCode::InvalidConfig, "unknown solver id");
    }
    *out = new sgep_report{std::move(report)};
  });
}

long sgep_report_dim(const sgep_report* report) {
  return report ? static_cast<long>(report->report.x.size()) : 0;
}

sgep_status sgep_report_get_x(const sgep_report* report, double* x_out) {
  if (auto st = require(report && x_out, "sgep_report_get_x: bad arguments")) return st;
  std::memcpy(x_out, report->report.x.data(), sizeof(double) * report->report.x.size());
  return SGEP_OK;
}

double sgep_report_objective(const sgep_report* report) { return report->report.objective; }
long sgep_report_cardinality(const sgep_report* report) { return report->report.cardinality; }
long sgep_report_outer_iters(const sgep_report* report) { return report->report.outer_iters; }
int sgep_report_converged(const sgep_report* report) { return report->report.converged ? 1 : 0; }
double sgep_report_wall_ms(const sgep_report* report) { return report->report.wall_time_ms; }

long sgep_report_trace_len(const sgep_report* report) {
  return report ? static_cast<long>(report->report.objective_trace.size()) : 0;
}

sgep_status sgep_report_get_trace(const sgep_report* report, double* trace_out) {
  if (auto st = require(report && trace_out, "sgep_report_get_trace: bad arguments")) return st;
  std::memcpy(trace_out, report->report.objective_trace.data(),
              sizeof(double) * report->report.objective_trace.size());
  return SGEP_OK;
}

void sgep_report_destroy(sgep_report* report) { delete report; }

sgep_status sgep_stationarity_gap(const sgep_problem* problem, const sgep_penalty* penalty,
                                  double alpha, const double* x, double* gap_out) {
  if (auto st = require(problem && penalty && x && gap_out, "sgep_stationarity_gap: bad arguments"))
    return st;
  return guarded([&] {
    const auto pen = to_penalty(*penalty);
    const sgep::Vector point = Eigen::Map<const sgep::Vector>(x, problem->instance.dim());
    const double a =
        alpha < 0 ? sgep::default_stationarity_alpha(problem->instance, pen) : alpha;
    *gap_out = sgep::stationarity_gap(problem->instance, pen, a, point);
  });
}

sgep_status sgep_gen_random_pair(long n, uint64_t seed, sgep_problem** out) {
  if (auto st = require(out && n > 0, "sgep_gen_random_pair: bad arguments")) return st;
  return guarded([&] {
    *out = new sgep_problem{sgep::datagen::gen_random_pair(static_cast<int>(n), seed)};
  });
}

sgep_status sgep_gen_planted(long n, uint64_t seed, sgep_problem** out, double* v1_out,
                             double* d_out) {
  if (auto st = require(out && n >= 10, "sgep_gen_planted: requires n >= 10")) return st;
  return guarded([&] {
    auto planted =
        sgep::datagen::gen_planted_gep(sgep::datagen::PlantedSpec::defaults(seed, static_cast<int>(n)));
    if (v1_out)
      for (long i = 0; i < n; ++i) v1_out[i] = planted.v(i, 0);
    if (d_out)
      for (long i = 0; i < n; ++i) d_out[i] = planted.d[i];
    *out = new sgep_problem{std::move(planted.problem)};
  });
}

sgep_status sgep_gen_sparse_pca(long n, long m, uint64_t seed, double* c_out, double* v1_out) {
  if (auto st = require(c_out && n >= 20 && m > 0, "sgep_gen_sparse_pca: requires n >= 20"))
    return st;
  return guarded([&] {
    auto data = sgep::datagen::gen_sparse_pca_data(
        sgep::datagen::SparsePcaSpec::defaults(seed, static_cast<int>(n), static_cast<int>(m)));
    std::memcpy(c_out, data.c.data(), sizeof(double) * m * n);
    if (v1_out)
      for (long i = 0; i < n; ++i) v1_out[i] = data.v_leading(i, 0);
  });
}

uint64_t sgep_stream_seed(uint64_t base, uint64_t index) {
  return sgep::datagen::stream_seed(base, index);
}

sgep_status sgep_read_mtx(const char* path, long* rows, long* cols, double** data_out) {
  if (auto st = require(path && rows && cols && data_out, "sgep_read_mtx: bad arguments"))
    return st;
  return guarded([&] {
    const sgep::Matrix m = sgep::mmio::read_matrix(path);
    *rows = m.rows();
    *cols = m.cols();
    *data_out = copy_out(m);
  });
}

sgep_status sgep_write_mtx(const char* path, long rows, long cols, const double* data,
                           int symmetric) {
  if (auto st = require(path && data && rows > 0 && cols > 0, "sgep_write_mtx: bad arguments"))
    return st;
  return guarded(
      [&] { sgep::mmio::write_matrix(path, map_rowmajor(rows, cols, data), symmetric != 0); });
}

sgep_status sgep_read_csv(const char* path, int header, int center, long* rows, long* cols,
                          double** data_out) {
  if (auto st = require(path && rows && cols && data_out, "sgep_read_csv: bad arguments"))
    return st;
  return guarded([&] {
    const sgep::Matrix m = sgep::csvio::read_csv_data(path, header != 0, center != 0);
    *rows = m.rows();
    *cols = m.cols();
    *data_out = copy_out(m);
  });
}

}  // extern "C"
