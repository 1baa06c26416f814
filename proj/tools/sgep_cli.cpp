// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// sgep command-line harness: instance generation, single solves, rho-grid
// recovery sweeps, explained-variance curves, and timing benchmarks. All
// solver work goes through the shared-library C API (sgep.h).

#include <sgep.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using nlohmann::json;

namespace {

[[noreturn]] void die(const std::string& context, sgep_status status) {
  std::cerr << "error: " << context << ": " << sgep_status_message(status);
  const char* detail = sgep_last_error();
  if (detail && *detail) std::cerr << " (" << detail << ")";
  std::cerr << "\n";
  std::exit(1);
}

void check(sgep_status status, const std::string& context) {
  if (status != SGEP_OK) die(context, status);
}

struct ProblemDeleter {
  void operator()(sgep_problem* p) const { sgep_problem_destroy(p); }
};
struct ReportDeleter {
  void operator()(sgep_report* r) const { sgep_report_destroy(r); }
};
using ProblemPtr = std::unique_ptr<sgep_problem, ProblemDeleter>;
using ReportPtr = std::unique_ptr<sgep_report, ReportDeleter>;

int solver_id(const std::string& name) {
  if (name == "irqm") return SGEP_SOLVER_IRQM;
  if (name == "irqm-continuation") return SGEP_SOLVER_IRQM_CONTINUATION;
  if (name == "mm-diag") return SGEP_SOLVER_MM_DIAG;
  if (name == "mm-l0") return SGEP_SOLVER_MM_L0;
  std::cerr << "error: unknown solver '" << name << "'\n";
  std::exit(1);
}

int family_id(const std::string& name) {
  if (name == "lp") return SGEP_FAMILY_LP;
  if (name == "log") return SGEP_FAMILY_LOG;
  if (name == "exp") return SGEP_FAMILY_EXP;
  std::cerr << "error: unknown family '" << name << "'\n";
  std::exit(1);
}

// Shared penalty/solver flag bundle.
struct SolverFlags {
  std::string solver = "irqm";
  std::string family = "log";
  double p = 1.0;
  double rho = 0.1;
  double epsilon = 1e-8;
  double tol_outer = 1e-5;
  long max_outer = 1000;
  double tol_inner = 1e-10;
  long max_inner = 5000;
  double precond_threshold = 100.0;
  int cont_steps = 5;
  double cont_eps_final = 1e-8;
  std::uint64_t x0_seed = 0;

  void attach(CLI::App* cmd, bool with_solver = true) {
    if (with_solver)
      cmd->add_option("--solver", solver, "irqm | irqm-continuation | mm-diag | mm-l0");
    cmd->add_option("--family", family, "surrogate family: lp | log | exp");
    cmd->add_option("--p", p, "surrogate shape parameter");
    cmd->add_option("--rho", rho, "regularization weight");
    cmd->add_option("--epsilon", epsilon, "smoothing parameter");
    cmd->add_option("--tol-outer", tol_outer, "outer relative-objective tolerance");
    cmd->add_option("--max-outer", max_outer, "outer iteration cap");
    cmd->add_option("--tol-inner", tol_inner, "eigensolver tolerance");
    cmd->add_option("--max-inner", max_inner, "eigensolver iteration cap");
    cmd->add_option("--precond-threshold", precond_threshold,
                    "preconditioner activation ratio");
    cmd->add_option("--cont-steps", cont_steps, "continuation steps T");
    cmd->add_option("--cont-eps-final", cont_eps_final, "continuation final epsilon");
    cmd->add_option("--x0-seed", x0_seed, "seed for the random feasible start");
  }

  sgep_penalty penalty() const {
    sgep_penalty pen;
    sgep_penalty_init(&pen);
    pen.family = family_id(family);
    pen.p = p;
    pen.rho = rho;
    pen.epsilon = epsilon;
    return pen;
  }

  sgep_options options() const {
    sgep_options opts;
    sgep_options_init(&opts);
    opts.tol_outer = tol_outer;
    opts.max_outer = max_outer;
    opts.tol_inner = tol_inner;
    opts.max_inner = max_inner;
    opts.precond_ratio_threshold = precond_threshold;
    opts.continuation_steps = cont_steps;
    opts.continuation_epsilon_final = cont_eps_final;
    return opts;
  }
};

struct Instance {
  ProblemPtr problem;
  std::vector<double> v1;    // ground truth, empty when unknown
  std::vector<double> data;  // raw data matrix for sparse-pca (row-major m x n)
  long n = 0;
  long m = 0;
};

Instance generate_instance(const std::string& model, long n, long m, std::uint64_t seed) {
  Instance inst;
  inst.n = n;
  inst.m = m;
  sgep_problem* raw = nullptr;
  if (model == "random") {
    check(sgep_gen_random_pair(n, seed, &raw), "generating random pair");
  } else if (model == "planted") {
    inst.v1.resize(n);
    check(sgep_gen_planted(n, seed, &raw, inst.v1.data(), nullptr), "generating planted model");
  } else if (model == "sparse-pca") {
    inst.v1.resize(n);
    inst.data.resize(static_cast<std::size_t>(m) * n);
    check(sgep_gen_sparse_pca(n, m, seed, inst.data.data(), inst.v1.data()),
          "generating sparse-PCA data");
    check(sgep_problem_from_data(m, n, inst.data.data(), &raw), "building covariance problem");
  } else {
    std::cerr << "error: unknown model '" << model << "'\n";
    std::exit(1);
  }
  inst.problem.reset(raw);
  return inst;
}

ReportPtr run_solve(const sgep_problem* problem, int solver, const sgep_penalty& pen,
                    const sgep_options& opts, std::uint64_t x0_seed) {
  sgep_report* raw = nullptr;
  check(sgep_solve(problem, static_cast<sgep_solver>(solver), &pen, &opts, nullptr, x0_seed, &raw),
        "solving");
  return ReportPtr(raw);
}

std::vector<double> report_x(const sgep_report* report) {
  std::vector<double> x(sgep_report_dim(report));
  check(sgep_report_get_x(report, x.data()), "reading solution");
  return x;
}

bool recovered_planted(const std::vector<double>& x, const std::vector<double>& v1) {
  double dist2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = std::abs(x[i]) - v1[i];
    dist2 += diff * diff;
  }
  return std::sqrt(dist2) <= 0.01;
}

bool recovered_pca(const std::vector<double>& x, const std::vector<double>& v1) {
  double dot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * v1[i];
  return std::abs(dot) > 0.99;
}

bool check_recovery(const std::string& model, const std::vector<double>& x,
                    const std::vector<double>& v1) {
  if (v1.empty()) return false;
  return model == "planted" ? recovered_planted(x, v1) : recovered_pca(x, v1);
}

// Per-instance data read off A = C'C: the rho normalization scale (l0
// solvers divide by the largest column norm squared of C = max diagonal of
// A, the surrogate solvers by 2 * max row norm of A) and the deterministic
// multi-start seeds for the MM solvers (unit vectors at the largest
// diagonal entries).
struct InstanceInfo {
  double l0_scale = 1.0;
  double surrogate_scale = 1.0;
  std::vector<long> start_indices;
};

InstanceInfo instance_info(const sgep_problem* problem, int n_starts) {
  const long n = sgep_problem_dim(problem);
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  check(sgep_problem_get(problem, a.data(), nullptr), "reading A");
  InstanceInfo info;
  double max_diag = 0, max_row = 0;
  std::vector<std::pair<double, long>> diag(n);
  for (long i = 0; i < n; ++i) {
    diag[i] = {a[i * n + i], i};
    max_diag = std::max(max_diag, a[i * n + i]);
    double row2 = 0;
    for (long j = 0; j < n; ++j) row2 += a[i * n + j] * a[i * n + j];
    max_row = std::max(max_row, std::sqrt(row2));
  }
  info.l0_scale = max_diag;
  info.surrogate_scale = 2.0 * max_row;
  std::stable_sort(diag.begin(), diag.end(),
                   [](const auto& lhs, const auto& rhs) { return lhs.first > rhs.first; });
  for (long i = 0; i < std::min<long>(n_starts, n); ++i)
    info.start_indices.push_back(diag[i].second);
  return info;
}

// The MM solvers are sensitive to the starting point on sampled data; a
// small deterministic multi-start (largest-diagonal basis vectors, keep the
// best objective) makes the sweeps reproducible and start-robust.
ReportPtr run_solve_multistart(const sgep_problem* problem, int solver, const sgep_penalty& pen,
                               const sgep_options& opts, const std::vector<long>& starts) {
  const long n = sgep_problem_dim(problem);
  ReportPtr best;
  std::vector<double> x0(n);
  for (long index : starts) {
    std::fill(x0.begin(), x0.end(), 0.0);
    x0[index] = 1.0;
    sgep_report* raw = nullptr;
    if (sgep_solve(problem, static_cast<sgep_solver>(solver), &pen, &opts, x0.data(), 0, &raw) !=
        SGEP_OK)
      continue;
    ReportPtr report(raw);
    if (!best || sgep_report_objective(report.get()) > sgep_report_objective(best.get()))
      best = std::move(report);
  }
  return best;
}

bool solver_is_mm(const std::string& solver) {
  return solver == "mm-l0" || solver == "mm-diag";
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream parse(csv);
  std::string item;
  while (std::getline(parse, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  return values;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (std::log(hi) - std::log(lo)) / (points - 1);
  for (int i = 0; i < points; ++i) grid[i] = std::exp(std::log(lo) + step * i);
  return grid;
}

int default_jobs() {
  if (const char* env = std::getenv("SGEP_JOBS")) {
    const int jobs = std::atoi(env);
    if (jobs > 0) return jobs;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(1);
  }
  out << contents;
}

// ---- gen ----------------------------------------------------------------

struct GenArgs {
  std::string model = "planted";
  long n = 100;
  long m = 50;
  std::uint64_t seed = 0;
  std::string out_a, out_b, out_data, truth;
};

int cmd_gen(const GenArgs& args) {
  Instance inst = generate_instance(args.model, args.n, args.m, args.seed);

  if (args.model == "sparse-pca") {
    if (!args.out_data.empty())
      check(sgep_write_mtx(args.out_data.c_str(), args.m, args.n, inst.data.data(), 0),
            "writing data matrix");
  }
  if (!args.out_a.empty() || !args.out_b.empty()) {
    const long n = args.n;
    std::vector<double> a(static_cast<std::size_t>(n) * n), b(a.size());
    check(sgep_problem_get(inst.problem.get(), a.data(), b.data()), "reading pair");
    if (!args.out_a.empty())
      check(sgep_write_mtx(args.out_a.c_str(), n, n, a.data(), 1), "writing A");
    if (!args.out_b.empty())
      check(sgep_write_mtx(args.out_b.c_str(), n, n, b.data(), 1), "writing B");
  }
  if (!args.truth.empty()) {
    json sidecar;
    sidecar["model"] = args.model;
    sidecar["n"] = args.n;
    if (args.model == "sparse-pca") sidecar["m"] = args.m;
    sidecar["seed"] = args.seed;
    if (!inst.v1.empty()) sidecar["v1"] = inst.v1;
    write_file(args.truth, sidecar.dump(2) + "\n");
  }
  return 0;
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string a_path, b_path, data_path;
  bool data_header = false, data_center = false;
  std::string gen_model;
  long n = 100, m = 50;
  std::uint64_t seed = 0;
  SolverFlags flags;
  std::string out;
};

int cmd_solve(const SolveArgs& args) {
  Instance inst;
  if (!args.gen_model.empty()) {
    inst = generate_instance(args.gen_model, args.n, args.m, args.seed);
  } else if (!args.data_path.empty()) {
    long m = 0, n = 0;
    double* data = nullptr;
    check(sgep_read_csv(args.data_path.c_str(), args.data_header ? 1 : 0,
                        args.data_center ? 1 : 0, &m, &n, &data),
          "reading CSV data");
    inst.data.assign(data, data + m * n);
    sgep_free(data);
    sgep_problem* raw = nullptr;
    check(sgep_problem_from_data(m, n, inst.data.data(), &raw), "building covariance problem");
    inst.problem.reset(raw);
    inst.n = n;
    inst.m = m;
  } else if (!args.a_path.empty() && !args.b_path.empty()) {
    sgep_problem* raw = nullptr;
    check(sgep_problem_read_mtx(args.a_path.c_str(), args.b_path.c_str(), &raw),
          "reading matrix pair");
    inst.problem.reset(raw);
    inst.n = sgep_problem_dim(raw);
  } else {
    std::cerr << "error: provide --a/--b, --data, or --gen\n";
    return 1;
  }

  auto report = run_solve(inst.problem.get(), solver_id(args.flags.solver),
                          args.flags.penalty(), args.flags.options(), args.flags.x0_seed);
  const auto x = report_x(report.get());

  json out;
  out["solver"] = args.flags.solver;
  out["family"] = args.flags.family;
  out["p"] = args.flags.p;
  out["rho"] = args.flags.rho;
  out["epsilon"] = args.flags.epsilon;
  out["objective"] = sgep_report_objective(report.get());
  out["cardinality"] = sgep_report_cardinality(report.get());
  out["iters"] = sgep_report_outer_iters(report.get());
  out["converged"] = sgep_report_converged(report.get()) != 0;
  out["wall_ms"] = sgep_report_wall_ms(report.get());
  out["x"] = x;
  std::vector<double> trace(sgep_report_trace_len(report.get()));
  check(sgep_report_get_trace(report.get(), trace.data()), "reading trace");
  out["objective_trace"] = trace;
  if (!inst.v1.empty()) out["recovered"] = check_recovery(args.gen_model, x, inst.v1);

  const std::string text = out.dump(2) + "\n";
  if (args.out.empty())
    std::cout << text;
  else
    write_file(args.out, text);
  return sgep_report_converged(report.get()) ? 0 : 2;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string model = "planted";
  long n = 100, m = 50;
  int trials = 50;
  std::uint64_t seed = 1;
  std::string rho_grid;
  double rho_min = 1e-3, rho_max = 10.0;
  int rho_points = 20;
  bool normalized_rho = false;
  int jobs = 0;
  SolverFlags flags;
  std::string out = "sweep";
};

struct TrialRecord {
  double rho = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool recovered = false;
  long cardinality = 0;
  double objective = 0;
  long outer_iters = 0;
  double wall_ms = 0;
  bool converged = true;
};

int cmd_sweep(const SweepArgs& args) {
  const std::vector<double> grid =
      args.rho_grid.empty() ? log_grid(args.rho_min, args.rho_max, args.rho_points)
                            : parse_list(args.rho_grid);
  if (grid.empty() || args.trials < 1) {
    std::cerr << "error: empty rho grid or trials < 1\n";
    return 1;
  }
  for (double rho : grid)
    if (!(rho > 0)) {
      std::cerr << "error: rho grid must be strictly positive\n";
      return 1;
    }

  const int jobs = args.jobs > 0 ? args.jobs : default_jobs();
  const int solver = solver_id(args.flags.solver);
  std::vector<TrialRecord> records(static_cast<std::size_t>(args.trials) * grid.size());

  std::atomic<int> next_trial{0};
  auto worker = [&] {
    for (;;) {
      const int trial = next_trial.fetch_add(1);
      if (trial >= args.trials) return;
      const std::uint64_t instance_seed = sgep_stream_seed(args.seed, 2 * trial);
      const std::uint64_t x0_seed = sgep_stream_seed(args.seed, 2 * trial + 1);
      Instance inst = generate_instance(args.model, args.n, args.m, instance_seed);
      const bool multistart = solver_is_mm(args.flags.solver) && !inst.data.empty();
      InstanceInfo info;
      if (args.normalized_rho || multistart) info = instance_info(inst.problem.get(), 6);
      const double scale =
          args.normalized_rho
              ? (args.flags.solver == "mm-l0" ? info.l0_scale : info.surrogate_scale)
              : 1.0;

      for (std::size_t g = 0; g < grid.size(); ++g) {
        sgep_penalty pen = args.flags.penalty();
        pen.rho = grid[g] * scale;
        TrialRecord rec;
        rec.rho = grid[g];
        rec.trial = trial;
        rec.seed = instance_seed;
        const sgep_options opts = args.flags.options();
        ReportPtr report;
        if (multistart) {
          report = run_solve_multistart(inst.problem.get(), solver, pen, opts,
                                        info.start_indices);
        } else {
          sgep_report* raw = nullptr;
          if (sgep_solve(inst.problem.get(), static_cast<sgep_solver>(solver), &pen, &opts,
                         nullptr, x0_seed, &raw) == SGEP_OK)
            report.reset(raw);
        }
        if (report) {
          const auto x = report_x(report.get());
          rec.recovered = check_recovery(args.model, x, inst.v1);
          rec.cardinality = sgep_report_cardinality(report.get());
          rec.objective = sgep_report_objective(report.get());
          rec.outer_iters = sgep_report_outer_iters(report.get());
          rec.wall_ms = sgep_report_wall_ms(report.get());
          rec.converged = sgep_report_converged(report.get()) != 0;
        } else {
          // Solver failures are recorded per trial, never abort the sweep.
          rec.converged = false;
        }
        records[g * args.trials + trial] = rec;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < std::min<int>(jobs, args.trials); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream trials_csv;
  trials_csv << "rho,trial,seed,recovered,cardinality,objective,outer_iters,wall_ms\n";
  trials_csv.precision(12);
  for (const auto& rec : records) {
    trials_csv << rec.rho << "," << rec.trial << "," << rec.seed << "," << (rec.recovered ? 1 : 0)
               << "," << rec.cardinality << "," << rec.objective << "," << rec.outer_iters << ","
               << rec.wall_ms << "\n";
  }

  std::ostringstream summary_csv;
  summary_csv << "rho,trials,recovered,recovery_fraction\n";
  summary_csv.precision(12);
  json jsummary = json::array();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    int recovered = 0;
    for (int t = 0; t < args.trials; ++t)
      if (records[g * args.trials + t].recovered) ++recovered;
    const double fraction = static_cast<double>(recovered) / args.trials;
    summary_csv << grid[g] << "," << args.trials << "," << recovered << "," << fraction << "\n";
    jsummary.push_back({{"rho", grid[g]},
                        {"trials", args.trials},
                        {"recovered", recovered},
                        {"recovery_fraction", fraction}});
  }

  write_file(args.out + "_trials.csv", trials_csv.str());
  write_file(args.out + "_summary.csv", summary_csv.str());

  json jout;
  jout["spec"] = {{"model", args.model},       {"n", args.n},
                  {"m", args.m},               {"trials", args.trials},
                  {"seed", args.seed},         {"solver", args.flags.solver},
                  {"family", args.flags.family}, {"p", args.flags.p},
                  {"epsilon", args.flags.epsilon}, {"normalized_rho", args.normalized_rho},
                  {"rho_grid", grid}};
  json jtrials = json::array();
  for (const auto& rec : records)
    jtrials.push_back({{"rho", rec.rho},
                       {"trial", rec.trial},
                       {"seed", rec.seed},
                       {"recovered", rec.recovered},
                       {"cardinality", rec.cardinality},
                       {"objective", rec.objective},
                       {"outer_iters", rec.outer_iters},
                       {"wall_ms", rec.wall_ms},
                       {"converged", rec.converged}});
  jout["trials"] = jtrials;
  jout["summary"] = jsummary;
  write_file(args.out + ".json", jout.dump(2) + "\n");

  double best = 0;
  for (const auto& row : jsummary) best = std::max(best, row["recovery_fraction"].get<double>());
  std::cout << "sweep complete: " << grid.size() << " rho points x " << args.trials
            << " trials; best recovery fraction " << best << "\n";
  return 0;
}

// ---- evar ----------------------------------------------------------------

struct EvarArgs {
  std::string data_path;
  bool data_header = false, data_center = false;
  std::string gen_model = "sparse-pca";
  bool use_gen = false;
  long n = 500, m = 50;
  std::uint64_t seed = 0;
  std::string targets = "10";
  SolverFlags flags;  // solver selects the sparse method (mm-l0 or mm-diag)
  std::string out;
};

// x' (C'C) x = ||C x||^2 without materializing A.
double quad_form(const std::vector<double>& data, long m, long n, const std::vector<double>& x) {
  double total = 0;
  for (long i = 0; i < m; ++i) {
    double dot = 0;
    const double* row = data.data() + static_cast<std::size_t>(i) * n;
    for (long j = 0; j < n; ++j) dot += row[j] * x[j];
    total += dot * dot;
  }
  return total;
}

int cmd_evar(const EvarArgs& args) {
  Instance inst;
  if (args.use_gen) {
    inst = generate_instance(args.gen_model, args.n, args.m, args.seed);
  } else if (!args.data_path.empty()) {
    long m = 0, n = 0;
    double* data = nullptr;
    check(sgep_read_csv(args.data_path.c_str(), args.data_header ? 1 : 0,
                        args.data_center ? 1 : 0, &m, &n, &data),
          "reading CSV data");
    inst.data.assign(data, data + m * n);
    sgep_free(data);
    sgep_problem* raw = nullptr;
    check(sgep_problem_from_data(m, n, inst.data.data(), &raw), "building covariance problem");
    inst.problem.reset(raw);
    inst.n = n;
    inst.m = m;
  } else {
    std::cerr << "error: provide --data or --gen\n";
    return 1;
  }
  if (inst.data.empty()) {
    std::cerr << "error: evar requires a data-matrix model (sparse-pca or csv)\n";
    return 1;
  }

  // The explained-variance ratio needs Rayleigh values resolved well past
  // the default stopping rule, so evar solves run at a tight tolerance.
  sgep_options opts = args.flags.options();
  opts.tol_outer = std::min(opts.tol_outer, 1e-12);
  opts.max_outer = std::max(opts.max_outer, 10000L);

  // PCA baseline: plain leading eigenvector (rho = 0 path).
  sgep_penalty pca_pen = args.flags.penalty();
  pca_pen.rho = 0.0;
  auto pca_report = run_solve(inst.problem.get(), SGEP_SOLVER_IRQM, pca_pen, opts,
                              args.flags.x0_seed);
  const auto x_pca = report_x(pca_report.get());
  const double pca_var = quad_form(inst.data, inst.m, inst.n, x_pca);

  const int solver = solver_id(args.flags.solver);
  const InstanceInfo info =
      solver_is_mm(args.flags.solver) ? instance_info(inst.problem.get(), 6) : InstanceInfo{};
  std::ostringstream csv;
  csv << "target,method,status,cardinality,rho,explained_variance\n";
  csv.precision(12);

  for (double target_raw : parse_list(args.targets)) {
    const long target = static_cast<long>(target_raw);
    if (target < 1 || target > inst.n) {
      csv << target << "," << args.flags.solver << ",unreachable,0,0,0\n";
      continue;
    }

    // Bisection on log(rho) against the reported cardinality (heuristically
    // non-increasing in rho). Unreachable targets are recorded, not fatal.
    double lo = 1e-10, hi = 1.0;
    const auto card_at = [&](double rho) {
      sgep_penalty pen = args.flags.penalty();
      pen.rho = rho;
      ReportPtr rep;
      if (!info.start_indices.empty())
        rep = run_solve_multistart(inst.problem.get(), solver, pen, opts, info.start_indices);
      if (!rep) rep = run_solve(inst.problem.get(), solver, pen, opts, args.flags.x0_seed);
      return std::pair<long, ReportPtr>(sgep_report_cardinality(rep.get()), std::move(rep));
    };
    // Grow hi until cardinality <= target, shrink lo until >= target.
    long card_hi = card_at(hi).first;
    for (int i = 0; i < 60 && card_hi > target; ++i) {
      hi *= 4.0;
      card_hi = card_at(hi).first;
    }
    long card_lo = card_at(lo).first;
    for (int i = 0; i < 20 && card_lo < target; ++i) {
      lo /= 16.0;
      card_lo = card_at(lo).first;
    }

    bool found = false;
    double rho_hit = 0;
    ReportPtr hit;
    for (int it = 0; it < 60 && !found; ++it) {
      const double mid = std::sqrt(lo * hi);
      auto [card, rep] = card_at(mid);
      if (card == target) {
        found = true;
        rho_hit = mid;
        hit = std::move(rep);
      } else if (card > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }

    if (found) {
      const auto x = report_x(hit.get());
      const double var = quad_form(inst.data, inst.m, inst.n, x);
      csv << target << "," << args.flags.solver << ",ok," << target << "," << rho_hit << ","
          << var / pca_var << "\n";
    } else {
      csv << target << "," << args.flags.solver << ",unreachable,0,0,0\n";
    }

    // Simple thresholding baseline: keep the `target` largest |entries| of
    // the PCA vector, renormalize.
    std::vector<double> xt = x_pca;
    std::vector<std::size_t> order(xt.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return std::abs(xt[i]) > std::abs(xt[j]);
    });
    std::vector<double> kept(xt.size(), 0.0);
    double norm2 = 0;
    for (long i = 0; i < target; ++i) {
      kept[order[i]] = xt[order[i]];
      norm2 += xt[order[i]] * xt[order[i]];
    }
    const double norm = std::sqrt(norm2);
    for (auto& value : kept) value /= norm;
    const double var = quad_form(inst.data, inst.m, inst.n, kept);
    csv << target << ",threshold,ok," << target << ",0," << var / pca_var << "\n";
  }

  if (args.out.empty())
    std::cout << csv.str();
  else
    write_file(args.out, csv.str());
  return 0;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
  std::string sizes = "50,100";
  int trials = 3;
  std::uint64_t seed = 1;
  SolverFlags flags;
  std::string out;
};

int cmd_bench(const BenchArgs& args) {
  const auto sizes = parse_list(args.sizes);
  if (sizes.size() < 2) {
    std::cerr << "error: bench needs at least two sizes\n";
    return 1;
  }
  const int solver = solver_id(args.flags.solver);

  std::ostringstream csv;
  csv << "# solver=" << args.flags.solver << " family=" << args.flags.family
      << " p=" << args.flags.p << " rho=" << args.flags.rho << " epsilon=" << args.flags.epsilon
      << " trials=" << args.trials << " seed=" << args.seed << "\n";
  csv << "n,trials,mean_ms,stddev_ms\n";
  csv.precision(12);

  for (double size_raw : sizes) {
    const long n = static_cast<long>(size_raw);
    std::vector<double> times;
    for (int trial = 0; trial < args.trials; ++trial) {
      const std::uint64_t instance_seed = sgep_stream_seed(args.seed, 2 * trial);
      const std::uint64_t x0_seed = sgep_stream_seed(args.seed, 2 * trial + 1);
      Instance inst = generate_instance("random", n, 0, instance_seed);
      auto report = run_solve(inst.problem.get(), solver, args.flags.penalty(),
                              args.flags.options(), x0_seed);
      times.push_back(sgep_report_wall_ms(report.get()));
    }
    double mean = 0;
    for (double t : times) mean += t;
    mean /= times.size();
    double var = 0;
    for (double t : times) var += (t - mean) * (t - mean);
    const double stddev = times.size() > 1 ? std::sqrt(var / (times.size() - 1)) : 0.0;
    csv << n << "," << args.trials << "," << mean << "," << stddev << "\n";
  }

  if (args.out.empty())
    std::cout << csv.str();
  else
    write_file(args.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sgep: sparse generalized eigenvector solvers"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a synthetic instance and write it to files");
  gen->add_option("--model", gen_args.model, "random | planted | sparse-pca");
  gen->add_option("--n", gen_args.n, "dimension");
  gen->add_option("--m", gen_args.m, "samples (sparse-pca)");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--out-a", gen_args.out_a, "Matrix Market output for A");
  gen->add_option("--out-b", gen_args.out_b, "Matrix Market output for B");
  gen->add_option("--out-data", gen_args.out_data, "Matrix Market output for the data matrix");
  gen->add_option("--truth", gen_args.truth, "JSON sidecar with ground truth");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "run one solver and emit a JSON report");
  solve->add_option("--a", solve_args.a_path, "Matrix Market file for A");
  solve->add_option("--b", solve_args.b_path, "Matrix Market file for B");
  solve->add_option("--data", solve_args.data_path, "CSV data matrix (A = C'C, B = I)");
  solve->add_flag("--header", solve_args.data_header, "CSV has a header row");
  solve->add_flag("--center", solve_args.data_center, "center CSV columns");
  solve->add_option("--gen", solve_args.gen_model, "generate: random | planted | sparse-pca");
  solve->add_option("--n", solve_args.n, "dimension for --gen");
  solve->add_option("--m", solve_args.m, "samples for --gen sparse-pca");
  solve->add_option("--seed", solve_args.seed, "generator seed for --gen");
  solve_args.flags.attach(solve);
  solve->add_option("--out", solve_args.out, "write the JSON report here instead of stdout");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "rho-grid recovery sweep over seeded trials");
  sweep->add_option("--model", sweep_args.model, "planted | sparse-pca | random");
  sweep->add_option("--n", sweep_args.n, "dimension");
  sweep->add_option("--m", sweep_args.m, "samples (sparse-pca)");
  sweep->add_option("--trials", sweep_args.trials, "trials per rho");
  sweep->add_option("--seed", sweep_args.seed, "base seed");
  sweep->add_option("--rho-grid", sweep_args.rho_grid, "explicit comma-separated rho list");
  sweep->add_option("--rho-min", sweep_args.rho_min, "log grid lower bound");
  sweep->add_option("--rho-max", sweep_args.rho_max, "log grid upper bound");
  sweep->add_option("--rho-points", sweep_args.rho_points, "log grid size");
  sweep->add_flag("--normalized-rho", sweep_args.normalized_rho,
                  "interpret the grid in normalized units (sparse-pca)");
  sweep->add_option("--jobs", sweep_args.jobs, "concurrent trials (default $SGEP_JOBS or cores)");
  sweep_args.flags.attach(sweep);
  sweep->add_option("--out", sweep_args.out, "output prefix (default 'sweep')");

  EvarArgs evar_args;
  auto* evar = app.add_subcommand("evar", "explained-variance versus cardinality curve");
  evar->add_option("--data", evar_args.data_path, "CSV data matrix");
  evar->add_flag("--header", evar_args.data_header, "CSV has a header row");
  evar->add_flag("--center", evar_args.data_center, "center CSV columns");
  evar->add_flag("--gen", evar_args.use_gen, "use the generated sparse-pca model");
  evar->add_option("--n", evar_args.n, "dimension for --gen");
  evar->add_option("--m", evar_args.m, "samples for --gen");
  evar->add_option("--seed", evar_args.seed, "generator seed for --gen");
  evar->add_option("--targets", evar_args.targets, "comma-separated cardinality targets");
  evar_args.flags.solver = "mm-l0";
  evar_args.flags.attach(evar);
  evar->add_option("--out", evar_args.out, "CSV output path (default stdout)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "wall-time curve over problem sizes");
  bench->add_option("--sizes", bench_args.sizes, "comma-separated dimensions");
  bench->add_option("--trials", bench_args.trials, "trials per size");
  bench->add_option("--seed", bench_args.seed, "base seed");
  bench_args.flags.attach(bench);
  bench->add_option("--out", bench_args.out, "CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) return cmd_gen(gen_args);
  if (solve->parsed()) return cmd_solve(solve_args);
  if (sweep->parsed()) return cmd_sweep(sweep_args);
  if (evar->parsed()) return cmd_evar(evar_args);
  if (bench->parsed()) return cmd_bench(bench_args);
  return 1;
}
