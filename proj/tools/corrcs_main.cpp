// corrcs: sparse recovery with prior information, cone geometry, and
// phase-transition experiments from one binary. See README.md for examples.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "corrcs/csv.hpp"
#include "corrcs/geometry.hpp"
#include "corrcs/phase.hpp"
#include "corrcs/solver.hpp"

namespace {

using namespace corrcs;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMaxIters = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitHypothesis = 4;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CORRCS_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

void emit(const std::string& key, const std::string& value) {
  std::cout << key << '=' << value << '\n';
}

struct SolveOptions {
  std::string matrix_path, obs_path, method = "lasso";
  std::string shift_path, prior_path, out_path = "solution.csv";
  double lam = 1.0, delta = 0.0;
  SolverConfig cfg;
};

int cmd_solve(const SolveOptions& opt) {
  const Method method = parse_method(opt.method);
  if (method == Method::max_corr && opt.shift_path.empty())
    throw CLI::ValidationError("--method mc requires --shift");
  if ((method == Method::l1_l1 || method == Method::l1_l2) && opt.prior_path.empty())
    throw CLI::ValidationError("--method l1l1/l1l2 requires --prior");

  SensingProblem problem{read_matrix_csv(opt.matrix_path),
                         read_vector_csv(opt.obs_path), opt.delta};

  Regularizer reg;
  switch (method) {
    case Method::lasso:
      reg = Regularizer::lasso();
      break;
    case Method::max_corr:
      reg = Regularizer::max_corr(PriorShift{read_vector_csv(opt.shift_path)});
      break;
    case Method::l1_l1:
      reg = Regularizer::l1_l1(read_vector_csv(opt.prior_path), opt.lam);
      break;
    case Method::l1_l2:
      reg = Regularizer::l1_l2(read_vector_csv(opt.prior_path), opt.lam);
      break;
  }

  const SolveReport report = solve(problem, reg, opt.cfg);
  write_vector_csv(opt.out_path, report.solution);

  KeyValues meta;
  meta.emplace_back("command", "solve");
  meta.emplace_back("matrix", opt.matrix_path);
  meta.emplace_back("obs", opt.obs_path);
  meta.emplace_back("method", opt.method);
  if (!opt.shift_path.empty()) meta.emplace_back("shift", opt.shift_path);
  if (!opt.prior_path.empty()) meta.emplace_back("prior", opt.prior_path);
  meta.emplace_back("lam", format_real(opt.lam));
  meta.emplace_back("delta", format_real(opt.delta));
  meta.emplace_back("rho", format_real(opt.cfg.rho));
  meta.emplace_back("max_iters", std::to_string(opt.cfg.max_iters));
  meta.emplace_back("tol_abs", format_real(opt.cfg.tol_abs));
  meta.emplace_back("tol_rel", format_real(opt.cfg.tol_rel));
  meta.emplace_back("status", status_name(report.status));
  meta.emplace_back("iterations", std::to_string(report.iterations));
  write_sidecar(opt.out_path + ".meta", meta);

  emit("status", status_name(report.status));
  emit("iterations", std::to_string(report.iterations));
  emit("primal_residual", format_real(report.primal_residual));
  emit("dual_residual", format_real(report.dual_residual));
  emit("objective", format_real(report.objective_value));
  emit("feasibility", format_real(check_feasibility(problem, report.solution)));
  emit("solution_file", opt.out_path);

  switch (report.status) {
    case SolveStatus::converged: return kExitOk;
    case SolveStatus::max_iters: return kExitMaxIters;
    case SolveStatus::diverged: return kExitDiverged;
  }
  return kExitOk;
}

ConeDescriptor load_cone(const std::string& signal_path, const std::string& shift_path) {
  ConeDescriptor cone{SparseSignal(read_vector_csv(signal_path)),
                      PriorShift{read_vector_csv(shift_path)}};
  cone.validate();
  return cone;
}

int cmd_geom_v(const std::string& signal_path, const std::string& shift_path) {
  emit("v", format_real(compute_v(load_cone(signal_path, shift_path))));
  return kExitOk;
}

int cmd_geom_width(int n, int s, double v) {
  emit("width_sq", format_real(width_bound_sq(n, s, v)));
  return kExitOk;
}

int cmd_geom_mc(const std::string& signal_path, const std::string& shift_path,
                std::int64_t samples, std::uint64_t seed) {
  const ConeDescriptor cone = load_cone(signal_path, shift_path);
  Substream rng(seed);
  const WidthEstimate est = mc_width_estimate(cone, samples, rng);
  emit("mean_sq_dist", format_real(est.mean_sq_dist));
  emit("std_error", format_real(est.std_error));
  emit("samples", std::to_string(est.samples));
  emit("closed_form_bound", format_real(est.closed_form_bound));
  return kExitOk;
}

int cmd_geom_predict(int n, int s, double v, double K, double C, double eps) {
  const double wsq = width_bound_sq(n, s, v);
  emit("width_sq", format_real(wsq));
  emit("m_bound", format_real(sample_size_bound(wsq, K, C, eps)));
  return kExitOk;
}

struct PhaseOptions {
  PhaseProtocol protocol;
  std::string case_token = "a", method_token = "mc", out_path;
  int threads = 1;
};

PhaseProtocol build_protocol(const PhaseOptions& opt) {
  PhaseProtocol p = opt.protocol;
  p.case_tag = parse_prior_case(opt.case_token);
  p.method = parse_method(opt.method_token);
  p.validate();
  return p;
}

int cmd_phase(const PhaseOptions& opt) {
  const PhaseProtocol protocol = build_protocol(opt);
  const PhaseGrid grid = run_phase_grid(protocol, opt.threads);
  write_text_file(opt.out_path, phase_grid_csv(grid));
  KeyValues meta = phase_metadata(grid);
  meta.emplace_back("command", "phase");
  meta.emplace_back("out", opt.out_path);
  write_sidecar(opt.out_path + ".meta", meta);
  emit("grid_file", opt.out_path);
  emit("diverged_trials", std::to_string(grid.diverged_trials));
  return kExitOk;
}

int cmd_contour(const std::string& grid_path, double level, const std::string& out_path) {
  const GridTable table = parse_grid_table_csv(read_text_file(grid_path));
  const auto contour = extract_contour(table, level);
  write_text_file(out_path, contour_csv(contour));
  KeyValues meta;
  meta.emplace_back("command", "contour");
  meta.emplace_back("grid", grid_path);
  meta.emplace_back("level", format_real(level));
  meta.emplace_back("points", std::to_string(contour.size()));
  write_sidecar(out_path + ".meta", meta);
  emit("contour_file", out_path);
  return kExitOk;
}

struct CompareOptions {
  PhaseOptions phase;
  std::string methods_csv = "mc,l1l1,l1l2";
  double level = 0.5;
};

int cmd_compare(const CompareOptions& opt) {
  std::vector<PhaseProtocol> protocols;
  std::stringstream tokens(opt.methods_csv);
  std::string token;
  while (std::getline(tokens, token, ',')) {
    PhaseOptions per = opt.phase;
    per.method_token = token;
    protocols.push_back(build_protocol(per));
  }
  if (protocols.empty()) throw CLI::ValidationError("--methods: empty list");

  const MethodComparison cmp = compare_methods(protocols, opt.level, opt.phase.threads);
  write_text_file(opt.phase.out_path, comparison_csv(cmp));

  KeyValues meta;
  meta.emplace_back("command", "compare");
  meta.emplace_back("n", std::to_string(protocols.front().n));
  meta.emplace_back("grid_step", std::to_string(protocols.front().grid_step));
  meta.emplace_back("trials_per_cell", std::to_string(protocols.front().trials_per_cell));
  meta.emplace_back("tol", format_real(protocols.front().tol));
  meta.emplace_back("case", opt.phase.case_token);
  meta.emplace_back("methods", opt.methods_csv);
  meta.emplace_back("level", format_real(opt.level));
  meta.emplace_back("base_seed", std::to_string(protocols.front().base_seed));
  meta.emplace_back("out", opt.phase.out_path);
  write_sidecar(opt.phase.out_path + ".meta", meta);
  emit("table_file", opt.phase.out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse recovery with prior information: solvers, cone geometry, phase transitions"};
  app.require_subcommand(1);

  // solve
  SolveOptions solve_opt;
  auto* solve_cmd = app.add_subcommand("solve", "solve one recovery problem from CSV inputs");
  solve_cmd->add_option("--matrix", solve_opt.matrix_path, "measurement matrix CSV")->required();
  solve_cmd->add_option("--obs", solve_opt.obs_path, "observation vector CSV")->required();
  solve_cmd->add_option("--method", solve_opt.method, "lasso|mc|l1l1|l1l2")->required();
  solve_cmd->add_option("--shift", solve_opt.shift_path, "combined shift p (mc)");
  solve_cmd->add_option("--prior", solve_opt.prior_path, "prior signal phi (l1l1/l1l2)");
  solve_cmd->add_option("--lam", solve_opt.lam, "tradeoff weight for l1l1/l1l2");
  solve_cmd->add_option("--delta", solve_opt.delta, "noise bound");
  solve_cmd->add_option("--rho", solve_opt.cfg.rho, "penalty parameter");
  solve_cmd->add_option("--max-iters", solve_opt.cfg.max_iters, "iteration cap");
  solve_cmd->add_option("--tol-abs", solve_opt.cfg.tol_abs, "absolute tolerance");
  solve_cmd->add_option("--tol-rel", solve_opt.cfg.tol_rel, "relative tolerance");
  solve_cmd->add_option("--out", solve_opt.out_path, "solution CSV path");

  // geom with subforms
  auto* geom_cmd = app.add_subcommand("geom", "cone geometry quantities");
  geom_cmd->require_subcommand(1);
  std::string g_signal, g_shift;
  int g_n = 0, g_s = 0;
  double g_v = 0.0, g_K = kBernoulliSubgaussianNorm, g_C = 1.0, g_eps = 0.0;
  std::int64_t g_samples = 100000;
  std::uint64_t g_seed = default_seed();

  auto* geom_v = geom_cmd->add_subcommand("v", "max squared norm over the shifted subdifferential");
  geom_v->add_option("--signal", g_signal, "signal CSV")->required();
  geom_v->add_option("--shift", g_shift, "shift CSV")->required();

  auto* geom_width = geom_cmd->add_subcommand("width", "closed-form squared-width bound");
  geom_width->add_option("--n", g_n, "dimension")->required();
  geom_width->add_option("--s", g_s, "sparsity")->required();
  geom_width->add_option("--v", g_v, "v parameter")->required();

  auto* geom_mc = geom_cmd->add_subcommand("mc", "Monte-Carlo distance-to-cone estimate");
  geom_mc->add_option("--signal", g_signal, "signal CSV")->required();
  geom_mc->add_option("--shift", g_shift, "shift CSV")->required();
  geom_mc->add_option("--samples", g_samples, "Gaussian samples");
  geom_mc->add_option("--seed", g_seed, "substream seed");

  auto* geom_predict = geom_cmd->add_subcommand("predict", "measurement-count prediction");
  geom_predict->add_option("--n", g_n, "dimension")->required();
  geom_predict->add_option("--s", g_s, "sparsity")->required();
  geom_predict->add_option("--v", g_v, "v parameter")->required();
  geom_predict->add_option("--K", g_K, "sub-Gaussian norm of the rows");
  geom_predict->add_option("--C", g_C, "absolute constant");
  geom_predict->add_option("--eps", g_eps, "margin");

  // phase
  PhaseOptions phase_opt;
  phase_opt.protocol.base_seed = default_seed();
  auto* phase_cmd = app.add_subcommand("phase", "run one phase-transition grid");
  phase_cmd->add_option("--n", phase_opt.protocol.n, "signal dimension");
  phase_cmd->add_option("--step", phase_opt.protocol.grid_step, "grid step");
  phase_cmd->add_option("--trials", phase_opt.protocol.trials_per_cell, "trials per cell");
  phase_cmd->add_option("--tol", phase_opt.protocol.tol, "success threshold");
  phase_cmd->add_option("--delta", phase_opt.protocol.delta, "noise bound");
  phase_cmd->add_option("--case", phase_opt.case_token, "prior case a..f");
  phase_cmd->add_option("--method", phase_opt.method_token, "lasso|mc|l1l1|l1l2");
  phase_cmd->add_option("--seed", phase_opt.protocol.base_seed, "base seed");
  phase_cmd->add_option("--threads", phase_opt.threads, "worker threads (0 = all cores)");
  phase_cmd->add_option("--out", phase_opt.out_path, "grid CSV path")->required();

  // contour
  std::string c_grid, c_out;
  double c_level = 0.5;
  auto* contour_cmd = app.add_subcommand("contour", "extract a success contour from a grid");
  contour_cmd->add_option("--grid", c_grid, "grid CSV path")->required();
  contour_cmd->add_option("--level", c_level, "success fraction in (0,1)");
  contour_cmd->add_option("--out", c_out, "contour CSV path")->required();

  // compare
  CompareOptions compare_opt;
  compare_opt.phase.protocol.base_seed = default_seed();
  auto* compare_cmd = app.add_subcommand("compare", "contours for several methods, shared seeds");
  compare_cmd->add_option("--n", compare_opt.phase.protocol.n, "signal dimension");
  compare_cmd->add_option("--step", compare_opt.phase.protocol.grid_step, "grid step");
  compare_cmd->add_option("--trials", compare_opt.phase.protocol.trials_per_cell, "trials per cell");
  compare_cmd->add_option("--tol", compare_opt.phase.protocol.tol, "success threshold");
  compare_cmd->add_option("--delta", compare_opt.phase.protocol.delta, "noise bound");
  compare_cmd->add_option("--case", compare_opt.phase.case_token, "prior case a..f");
  compare_cmd->add_option("--methods", compare_opt.methods_csv, "comma list of methods");
  compare_cmd->add_option("--level", compare_opt.level, "contour level");
  compare_cmd->add_option("--seed", compare_opt.phase.protocol.base_seed, "base seed");
  compare_cmd->add_option("--threads", compare_opt.phase.threads, "worker threads (0 = all cores)");
  compare_cmd->add_option("--out", compare_opt.phase.out_path, "comparison CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_opt);
    if (geom_cmd->parsed()) {
      if (geom_v->parsed()) return cmd_geom_v(g_signal, g_shift);
      if (geom_width->parsed()) return cmd_geom_width(g_n, g_s, g_v);
      if (geom_mc->parsed()) return cmd_geom_mc(g_signal, g_shift, g_samples, g_seed);
      if (geom_predict->parsed()) return cmd_geom_predict(g_n, g_s, g_v, g_K, g_C, g_eps);
    }
    if (phase_cmd->parsed()) return cmd_phase(phase_opt);
    if (contour_cmd->parsed()) return cmd_contour(c_grid, c_level, c_out);
    if (compare_cmd->parsed()) return cmd_compare(compare_opt);
  } catch (const corrcs::hypothesis_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
