#include "corrcs/phase.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace corrcs {

std::string method_name(Method m) {
  switch (m) {
    case Method::lasso: return "lasso";
    case Method::max_corr: return "mc";
    case Method::l1_l1: return "l1l1";
    case Method::l1_l2: return "l1l2";
  }
  return "?";
}

Method parse_method(const std::string& token) {
  if (token == "lasso") return Method::lasso;
  if (token == "mc") return Method::max_corr;
  if (token == "l1l1") return Method::l1_l1;
  if (token == "l1l2") return Method::l1_l2;
  throw std::invalid_argument("unknown method '" + token +
                              "' (expected lasso|mc|l1l1|l1l2)");
}

void PhaseProtocol::validate() const {
  if (n < 1) throw std::invalid_argument("PhaseProtocol: n must be >= 1");
  if (grid_step < 1) throw std::invalid_argument("PhaseProtocol: grid step must be >= 1");
  if (trials_per_cell < 1)
    throw std::invalid_argument("PhaseProtocol: trials per cell must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("PhaseProtocol: tol must be positive");
  if (delta < 0.0) throw std::invalid_argument("PhaseProtocol: delta must be >= 0");
}

std::vector<int> PhaseProtocol::axis() const {
  std::vector<int> values;
  for (int v = 0; v <= n; v += grid_step) values.push_back(v);
  return values;
}

namespace {

// For l1_l1 / l1_l2 the case shift is used as the prior signal phi with
// unit tradeoff weight; the experiments vary the prior only through the
// case construction.
constexpr double kExperimentLambda = 1.0;

Regularizer make_regularizer(Method method, PriorShift p) {
  switch (method) {
    case Method::lasso: return Regularizer::lasso();
    case Method::max_corr: return Regularizer::max_corr(std::move(p));
    case Method::l1_l1: return Regularizer::l1_l1(std::move(p.shift), kExperimentLambda);
    case Method::l1_l2: return Regularizer::l1_l2(std::move(p.shift), kExperimentLambda);
  }
  throw std::invalid_argument("make_regularizer: bad method");
}

}  // namespace

TrialResult run_trial_detailed(const PhaseProtocol& protocol, int s, int m,
                               int trial_index) {
  protocol.validate();
  if (s < 0 || s > protocol.n || m < 0 || m > protocol.n)
    throw std::invalid_argument("run_trial: cell outside the grid");

  Substream rng = derive_substream(TrialSeed{protocol.base_seed, s, m, trial_index,
                                             case_tag(protocol.case_tag)});

  // fixed draw order: signal, matrix, prior
  const SparseSignal signal = generate_sparse_signal(protocol.n, s, rng);
  const Mat a = generate_bernoulli_matrix(m, protocol.n, rng);
  const PriorShift prior = make_prior_case(protocol.case_tag, signal, rng);

  SensingProblem problem{a, a * signal.values(), protocol.delta};
  const Regularizer reg = make_regularizer(protocol.method, prior);

  SolveReport report = solve(problem, reg, protocol.solver);

  TrialResult result;
  result.status = report.status;
  if (report.status == SolveStatus::diverged) {
    result.success = false;
    return result;
  }

  if (s == 0) {
    result.success = report.solution.norm() < protocol.tol;  // absolute at x* = 0
  } else {
    report.relative_error =
        (report.solution - signal.values()).norm() / signal.values().norm();
    result.success = *report.relative_error < protocol.tol;
  }
  return result;
}

bool run_trial(const PhaseProtocol& protocol, int s, int m, int trial_index) {
  return run_trial_detailed(protocol, s, m, trial_index).success;
}

PhaseGrid run_phase_grid(const PhaseProtocol& protocol, int threads) {
  protocol.validate();
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw > 0 ? static_cast<int>(hw) : 1;
  }

  PhaseGrid grid;
  grid.protocol = protocol;
  grid.table.axis = protocol.axis();
  grid.table.trials_per_cell = protocol.trials_per_cell;
  const std::size_t k = grid.table.axis.size();
  grid.table.counts.assign(k * k, 0);

  std::atomic<std::size_t> next_cell{0};
  std::vector<std::int64_t> diverged(static_cast<std::size_t>(threads), 0);
  std::vector<std::int64_t> max_iter(static_cast<std::size_t>(threads), 0);

  const auto worker = [&](int tid) {
    for (;;) {
      const std::size_t cell = next_cell.fetch_add(1);
      if (cell >= k * k) return;
      const int s = grid.table.axis[cell / k];
      const int m = grid.table.axis[cell % k];
      int successes = 0;
      for (int t = 0; t < protocol.trials_per_cell; ++t) {
        const TrialResult r = run_trial_detailed(protocol, s, m, t);
        if (r.success) ++successes;
        if (r.status == SolveStatus::diverged) ++diverged[static_cast<std::size_t>(tid)];
        if (r.status == SolveStatus::max_iters) ++max_iter[static_cast<std::size_t>(tid)];
      }
      grid.table.counts[cell] = successes;
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  for (int t = 0; t < threads; ++t) {
    grid.diverged_trials += diverged[static_cast<std::size_t>(t)];
    grid.max_iter_trials += max_iter[static_cast<std::size_t>(t)];
  }
  return grid;
}

std::vector<ContourPoint> extract_contour(const GridTable& grid, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("extract_contour: level must be in (0, 1)");
  const std::size_t k = grid.axis.size();
  const double needed = level * grid.trials_per_cell;

  std::vector<ContourPoint> contour;
  for (std::size_t si = 0; si < k; ++si) {
    for (std::size_t mi = 0; mi < k; ++mi) {
      if (grid.count(si, mi) < needed) continue;
      const bool is_last = (mi + 1 == k);
      if (!is_last && grid.count(si, mi + 1) < needed) continue;  // debounce
      contour.push_back({grid.axis[si], grid.axis[mi]});
      break;
    }
  }
  return contour;
}

MethodComparison compare_methods(const std::vector<PhaseProtocol>& protocols,
                                 double level, int threads) {
  if (protocols.empty())
    throw std::invalid_argument("compare_methods: need at least one protocol");
  const PhaseProtocol& ref = protocols.front();
  for (const PhaseProtocol& p : protocols) {
    if (p.n != ref.n || p.grid_step != ref.grid_step ||
        p.trials_per_cell != ref.trials_per_cell || p.tol != ref.tol ||
        p.base_seed != ref.base_seed || p.case_tag != ref.case_tag)
      throw std::invalid_argument(
          "compare_methods: protocols must share n, step, trials, tol, seed and case");
  }

  MethodComparison cmp;
  cmp.s_axis = ref.axis();
  for (const PhaseProtocol& p : protocols) {
    const PhaseGrid grid = run_phase_grid(p, threads);
    const auto contour = extract_contour(grid.table, level);
    std::vector<std::optional<int>> column(cmp.s_axis.size());
    for (const ContourPoint& pt : contour) {
      const auto it = std::find(cmp.s_axis.begin(), cmp.s_axis.end(), pt.s);
      column[static_cast<std::size_t>(it - cmp.s_axis.begin())] = pt.m_star;
    }
    cmp.methods.push_back(p.method);
    cmp.m_star.push_back(std::move(column));
  }
  return cmp;
}

std::string phase_grid_csv(const PhaseGrid& grid) {
  std::string out = "s,m,successes,trials\n";
  const std::size_t k = grid.table.axis.size();
  for (std::size_t si = 0; si < k; ++si)
    for (std::size_t mi = 0; mi < k; ++mi) {
      out += std::to_string(grid.table.axis[si]);
      out += ',';
      out += std::to_string(grid.table.axis[mi]);
      out += ',';
      out += std::to_string(grid.table.count(si, mi));
      out += ',';
      out += std::to_string(grid.table.trials_per_cell);
      out += '\n';
    }
  return out;
}

GridTable parse_grid_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("s,m,successes,trials", 0) != 0)
    throw std::runtime_error("grid csv: missing 's,m,successes,trials' header");

  struct Row {
    int s, m, successes, trials;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Row r{};
    if (std::sscanf(line.c_str(), "%d,%d,%d,%d", &r.s, &r.m, &r.successes, &r.trials) != 4)
      throw std::runtime_error("grid csv: bad row '" + line + "'");
    rows.push_back(r);
  }
  if (rows.empty()) throw std::runtime_error("grid csv: no data rows");

  GridTable table;
  table.trials_per_cell = rows.front().trials;
  for (const Row& r : rows) {
    if (r.trials != table.trials_per_cell)
      throw std::runtime_error("grid csv: inconsistent trial counts");
    if (std::find(table.axis.begin(), table.axis.end(), r.s) == table.axis.end())
      table.axis.push_back(r.s);
  }
  const std::size_t k = table.axis.size();
  if (rows.size() != k * k)
    throw std::runtime_error("grid csv: expected a full square grid");
  table.counts.assign(k * k, 0);
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const Row& r = rows[idx];
    const std::size_t si = idx / k, mi = idx % k;
    if (table.axis[si] != r.s || table.axis[mi] != r.m)
      throw std::runtime_error("grid csv: rows must be sorted by (s, m)");
    table.counts[idx] = r.successes;
  }
  return table;
}

std::string contour_csv(const std::vector<ContourPoint>& contour) {
  std::string out = "s,m_star\n";
  for (const ContourPoint& pt : contour) {
    out += std::to_string(pt.s);
    out += ',';
    out += std::to_string(pt.m_star);
    out += '\n';
  }
  return out;
}

std::string comparison_csv(const MethodComparison& cmp) {
  std::string out = "s";
  for (Method m : cmp.methods) {
    out += ',';
    out += method_name(m);
  }
  out += '\n';
  for (std::size_t si = 0; si < cmp.s_axis.size(); ++si) {
    out += std::to_string(cmp.s_axis[si]);
    for (std::size_t k = 0; k < cmp.methods.size(); ++k) {
      out += ',';
      if (cmp.m_star[k][si]) out += std::to_string(*cmp.m_star[k][si]);
    }
    out += '\n';
  }
  return out;
}

KeyValues phase_metadata(const PhaseGrid& grid) {
  const PhaseProtocol& p = grid.protocol;
  KeyValues kv;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  kv.emplace_back("timestamp_unix_ms",
                  std::to_string(
                      std::chrono::duration_cast<std::chrono::milliseconds>(now).count()));
#ifdef CORRCS_VERSION
  kv.emplace_back("version", CORRCS_VERSION);
#endif
  kv.emplace_back("n", std::to_string(p.n));
  kv.emplace_back("grid_step", std::to_string(p.grid_step));
  kv.emplace_back("trials_per_cell", std::to_string(p.trials_per_cell));
  kv.emplace_back("tol", format_real(p.tol));
  kv.emplace_back("delta", format_real(p.delta));
  kv.emplace_back("case", std::string(1, case_tag(p.case_tag)));
  kv.emplace_back("method", method_name(p.method));
  kv.emplace_back("base_seed", std::to_string(p.base_seed));
  kv.emplace_back("amplitude_law", "gaussian");
  kv.emplace_back("matrix_ensemble", "bernoulli_pm1");
  kv.emplace_back("prior_lambda", format_real(kExperimentLambda));
  kv.emplace_back("solver_rho", format_real(p.solver.rho));
  kv.emplace_back("solver_max_iters", std::to_string(p.solver.max_iters));
  kv.emplace_back("solver_tol_abs", format_real(p.solver.tol_abs));
  kv.emplace_back("solver_tol_rel", format_real(p.solver.tol_rel));
  kv.emplace_back("solver_adaptive_rho", p.solver.adaptive_rho ? "1" : "0");
  kv.emplace_back("diverged_trials", std::to_string(grid.diverged_trials));
  kv.emplace_back("max_iter_trials", std::to_string(grid.max_iter_trials));
  return kv;
}

}  // namespace corrcs
