#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "graphrd/bounds.hpp"
#include "graphrd/config.hpp"
#include "graphrd/particles.hpp"

namespace graphrd {

/// Runs body(0 .. count-1) on a bounded pool of worker threads (0 means
/// hardware concurrency). Callers write results into slot i, so the outcome
/// never depends on scheduling. The first exception is rethrown after all
/// workers stop.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion (95% by default).
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z = 1.959963984540054);

/// Ratio of the RK4 errors at steps dt and dt/2 against the matrix
/// exponential for pure diffusion on g (about 16 for a fourth-order method).
double rk4_order_ratio(const StepGraphon& g, const GridFunction& u0, double T, double dt);

// ---------------------------------------------------------------- convergence

struct ConvergenceRow {
  std::size_t n = 0;
  Exponent p{2.0};
  BoundReport report;
  /// ||W_n - W||_p against the reference kernel.
  double kernel_lp = 0.0;
  bool monotone_ok = true;
  /// Non-empty when the row could not be computed.
  std::string error;
  double runtime_s = 0.0;
  std::uint64_t seed = 0;
  std::string config_hash;

  bool passed() const { return error.empty() && report.passed && monotone_ok; }
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  std::string config_hash;
  std::size_t reference_n = 0;
  bool monotone_asserted = true;
  /// RK4 order ratio, measured in paranoid mode.
  double order_ratio = 0.0;
  bool order_ok = true;

  bool passed() const;
  /// One row per (n, p); deterministic for a fixed config.
  std::string csv() const;
  /// Config echo, per-row runtimes and time series.
  std::string metadata_json(const ExperimentConfig& cfg) const;
};

/// For every n and p: W_n from the configured construction, the coarse and
/// reference RD solutions, and the matching bound (cut-norm form for finite
/// p, sup-norm form for p = inf). A failing row never aborts its siblings.
/// With quotient construction the lhs must also be nonincreasing in n up to
/// a factor 1.1 (per p).
ConvergenceStudy run_convergence_study(const ExperimentConfig& cfg);

// ------------------------------------------------------------------------ lln

/// Fine-partition reference solution stored at every step h.
struct ReferencePath {
  std::size_t n = 0;
  double h = 0.0;
  std::vector<GridFunction> states;

  /// State at the nearest grid time at or before t.
  const GridFunction& at(double t) const;
};

ReferencePath make_reference_path(const StepGraphon& fine, const ReactionTerm& phi,
                                  const GridFunction& u0_fine, double T, double dt);

/// sup over t of ||X(t) - u(t)||_2 (X refined to the reference partition),
/// taken over `grid_points` uniform times plus the left and right limits at
/// every event time.
double sup_l2_error(const ParticleTrajectory& traj, const ReferencePath& ref,
                    std::size_t grid_points);

struct LlnRow {
  std::size_t n = 0;
  double ell = 0.0;
  std::size_t replicas = 0;
  std::size_t capped = 0;
  std::size_t exceed = 0;
  double p_hat = 0.0;
  WilsonInterval wilson;
  double mean_sup = 0.0;
  double max_sup = 0.0;
  /// More than 5% of replicas hit the cap.
  bool cap_excessive = false;
  std::vector<double> sup_errors;  // per replica, NaN when capped
  double runtime_s = 0.0;
  std::uint64_t seed = 0;
  std::string config_hash;

  std::size_t used() const { return replicas - capped; }
};

struct LlnStudy {
  std::vector<LlnRow> rows;
  std::string config_hash;
  /// ell does not grow along the schedule; nothing is asserted.
  bool control = false;
  bool monotone_ok = true;

  std::string label() const;
  bool passed() const;
  std::string csv() const;
  std::string replicas_csv() const;
  std::string metadata_json(const ExperimentConfig& cfg) const;
};

/// Exceedance probability P(sup_t ||X(t) - u(t)||_2 > epsilon) per (n, ell)
/// rung. Initial counts are round(ell * cell average of u0).
LlnStudy run_lln_study(const ExperimentConfig& cfg);

/// Point estimates must not increase along the schedule; an increase is
/// tolerated only between adjacent rungs whose Wilson intervals overlap.
bool lln_trend_ok(const std::vector<LlnRow>& rows);

// --------------------------------------------------------------- diagnostics

struct MartingaleStudy {
  std::size_t n = 0;
  std::size_t replicas = 0;
  std::size_t capped = 0;
  std::vector<double> z_mean, z_se;    // per cell, at the horizon
  std::vector<double> qv_mean, qv_se;  // observed - compensator, per node
  double z_mean_norm = 0.0;  // ||mean Z||_2
  double z_se_norm = 0.0;    // ||se||_2

  bool z_ok(double k = 4.0) const { return z_mean_norm <= k * z_se_norm; }
  bool qv_ok(double k = 4.0) const;
  std::string csv() const;
};

MartingaleStudy run_martingale_study(const StepGraphon& g, const RateFamily& birth,
                                     const RateFamily& death, const std::vector<Count>& m0,
                                     double ell, double T, std::size_t replicas,
                                     std::uint64_t seed, Count cap, std::size_t threads = 0);

struct MeanFieldStudy {
  std::vector<double> times;
  std::vector<double> gaps;  // ||replica-mean density - RD solution||_2
  std::size_t replicas = 0;
  std::size_t capped = 0;
  double sup_gap = 0.0;

  std::string csv() const;
};

/// Replica-mean density against integrate_rd on g with Phi = b - d from the
/// initial density m0 / ell, on `grid_points` uniform times.
MeanFieldStudy run_mean_field_study(const StepGraphon& g, const RateFamily& birth,
                                    const RateFamily& death, const std::vector<Count>& m0,
                                    double ell, double T, std::size_t replicas,
                                    std::uint64_t seed, Count cap, std::size_t grid_points,
                                    double dt, std::size_t threads = 0);

// -------------------------------------------------------------------- output

/// Writes <stem>.csv and <stem>.json (and plot_<stem>.py when requested)
/// atomically into dir. Returns the CSV path.
std::filesystem::path write_study(const std::filesystem::path& dir, const std::string& stem,
                                  const std::string& csv, const std::string& json,
                                  bool plot_script, ExperimentKind kind);

/// Small matplotlib script that plots the study CSV.
std::string plot_script_text(ExperimentKind kind, const std::string& csv_name);

}  // namespace graphrd
