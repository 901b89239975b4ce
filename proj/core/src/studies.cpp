#include "graphrd/studies.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "graphrd/diagnostics.hpp"
#include "graphrd/diffusion.hpp"
#include "graphrd/error.hpp"
#include "graphrd/output.hpp"
#include "graphrd/profiles.hpp"
#include "graphrd/rng.hpp"

namespace graphrd {

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex guard;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (!first) first = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // The endpoints are exact at p = 0 and p = 1; rounding would leave ~1e-18.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

double rk4_order_ratio(const StepGraphon& g, const GridFunction& u0, double T, double dt) {
  const auto exact = semigroup_apply(g, T, u0);
  auto error_at = [&](double h) {
    const auto sol = integrate_rd(g, ReactionTerm::zero(), u0, T, h);
    return lp_norm(sol.final_state() - exact, kInfinity);
  };
  const double coarse = error_at(dt);
  const double fine = error_at(dt / 2.0);
  // Below this the comparison is rounding noise, not truncation error.
  if (coarse < 1e-13) return std::numeric_limits<double>::infinity();
  if (fine == 0.0) return std::numeric_limits<double>::infinity();
  return coarse / fine;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void require_divides(std::size_t n, std::size_t big) {
  if (big % n != 0) {
    fail(ErrorCode::ConfigError, "sequence.n: " + std::to_string(n) +
                                     " does not divide the reference partition " +
                                     std::to_string(big));
  }
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

/// Commas and newlines in free text would break the CSV shape.
std::string csv_text(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

double rms(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

// ---------------------------------------------------------------- convergence

bool ConvergenceStudy::passed() const {
  if (!order_ok) return false;
  return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.passed(); });
}

std::string ConvergenceStudy::csv() const {
  std::string out =
      "config_hash,n,p,lhs,rhs,margin,cut_norm,cut_norm_mode,advisory,kernel_distance,kernel_lp,"
      "l1_distance,initial_error,lipschitz,bound_ok,monotone_ok,passed,seed,error\n";
  for (const auto& r : rows) {
    const auto& b = r.report;
    // The sup-norm bound uses no cut norm; those cells stay empty.
    const bool sup = r.p.is_infinite();
    out += r.config_hash + ',' + std::to_string(r.n) + ',' + r.p.to_string() + ',' +
           format_real(b.lhs) + ',' + format_real(b.rhs) + ',' + format_real(b.margin) + ',' +
           (sup ? std::string() : format_real(b.cut_norm_value)) + ',' +
           (sup ? std::string() : std::string(to_string(b.cut_norm_mode))) + ',' +
           csv_bool(b.advisory) + ',' + format_real(b.kernel_distance) + ',' +
           format_real(r.kernel_lp) + ',' + format_real(b.l1_distance) + ',' +
           format_real(b.initial_error) + ',' + format_real(b.lipschitz) + ',' +
           csv_bool(r.error.empty() && b.passed) + ',' + csv_bool(r.monotone_ok) + ',' +
           csv_bool(r.passed()) + ',' + std::to_string(r.seed) + ',' + csv_text(r.error) + '\n';
  }
  return out;
}

std::string ConvergenceStudy::metadata_json(const ExperimentConfig& cfg) const {
  nlohmann::json j;
  j["config_hash"] = config_hash;
  j["config"] = config_echo(cfg);
  j["reference_n"] = reference_n;
  j["monotone_asserted"] = monotone_asserted;
  j["order_ratio"] = std::isfinite(order_ratio) ? nlohmann::json(order_ratio) : nlohmann::json("inf");
  j["order_ok"] = order_ok;
  j["passed"] = passed();
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = nlohmann::json::parse(r.report.to_json());
    row["n"] = r.n;
    row["runtime_s"] = r.runtime_s;
    row["error"] = r.error;
    rows_json.push_back(row);
  }
  j["rows"] = rows_json;
  return j.dump(2);
}

ConvergenceStudy run_convergence_study(const ExperimentConfig& cfg) {
  const auto w = cfg.analytic_kernel();
  const ReactionTerm phi =
      cfg.kind == ExperimentKind::DiffusionConvergence ? ReactionTerm::zero() : cfg.reaction();
  const Profile profile = parse_profile(cfg.profile);
  const std::size_t big = cfg.reference_n();
  for (auto n : cfg.n_values) require_divides(n, big);
  const BoundOptions options = cfg.bound_options();

  ConvergenceStudy study;
  study.config_hash = config_hash(cfg);
  study.reference_n = big;
  study.monotone_asserted = cfg.construction == Construction::Quotient;

  if (cfg.paranoid) {
    const std::size_t n0 = cfg.n_values.front();
    study.order_ratio =
        rk4_order_ratio(quotient_step(w, n0), profile.cell_averages(n0), cfg.T, 0.2);
    study.order_ok = study.order_ratio >= 12.0;
  }

  const auto ref = make_reference(quotient_step(w, big), phi, profile.cell_averages(big), cfg.T,
                                  options);

  const std::size_t np = cfg.p_values.size();
  study.rows.resize(cfg.n_values.size() * np);
  parallel_for(study.rows.size(), cfg.threads, [&](std::size_t idx) {
    const auto start = std::chrono::steady_clock::now();
    ConvergenceRow& row = study.rows[idx];
    row.n = cfg.n_values[idx / np];
    row.p = cfg.p_values[idx % np];
    row.config_hash = study.config_hash;
    row.seed = cfg.construction == Construction::Sampled ? splitmix64(cfg.seed ^ row.n) : cfg.seed;
    try {
      const StepGraphon wn = cfg.construction == Construction::Sampled
                                 ? sample_w_random(w, row.n, row.seed)
                                 : quotient_step(w, row.n);
      row.report = row.p.is_infinite() ? linfty_convergence_bound(ref, wn, phi, options)
                                       : rd_convergence_bound(ref, wn, phi, row.p, options);
      row.kernel_lp = kernel_lp_norm(wn.refine(big).values() - ref.graphon.values(), row.p);
    } catch (const Error& e) {
      row.error = e.what();
    }
    row.runtime_s = seconds_since(start);
  });

  // Rows are ordered by n, then p.
  if (study.monotone_asserted) {
    for (std::size_t j = 0; j < np; ++j) {
      for (std::size_t i = 1; i < cfg.n_values.size(); ++i) {
        const auto& prev = study.rows[(i - 1) * np + j];
        auto& cur = study.rows[i * np + j];
        if (!prev.error.empty() || !cur.error.empty()) continue;
        if (cur.report.lhs > 1.1 * prev.report.lhs) cur.monotone_ok = false;
      }
    }
  }
  return study;
}

// ------------------------------------------------------------------------ lln

const GridFunction& ReferencePath::at(double t) const {
  if (t <= 0.0) return states.front();
  const auto idx = static_cast<std::size_t>(std::floor(t / h + 1e-9));
  return states[std::min(idx, states.size() - 1)];
}

ReferencePath make_reference_path(const StepGraphon& fine, const ReactionTerm& phi,
                                  const GridFunction& u0_fine, double T, double dt) {
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  auto sol = integrate_rd(fine, phi, u0_fine, T, dt, uniform_times(T, steps + 1));
  return ReferencePath{fine.size(), T / static_cast<double>(steps), std::move(sol.states)};
}

double sup_l2_error(const ParticleTrajectory& traj, const ReferencePath& ref,
                    std::size_t grid_points) {
  const std::size_t n = traj.size();
  const std::size_t big = ref.n;
  if (big % n != 0) {
    fail(ErrorCode::NotADivisor, "trajectory partition does not divide the reference partition");
  }
  const std::size_t block = big / n;
  const double ell = traj.ell();
  const double T = traj.horizon();

  // Per node: sum over its fine cells of (x - u_f)^2 = B x^2 - 2 x S1 + S2.
  std::vector<double> s1(n), s2(n), term(n), x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = static_cast<double>(traj.initial().m[k]) / ell;
  const GridFunction* current = nullptr;
  double total = 0.0;
  auto node_term = [&](std::size_t k) {
    return static_cast<double>(block) * x[k] * x[k] - 2.0 * x[k] * s1[k] + s2[k];
  };
  auto load = [&](double t) {
    const GridFunction* u = &ref.at(t);
    if (u == current) return;
    current = u;
    total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double a = 0.0, b = 0.0;
      for (std::size_t f = k * block; f < (k + 1) * block; ++f) {
        a += (*u)[f];
        b += (*u)[f] * (*u)[f];
      }
      s1[k] = a;
      s2[k] = b;
      term[k] = node_term(k);
      total += term[k];
    }
  };
  auto set_node = [&](std::size_t k, double value) {
    x[k] = value;
    const double updated = node_term(k);
    total += updated - term[k];
    term[k] = updated;
  };
  double worst = 0.0;
  auto evaluate = [&](double t) {
    load(t);
    worst = std::max(worst, std::sqrt(std::max(total, 0.0) / static_cast<double>(big)));
  };

  std::vector<Count> m = traj.initial().m;
  std::size_t g = 0;
  auto grid_time = [&](std::size_t i) {
    return T * static_cast<double>(i) / static_cast<double>(grid_points - 1);
  };
  for (const auto& e : traj.events()) {
    while (g < grid_points && grid_time(g) < e.time) evaluate(grid_time(g++));
    evaluate(e.time);  // left limit
    switch (e.kind) {
      case EventKind::Migrate:
        --m[e.k];
        ++m[e.i];
        set_node(e.k, static_cast<double>(m[e.k]) / ell);
        set_node(e.i, static_cast<double>(m[e.i]) / ell);
        break;
      case EventKind::Birth:
        ++m[e.k];
        set_node(e.k, static_cast<double>(m[e.k]) / ell);
        break;
      case EventKind::Death:
        --m[e.k];
        set_node(e.k, static_cast<double>(m[e.k]) / ell);
        break;
    }
    evaluate(e.time);  // right value
  }
  while (g < grid_points && grid_time(g) <= traj.end_time()) evaluate(grid_time(g++));
  return worst;
}

bool lln_trend_ok(const std::vector<LlnRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j].p_hat <= rows[i].p_hat) continue;
      const bool adjacent = j == i + 1;
      const bool overlap = rows[j].wilson.lo <= rows[i].wilson.hi;
      if (!(adjacent && overlap)) return false;
    }
  }
  return true;
}

std::string LlnStudy::label() const {
  return control ? "hypothesis-violating control" : "lln trend";
}

bool LlnStudy::passed() const {
  const bool reliable =
      std::none_of(rows.begin(), rows.end(), [](const LlnRow& r) { return r.cap_excessive; });
  return reliable && (control || monotone_ok);
}

std::string LlnStudy::csv() const {
  std::string out =
      "config_hash,n,ell,replicas,used,capped,exceed,p_hat,wilson_lo,wilson_hi,mean_sup,max_sup,"
      "cap_excessive,seed\n";
  for (const auto& r : rows) {
    out += r.config_hash + ',' + std::to_string(r.n) + ',' + format_real(r.ell) + ',' +
           std::to_string(r.replicas) + ',' + std::to_string(r.used()) + ',' +
           std::to_string(r.capped) + ',' + std::to_string(r.exceed) + ',' +
           format_real(r.p_hat) + ',' + format_real(r.wilson.lo) + ',' +
           format_real(r.wilson.hi) + ',' + format_real(r.mean_sup) + ',' +
           format_real(r.max_sup) + ',' + csv_bool(r.cap_excessive) + ',' +
           std::to_string(r.seed) + '\n';
  }
  return out;
}

std::string LlnStudy::replicas_csv() const {
  std::string out = "config_hash,n,ell,replica,sup_error,capped\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.sup_errors.size(); ++i) {
      const bool capped = std::isnan(r.sup_errors[i]);
      out += r.config_hash + ',' + std::to_string(r.n) + ',' + format_real(r.ell) + ',' +
             std::to_string(i) + ',' + (capped ? std::string() : format_real(r.sup_errors[i])) +
             ',' + csv_bool(capped) + '\n';
    }
  }
  return out;
}

std::string LlnStudy::metadata_json(const ExperimentConfig& cfg) const {
  nlohmann::json j;
  j["config_hash"] = config_hash;
  j["config"] = config_echo(cfg);
  j["label"] = label();
  j["control"] = control;
  j["monotone_ok"] = monotone_ok;
  j["passed"] = passed();
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"n", r.n},
                         {"ell", r.ell},
                         {"p_hat", r.p_hat},
                         {"capped", r.capped},
                         {"cap_excessive", r.cap_excessive},
                         {"runtime_s", r.runtime_s}});
  }
  j["rows"] = rows_json;
  return j.dump(2);
}

LlnStudy run_lln_study(const ExperimentConfig& cfg) {
  const auto w = cfg.analytic_kernel();
  const RateFamily birth = cfg.birth_family();
  const RateFamily death = cfg.death_family();
  const ReactionTerm phi = ReactionTerm::birth_death(birth, death);
  const Profile profile = parse_profile(cfg.profile);
  if (cfg.ell_values.size() != cfg.n_values.size()) {
    fail(ErrorCode::ConfigError, "sequence.ell: needs one ell per n value");
  }
  const std::size_t big = cfg.reference_n();
  for (auto n : cfg.n_values) require_divides(n, big);

  LlnStudy study;
  study.config_hash = config_hash(cfg);
  for (std::size_t i = 1; i < cfg.ell_values.size(); ++i) {
    if (!(cfg.ell_values[i] > cfg.ell_values[i - 1])) study.control = true;
  }
  if (cfg.ell_values.size() < 2) study.control = true;

  const auto ref = make_reference_path(quotient_step(w, big), phi, profile.cell_averages(big),
                                       cfg.T, cfg.dt);

  for (std::size_t rung = 0; rung < cfg.n_values.size(); ++rung) {
    const auto start = std::chrono::steady_clock::now();
    LlnRow row;
    row.n = cfg.n_values[rung];
    row.ell = cfg.ell_values[rung];
    row.replicas = cfg.replicas;
    row.seed = cfg.seed;
    row.config_hash = study.config_hash;

    const auto wn = std::make_shared<const StepGraphon>(quotient_step(w, row.n));
    const auto m0 = counts_from_density(profile.cell_averages(row.n), row.ell);
    const Count cap = std::max(*std::max_element(m0.begin(), m0.end()),
                               static_cast<Count>(std::ceil(cfg.cap_density * row.ell)));

    row.sup_errors.assign(cfg.replicas, 0.0);
    parallel_for(cfg.replicas, cfg.threads, [&](std::size_t r) {
      const auto traj = simulate(wn, birth, death, m0, row.ell, cfg.T, cap, cfg.seed,
                                 (static_cast<std::uint64_t>(rung) << 32) | r);
      row.sup_errors[r] = traj.capped() ? std::numeric_limits<double>::quiet_NaN()
                                        : sup_l2_error(traj, ref, cfg.grid);
    });

    double sum = 0.0;
    for (double s : row.sup_errors) {
      if (std::isnan(s)) {
        ++row.capped;
        continue;
      }
      sum += s;
      row.max_sup = std::max(row.max_sup, s);
      if (s > cfg.epsilon) ++row.exceed;
    }
    const std::size_t used = row.used();
    row.mean_sup = used ? sum / static_cast<double>(used) : 0.0;
    row.p_hat = used ? static_cast<double>(row.exceed) / static_cast<double>(used) : 1.0;
    row.wilson = wilson_interval(row.exceed, used);
    row.cap_excessive = static_cast<double>(row.capped) > 0.05 * static_cast<double>(row.replicas);
    row.runtime_s = seconds_since(start);
    study.rows.push_back(std::move(row));
  }
  study.monotone_ok = lln_trend_ok(study.rows);
  return study;
}

// --------------------------------------------------------------- diagnostics

bool MartingaleStudy::qv_ok(double k) const {
  for (std::size_t i = 0; i < qv_mean.size(); ++i) {
    if (std::abs(qv_mean[i]) > k * qv_se[i]) return false;
  }
  return true;
}

std::string MartingaleStudy::csv() const {
  std::string out = "node,z_mean,z_se,qv_gap_mean,qv_gap_se\n";
  for (std::size_t k = 0; k < z_mean.size(); ++k) {
    out += std::to_string(k) + ',' + format_real(z_mean[k]) + ',' + format_real(z_se[k]) + ',' +
           format_real(qv_mean[k]) + ',' + format_real(qv_se[k]) + '\n';
  }
  return out;
}

MartingaleStudy run_martingale_study(const StepGraphon& g, const RateFamily& birth,
                                     const RateFamily& death, const std::vector<Count>& m0,
                                     double ell, double T, std::size_t replicas,
                                     std::uint64_t seed, Count cap, std::size_t threads) {
  const std::size_t n = g.size();
  const auto shared = std::make_shared<const StepGraphon>(g);
  const ReactionTerm phi = ReactionTerm::birth_death(birth, death);
  struct Sample {
    bool capped = false;
    std::vector<double> z, qv;
  };
  std::vector<Sample> samples(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    const auto traj = simulate(shared, birth, death, m0, ell, T, cap, seed, r);
    Sample& s = samples[r];
    if (traj.capped()) {
      s.capped = true;
      return;
    }
    s.z = martingale_residual_Z(traj, g, phi, T).vector();
    s.qv.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto q = quadratic_variation_check(traj, k, T);
      s.qv[k] = q.observed - q.compensator;
    }
  });

  MartingaleStudy out;
  out.n = n;
  out.replicas = replicas;
  for (const auto& s : samples) out.capped += s.capped ? 1 : 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> z, qv;
    for (const auto& s : samples) {
      if (s.capped) continue;
      z.push_back(s.z[k]);
      qv.push_back(s.qv[k]);
    }
    out.z_mean.push_back(mean_of(z));
    out.z_se.push_back(standard_error(z));
    out.qv_mean.push_back(mean_of(qv));
    out.qv_se.push_back(standard_error(qv));
  }
  out.z_mean_norm = rms(out.z_mean);
  out.z_se_norm = rms(out.z_se);
  return out;
}

std::string MeanFieldStudy::csv() const {
  std::string out = "t,gap\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out += format_real(times[i]) + ',' + format_real(gaps[i]) + '\n';
  }
  return out;
}

MeanFieldStudy run_mean_field_study(const StepGraphon& g, const RateFamily& birth,
                                    const RateFamily& death, const std::vector<Count>& m0,
                                    double ell, double T, std::size_t replicas,
                                    std::uint64_t seed, Count cap, std::size_t grid_points,
                                    double dt, std::size_t threads) {
  const std::size_t n = g.size();
  const auto shared = std::make_shared<const StepGraphon>(g);
  const ReactionTerm phi = ReactionTerm::birth_death(birth, death);
  MeanFieldStudy out;
  out.times = uniform_times(T, grid_points);
  out.replicas = replicas;

  // densities[r][i] is replica r at times[i]; empty when capped.
  std::vector<std::vector<GridFunction>> densities(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    const auto traj = simulate(shared, birth, death, m0, ell, T, cap, seed, r);
    if (traj.capped()) return;
    for (double t : out.times) densities[r].push_back(density(traj, t));
  });

  const GridFunction u0 = ParticleState{m0, ell, 0.0}.density();
  const auto sol = integrate_rd(g, phi, u0, T, dt, out.times);
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    std::vector<double> avg(n, 0.0);
    std::size_t used = 0;
    for (const auto& d : densities) {
      if (d.empty()) continue;
      ++used;
      for (std::size_t k = 0; k < n; ++k) avg[k] += d[i][k];
    }
    if (i == 0) out.capped = replicas - used;
    if (used == 0) fail(ErrorCode::CapTruncationExcessive, "every replica hit the cap");
    for (double& a : avg) a /= static_cast<double>(used);
    const double gap = lp_norm(GridFunction(std::move(avg)) - sol.states[i], Exponent(2.0));
    out.gaps.push_back(gap);
    out.sup_gap = std::max(out.sup_gap, gap);
  }
  return out;
}

// -------------------------------------------------------------------- output

std::string plot_script_text(ExperimentKind kind, const std::string& csv_name) {
  std::string body;
  switch (kind) {
    case ExperimentKind::DiffusionConvergence:
    case ExperimentKind::RdConvergence:
      body =
          "for p, rows in data.groupby('p'):\n"
          "    plt.loglog(rows['n'], rows['lhs'], 'o-', label=f'lhs p={p}')\n"
          "    plt.loglog(rows['n'], rows['rhs'], 'x--', label=f'rhs p={p}')\n"
          "plt.xlabel('n')\n"
          "plt.ylabel('error')\n";
      break;
    case ExperimentKind::Lln:
      body =
          "plt.errorbar(data['n'], data['p_hat'],\n"
          "             yerr=[data['p_hat'] - data['wilson_lo'], data['wilson_hi'] - data['p_hat']],\n"
          "             fmt='o-')\n"
          "plt.xlabel('n')\n"
          "plt.ylabel('exceedance probability')\n";
      break;
    case ExperimentKind::SingleRun:
      body =
          "for column in data.columns[1:]:\n"
          "    plt.plot(data['t'], data[column], label=column)\n"
          "plt.xlabel('t')\n";
      break;
  }
  return "import sys\n"
         "import matplotlib.pyplot as plt\n"
         "import pandas as pd\n\n"
         "data = pd.read_csv('" + csv_name + "')\n" + body +
         "plt.legend()\n"
         "plt.savefig(sys.argv[1] if len(sys.argv) > 1 else '" + csv_name + ".png')\n";
}

std::filesystem::path write_study(const std::filesystem::path& dir, const std::string& stem,
                                  const std::string& csv, const std::string& json,
                                  bool plot_script, ExperimentKind kind) {
  const auto csv_path = dir / (stem + ".csv");
  write_file_atomic(csv_path, csv);
  write_file_atomic(dir / (stem + ".json"), json);
  if (plot_script) {
    write_file_atomic(dir / ("plot_" + stem + ".py"), plot_script_text(kind, stem + ".csv"));
  }
  return csv_path;
}

}  // namespace graphrd
