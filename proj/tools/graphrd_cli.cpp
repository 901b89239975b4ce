// graphrd command-line driver.
//
// Exit codes: 0 success, 1 usage or validation error, 2 a checked bound or
// invariant failed.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphrd/bounds.hpp"
#include "graphrd/checks.hpp"
#include "graphrd/config.hpp"
#include "graphrd/cut_norm.hpp"
#include "graphrd/error.hpp"
#include "graphrd/kernel_io.hpp"
#include "graphrd/output.hpp"
#include "graphrd/particles.hpp"
#include "graphrd/profiles.hpp"
#include "graphrd/rd_solver.hpp"
#include "graphrd/studies.hpp"

namespace fs = std::filesystem;
using namespace graphrd;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kAssertion = 2;

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
  std::size_t threads = 0;
  bool threads_set = false;
};

void add_common(CLI::App* cmd, Common& c, bool config_required) {
  auto* opt = cmd->add_option("config", c.config, "Experiment config file (INI sections)");
  if (config_required) opt->required();
  opt->check(CLI::ExistingFile);
  cmd->add_option("--set", c.overrides, "Override a config value: section.key=value")
      ->allow_extra_args(false);
  cmd->add_option("--out", c.out, "Output directory (default: config or $GRAPHRD_OUTPUT_DIR)");
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

ExperimentConfig resolve(const Common& c, std::optional<ExperimentKind> force = std::nullopt) {
  std::vector<std::string> overrides = c.overrides;
  if (force) overrides.insert(overrides.begin(), "experiment.kind=" + std::string(to_string(*force)));
  ExperimentConfig cfg =
      c.config.empty() ? parse_config("", overrides) : load_config(c.config, overrides);
  if (!c.out.empty()) cfg.output_dir = c.out;
  if (c.threads != 0) cfg.threads = c.threads;
  return cfg;
}

StepGraphon coarse_kernel(const ExperimentConfig& cfg, std::size_t n) {
  if (cfg.kernel_file) {
    const auto handle = cfg.kernel();
    if (const auto* step = std::get_if<StepGraphon>(&handle)) {
      if (step->size() == n) return *step;
      fail(ErrorCode::ConfigError, "sequence.n: kernel file has n = " +
                                       std::to_string(step->size()) + " but n = " +
                                       std::to_string(n) + " was requested");
    }
    return quotient_step(std::get<AnalyticGraphon>(handle), n);
  }
  const auto w = cfg.analytic_kernel();
  return cfg.construction == Construction::Sampled ? sample_w_random(w, n, cfg.seed)
                                                   : quotient_step(w, n);
}

int cmd_validate(const Common& c) {
  const auto cfg = resolve(c);
  std::cout << config_echo(cfg) << "\nconfig_hash = " << config_hash(cfg) << '\n';
  return kOk;
}

int cmd_simulate_rd(const Common& c) {
  const auto cfg = resolve(c);
  const std::size_t n = cfg.n_values.front();
  const StepGraphon g = coarse_kernel(cfg, n);
  const ReactionTerm phi = cfg.reaction();
  const GridFunction u0 = parse_profile(cfg.profile).cell_averages(n);
  const auto sol = integrate_rd(g, phi, u0, cfg.T, cfg.dt, uniform_times(cfg.T, cfg.outputs));

  const fs::path dir = cfg.output_dir;
  write_file_atomic(dir / "rd_solution.json", to_json(sol));
  const fs::path csv = dir / "rd_solution.csv";
  write_file_atomic(csv, to_csv(sol));
  if (cfg.plot_script) {
    write_file_atomic(dir / "plot_rd_solution.py",
                      plot_script_text(ExperimentKind::SingleRun, "rd_solution.csv"));
  }

  // Property checks that apply to this run.
  std::vector<std::string> failures;
  auto check = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ContractionViolated || e.code() == ErrorCode::MassDrift ||
          e.code() == ErrorCode::MaxPrincipleViolated) {
        failures.push_back(e.what());
      } else if (e.code() != ErrorCode::InvalidArgument) {
        throw;
      }
    }
  };
  if (phi.is_zero()) {
    for (double p : {1.0, 2.0}) check([&] { check_contraction(sol, Exponent(p)); });
    check([&] { check_contraction(sol, kInfinity); });
    check([&] { check_mass_conservation(sol); });
  } else if (phi.invariant_interval()) {
    check([&] { check_max_principle(sol); });
  }

  std::cout << "simulate-rd: n=" << n << " solved to T=" << format_real(cfg.T)
            << ", final mean " << format_real(mean(sol.final_state())) << " -> " << csv.string()
            << '\n';
  for (const auto& f : failures) std::cerr << "check failed: " << f << '\n';
  return failures.empty() ? kOk : kAssertion;
}

int cmd_simulate_particles(const Common& c, std::optional<double> ell_flag,
                           std::optional<long long> cap_flag) {
  const auto cfg = resolve(c);
  const std::size_t n = cfg.n_values.front();
  const double ell = ell_flag ? *ell_flag : (cfg.ell_values.empty() ? 100.0 : cfg.ell_values.front());
  if (!(ell > 0.0)) fail(ErrorCode::ConfigError, "--ell must be positive");
  const StepGraphon g = coarse_kernel(cfg, n);
  const auto m0 = counts_from_density(parse_profile(cfg.profile).cell_averages(n), ell);
  const Count highest = *std::max_element(m0.begin(), m0.end());
  const Count cap = cap_flag ? static_cast<Count>(*cap_flag)
                             : std::max(highest, static_cast<Count>(std::ceil(cfg.cap_density * ell)));
  const auto traj =
      simulate(g, cfg.birth_family(), cfg.death_family(), m0, ell, cfg.T, cap, cfg.seed);

  const fs::path dir = cfg.output_dir;
  const fs::path events = dir / "events.csv";
  write_file_atomic(events, events_to_csv(traj));
  nlohmann::json meta = nlohmann::json::parse(trajectory_metadata_json(traj));
  meta["config"] = config_echo(cfg);
  meta["config_hash"] = config_hash(cfg);
  write_file_atomic(dir / "trajectory.json", meta.dump(2));
  std::vector<double> times;
  for (double t : uniform_times(cfg.T, cfg.outputs)) {
    if (t <= traj.end_time()) times.push_back(t);
  }
  write_file_atomic(dir / "density.csv", density_csv(traj, times));

  std::cout << "simulate-particles: " << traj.events().size() << " events, end time "
            << format_real(traj.end_time()) << (traj.capped() ? " (capped)" : "") << " -> "
            << events.string() << '\n';
  return kOk;
}

GraphonHandle load_kernel_arg(const std::string& path) {
  try {
    return load_graphon(path);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) fail(ErrorCode::ConfigError, e.what());
    throw;
  }
}

StepGraphon as_step(const GraphonHandle& h, std::size_t n) {
  if (const auto* step = std::get_if<StepGraphon>(&h)) return *step;
  return quotient_step(std::get<AnalyticGraphon>(h), n);
}

int cmd_cut_norm(const std::string& a_path, const std::string& b_path, const std::string& mode,
                 const std::string& variant, int restarts, std::uint64_t seed, bool certificate) {
  const auto a = load_kernel_arg(a_path);
  const auto b = load_kernel_arg(b_path);
  const auto* sa = std::get_if<StepGraphon>(&a);
  const auto* sb = std::get_if<StepGraphon>(&b);
  if (!sa && !sb) {
    fail(ErrorCode::InvalidArgument, "at least one of --a/--b must be a step kernel");
  }
  const std::size_t n = sa ? sa->size() : sb->size();
  const Matrix d = difference(as_step(a, n), as_step(b, n));

  const CutNormMode m = parse_cut_norm_mode(mode);
  if (m == CutNormMode::Heuristic) {
    if (variant != "bilinear") {
      fail(ErrorCode::InvalidArgument, "the heuristic evaluates the bilinear form; use "
                                       "--variant bilinear");
    }
    const auto cut = cut_norm_heuristic(d, restarts, seed);
    std::cout << format_real(cut.value) << '\n';
    return kOk;
  }
  if (variant == "bilinear") {
    std::cout << format_real(cut_norm_bilinear_exact(d).value) << '\n';
    return kOk;
  }
  CutVariant v;
  if (variant == "st") v = CutVariant::ST;
  else if (variant == "s_complement") v = CutVariant::SComplement;
  else fail(ErrorCode::InvalidArgument, "--variant must be st, s_complement or bilinear");
  const auto cut = cut_norm_exact(d, v);
  std::cout << format_real(cut.value) << '\n';
  if (certificate) {
    auto list = [](const std::vector<std::size_t>& s) {
      std::string out;
      for (auto i : s) out += (out.empty() ? "" : " ") + std::to_string(i + 1);
      return out;
    };
    std::cout << "S = {" << list(cut.s) << "}";
    if (v == CutVariant::ST) std::cout << " T = {" << list(cut.t) << "}";
    std::cout << '\n';
  }
  return kOk;
}

int cmd_convergence(const Common& c) {
  auto cfg = resolve(c);
  if (cfg.kind != ExperimentKind::DiffusionConvergence && cfg.kind != ExperimentKind::RdConvergence) {
    fail(ErrorCode::ConfigError, "experiment.kind: convergence needs diffusion_convergence or "
                                 "rd_convergence");
  }
  const auto study = run_convergence_study(cfg);
  const auto path = write_study(cfg.output_dir, "convergence", study.csv(),
                                study.metadata_json(cfg), cfg.plot_script, cfg.kind);
  std::size_t failed = 0;
  for (const auto& r : study.rows) failed += r.passed() ? 0 : 1;
  std::cout << "convergence: " << study.rows.size() << " rows, " << failed << " failed"
            << (study.order_ok ? "" : ", RK4 order check failed") << " -> " << path.string()
            << '\n';
  return study.passed() ? kOk : kAssertion;
}

int cmd_lln(const Common& c) {
  auto cfg = resolve(c);
  if (cfg.kind != ExperimentKind::Lln) {
    fail(ErrorCode::ConfigError, "experiment.kind: lln subcommand needs kind = lln");
  }
  const auto study = run_lln_study(cfg);
  const auto path = write_study(cfg.output_dir, "lln", study.csv(), study.metadata_json(cfg),
                                cfg.plot_script, cfg.kind);
  write_file_atomic(fs::path(cfg.output_dir) / "lln_replicas.csv", study.replicas_csv());
  std::cout << "lln (" << study.label() << "): ";
  for (const auto& r : study.rows) {
    std::cout << "n=" << r.n << " ell=" << format_real(r.ell) << " p=" << format_real(r.p_hat)
              << (r.cap_excessive ? " [CapTruncationExcessive]" : "") << "; ";
  }
  std::cout << (study.control ? "no trend asserted" : (study.monotone_ok ? "trend ok" : "trend violated"))
            << " -> " << path.string() << '\n';
  return study.passed() ? kOk : kAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphrd: graph and graphon reaction-diffusion toolkit"};
  app.require_subcommand(1);

  Common common;
  auto* validate = app.add_subcommand("validate-config", "Parse, validate and echo a config");
  add_common(validate, common, true);
  auto* simulate_rd = app.add_subcommand("simulate-rd", "Solve the graph RD equation for one n");
  add_common(simulate_rd, common, false);
  auto* simulate_particles =
      app.add_subcommand("simulate-particles", "Simulate the random walk with births and deaths");
  add_common(simulate_particles, common, false);
  std::optional<double> ell;
  std::optional<long long> cap;
  simulate_particles->add_option("--ell", ell, "Particles per unit density");
  simulate_particles->add_option("--cap", cap, "Per-node count cap");
  auto* convergence = app.add_subcommand("convergence", "Convergence-bound sweep over n and p");
  add_common(convergence, common, true);
  auto* lln = app.add_subcommand("lln", "Law-of-large-numbers exceedance sweep");
  add_common(lln, common, true);

  auto* cut = app.add_subcommand("cut-norm", "Cut norm of the difference of two kernels");
  std::string a_path, b_path, mode = "exact", variant = "st";
  int restarts = 24;
  std::uint64_t seed = 1;
  bool certificate = false;
  cut->add_option("--a", a_path, "First kernel (adjacency text or JSON)")->required();
  cut->add_option("--b", b_path, "Second kernel (adjacency text or JSON)")->required();
  cut->add_option("--mode", mode, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
  cut->add_option("--variant", variant, "st, s_complement or bilinear")
      ->check(CLI::IsMember({"st", "s_complement", "bilinear"}));
  cut->add_option("--restarts", restarts, "Heuristic restarts");
  cut->add_option("--seed", seed, "Heuristic seed");
  cut->add_flag("--certificate", certificate, "Also print the maximizing sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return kOk;
    std::cerr << app.help();
    return kInvalid;
  }

  try {
    if (*validate) return cmd_validate(common);
    if (*simulate_rd) return cmd_simulate_rd(common);
    if (*simulate_particles) return cmd_simulate_particles(common, ell, cap);
    if (*convergence) return cmd_convergence(common);
    if (*lln) return cmd_lln(common);
    if (*cut) return cmd_cut_norm(a_path, b_path, mode, variant, restarts, seed, certificate);
  } catch (const NonFiniteStateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAssertion;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
