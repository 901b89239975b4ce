#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphrd/bounds.hpp"
#include "graphrd/exponent.hpp"
#include "graphrd/kernel.hpp"
#include "graphrd/reaction.hpp"

namespace graphrd {

enum class ExperimentKind { DiffusionConvergence, RdConvergence, Lln, SingleRun };

std::string_view to_string(ExperimentKind kind) noexcept;

enum class Construction { Quotient, Sampled };

/// Resolved experiment description. Built from an INI-style file:
///
///   [experiment]  kind, seed, replicas, threads, output_dir, plot_script, paranoid
///   [kernel]      family + c / a, or file; construction = quotient | sampled
///   [sequence]    n = 4, 8, 16; ell = ... (lln); reference_factor
///   [reaction]    family = zero | linear | logistic | allen_cahn | birth_death;
///                 r; birth, death (e.g. linear:1, quadratic:1)
///   [initial]     profile = constant(c) | step(a,b,split) | sine(c[,offset])
///   [time]        T, dt, outputs
///   [bounds]      p = 1, 2, inf; cut_mode; strict; restarts; slack
///   [lln]         epsilon, cap_density, grid
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SingleRun;

  std::string kernel_family = "smooth_cosine";
  std::map<std::string, double> kernel_params{{"c", 0.5}};
  std::optional<std::filesystem::path> kernel_file;
  Construction construction = Construction::Quotient;

  std::vector<std::size_t> n_values{8};
  std::vector<double> ell_values;
  std::size_t reference_factor = 16;

  std::string reaction_family = "zero";
  double reaction_rate = 1.0;
  std::string birth = "zero";
  std::string death = "zero";

  std::string profile = "sine(0.3,0.5)";

  double T = 1.0;
  double dt = 1e-3;
  std::size_t outputs = 21;

  std::vector<Exponent> p_values{Exponent(2.0)};
  CutNormMode cut_mode = CutNormMode::Exact;
  bool strict = false;
  int restarts = 24;
  double slack = 1e-6;

  double epsilon = 0.15;
  double cap_density = 20.0;
  std::size_t grid = 21;

  std::uint64_t seed = 1;
  std::size_t replicas = 200;
  std::size_t threads = 0;
  std::filesystem::path output_dir = "graphrd-out";
  bool plot_script = false;
  bool paranoid = false;

  ReactionTerm reaction() const;
  RateFamily birth_family() const;
  RateFamily death_family() const;
  GraphonHandle kernel() const;
  /// The analytic kernel. Throws ConfigError when the kernel is a file.
  AnalyticGraphon analytic_kernel() const;
  std::size_t reference_n() const;
  BoundOptions bound_options() const;
};

/// Parses the INI text, applies "section.key=value" overrides, validates and
/// resolves. Throws ConfigError with the offending key in the message.
ExperimentConfig parse_config(std::string_view text,
                              const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides = {});

/// Canonical "key = value" listing of every resolved field that affects
/// results, section by section. Execution settings (threads, output_dir)
/// are left out so moving a run does not change its hash.
std::string config_echo(const ExperimentConfig& cfg);
/// FNV-1a of the echo.
std::string config_hash(const ExperimentConfig& cfg);

/// Default output directory: $GRAPHRD_OUTPUT_DIR when set.
std::optional<std::filesystem::path> output_dir_from_env();

}  // namespace graphrd
