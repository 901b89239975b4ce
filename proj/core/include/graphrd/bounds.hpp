#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graphrd/cut_norm.hpp"
#include "graphrd/exponent.hpp"
#include "graphrd/gridfn.hpp"
#include "graphrd/kernel.hpp"
#include "graphrd/rd_solver.hpp"
#include "graphrd/reaction.hpp"

namespace graphrd {

enum class CutNormMode { Exact, Heuristic };

std::string_view to_string(CutNormMode mode) noexcept;
/// "exact" or "heuristic". Throws InvalidArgument.
CutNormMode parse_cut_norm_mode(std::string_view text);

struct BoundOptions {
  double dt = 1e-3;
  /// Uniform output times on [0, T] at which both sides are compared.
  std::size_t output_count = 21;
  /// Exact falls back to the heuristic lower bound (and marks the report
  /// advisory) when the reference partition exceeds limits.bilinear, unless
  /// strict is set, in which case CutNormUnavailable is thrown.
  CutNormMode mode = CutNormMode::Exact;
  bool strict = false;
  CutNormLimits limits{};
  int heuristic_restarts = 24;
  std::uint64_t heuristic_seed = 1;
  double slack = 1e-6;
};

/// The reference problem: the RD equation on a fine partition N whose
/// kernel stands in for the graphon.
struct ConvergenceReference {
  StepGraphon graphon;
  GridFunction u0;
  RdSolution solution;
};

/// Solves the RD equation on `reference_graphon` from `u0_fine` (same
/// partition) at uniform output times.
ConvergenceReference make_reference(const StepGraphon& reference_graphon, const ReactionTerm& phi,
                                    const GridFunction& u0_fine, double T,
                                    const BoundOptions& options = {});

struct BoundReport {
  Exponent p{2.0};
  double lhs = 0.0;      // max_t ||u_n(t) - u(t)||_p
  double rhs = 0.0;      // bound at the final time
  double margin = 0.0;   // min_t rhs(t) - lhs(t)
  bool passed = false;   // lhs(t) <= rhs(t) + slack at every output time
  /// Kernel distance entering the bound: the cut norm for finite p, the
  /// sup norm for p = inf.
  double kernel_distance = 0.0;
  double cut_norm_value = 0.0;
  CutNormMode cut_norm_mode = CutNormMode::Exact;
  /// The cut norm is a heuristic lower bound; a failing row is then not
  /// conclusive.
  bool advisory = false;
  /// ||W_n - W||_1, an upper bound on the cut norm.
  double l1_distance = 0.0;
  double initial_error = 0.0;
  double lipschitz = 0.0;
  double sup_initial = 0.0;  // M = ||u(0)||_inf
  std::vector<double> times;
  std::vector<double> lhs_series;
  std::vector<double> rhs_series;

  /// {lhs, rhs, margin, cut_norm_value, cut_norm_mode, ...}
  std::string to_json() const;
};

/// Lp convergence bound, p finite:
///   ||u_n(t) - u(t)||_p <= e^{Kt} ||u_n(0) - u(0)||_p
///                          + 4M (e^{Kt} - 1)/K ||W_n - W||_cut^{1/p}
/// (4tM for K = 0). u_n starts from the cell averages of the reference
/// initial state. K is the global Lipschitz constant of Phi, or its constant
/// on the invariant interval when the initial data lies in it. Throws
/// InvalidExponent for p = inf, NotADivisor, CutNormUnavailable.
BoundReport rd_convergence_bound(const ConvergenceReference& ref, const StepGraphon& wn,
                                 const ReactionTerm& phi, Exponent p,
                                 const BoundOptions& options = {});
/// Reference built from quotient_step(w, u0_fine.size()).
BoundReport rd_convergence_bound(const AnalyticGraphon& w, const StepGraphon& wn,
                                 const ReactionTerm& phi, const GridFunction& u0_fine, double T,
                                 Exponent p, const BoundOptions& options = {});

/// Sup-norm variant:
///   ||u_n(t) - u(t)||_inf <= e^{Kt} ||u_n(0) - u(0)||_inf
///                            + 2M (e^{Kt} - 1)/K ||W_n - W||_inf
/// (2tM for K = 0), K the Lipschitz constant on [M1, M2].
BoundReport linfty_convergence_bound(const ConvergenceReference& ref, const StepGraphon& wn,
                                     const ReactionTerm& phi, const BoundOptions& options = {});
BoundReport linfty_convergence_bound(const AnalyticGraphon& w, const StepGraphon& wn,
                                     const ReactionTerm& phi, const GridFunction& u0_fine,
                                     double T, const BoundOptions& options = {});

}  // namespace graphrd
