#pragma once

#include "graphrd/exponent.hpp"
#include "graphrd/rd_solver.hpp"
#include "graphrd/reaction.hpp"

namespace graphrd {

inline constexpr double kContractionSlack = 1e-9;
inline constexpr double kMassSlack = 1e-10;
inline constexpr double kMaxPrincipleSlack = 1e-8;

struct CheckReport {
  /// Largest observed violation measure (increase, drift or excursion);
  /// zero or negative means the property held exactly.
  double worst = 0.0;
  /// Output time at which `worst` was observed.
  double at_time = 0.0;
};

/// ||u(t)||_p is nonincreasing along a pure-diffusion run. Throws
/// InvalidArgument if the run has a reaction, ContractionViolated when an
/// increase exceeds the slack.
CheckReport check_contraction(const RdSolution& sol, Exponent p);

/// |mean(u(t)) - mean(u0)| stays within the slack. Throws InvalidArgument /
/// MassDrift.
CheckReport check_mass_conservation(const RdSolution& sol);

/// States stay in [M1, M2] up to the slack. Requires Phi(M2) <= 0 <= Phi(M1)
/// and u0 inside the interval (InvalidArgument otherwise). Throws
/// MaxPrincipleViolated.
CheckReport check_max_principle(const RdSolution& sol, Interval bounds);
/// Uses the reaction's declared invariant interval.
CheckReport check_max_principle(const RdSolution& sol);

}  // namespace graphrd
