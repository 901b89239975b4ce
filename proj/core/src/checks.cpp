#include "graphrd/checks.hpp"

#include <algorithm>

#include "graphrd/error.hpp"
#include "graphrd/output.hpp"

namespace graphrd {

namespace {

void require_diffusion(const RdSolution& sol) {
  if (!sol.reaction.is_zero()) {
    fail(ErrorCode::InvalidArgument, "check applies to pure diffusion runs only, got " +
                                         sol.reaction.to_string());
  }
}

}  // namespace

CheckReport check_contraction(const RdSolution& sol, Exponent p) {
  require_diffusion(sol);
  CheckReport report{0.0, 0.0};
  double previous = lp_norm(sol.initial(), p);
  for (std::size_t i = 1; i < sol.states.size(); ++i) {
    const double current = lp_norm(sol.states[i], p);
    if (current - previous > report.worst) {
      report.worst = current - previous;
      report.at_time = sol.times[i];
    }
    previous = current;
  }
  if (report.worst > kContractionSlack) {
    fail(ErrorCode::ContractionViolated, "L" + p.to_string() + " norm grew by " +
                                             format_real(report.worst) + " at t = " +
                                             format_real(report.at_time));
  }
  return report;
}

CheckReport check_mass_conservation(const RdSolution& sol) {
  require_diffusion(sol);
  CheckReport report{0.0, 0.0};
  const double m0 = mean(sol.initial());
  for (std::size_t i = 1; i < sol.states.size(); ++i) {
    const double drift = std::abs(mean(sol.states[i]) - m0);
    if (drift > report.worst) {
      report.worst = drift;
      report.at_time = sol.times[i];
    }
  }
  if (report.worst > kMassSlack) {
    fail(ErrorCode::MassDrift, "mean drifted by " + format_real(report.worst) + " at t = " +
                                   format_real(report.at_time));
  }
  return report;
}

CheckReport check_max_principle(const RdSolution& sol, Interval bounds) {
  if (!(bounds.lo < bounds.hi)) fail(ErrorCode::InvalidArgument, "need M1 < M2");
  if (sol.reaction(bounds.hi) > 0.0 || sol.reaction(bounds.lo) < 0.0) {
    fail(ErrorCode::InvalidArgument, "reaction does not satisfy Phi(M2) <= 0 <= Phi(M1) on [" +
                                         format_real(bounds.lo) + ", " +
                                         format_real(bounds.hi) + "]");
  }
  const auto& u0 = sol.initial();
  if (min_value(u0) < bounds.lo || max_value(u0) > bounds.hi) {
    fail(ErrorCode::InvalidArgument, "initial state leaves the invariant interval");
  }
  CheckReport report{0.0, 0.0};
  for (std::size_t i = 0; i < sol.states.size(); ++i) {
    const double excursion = std::max(bounds.lo - min_value(sol.states[i]),
                                      max_value(sol.states[i]) - bounds.hi);
    if (excursion > report.worst) {
      report.worst = excursion;
      report.at_time = sol.times[i];
    }
  }
  if (report.worst > kMaxPrincipleSlack) {
    fail(ErrorCode::MaxPrincipleViolated, "state left [M1, M2] by " + format_real(report.worst) +
                                              " at t = " + format_real(report.at_time));
  }
  return report;
}

CheckReport check_max_principle(const RdSolution& sol) {
  const auto bounds = sol.reaction.invariant_interval();
  if (!bounds) {
    fail(ErrorCode::InvalidArgument, sol.reaction.to_string() + " declares no invariant interval");
  }
  return check_max_principle(sol, *bounds);
}

}  // namespace graphrd
