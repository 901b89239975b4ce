#pragma once

#include <string>
#include <vector>

#include "graphrd/gridfn.hpp"
#include "graphrd/kernel.hpp"
#include "graphrd/reaction.hpp"

namespace graphrd {

/// States of du/dt = L u + Phi(u) reported at increasing output times,
/// starting at t = 0.
struct RdSolution {
  std::vector<double> times;
  std::vector<GridFunction> states;
  StepGraphon graphon;
  ReactionTerm reaction;
  double dt = 0.0;

  const GridFunction& initial() const { return states.front(); }
  const GridFunction& final_state() const { return states.back(); }
};

/// count >= 2 equally spaced times covering [0, T].
std::vector<double> uniform_times(double T, std::size_t count);

/// Classical fixed-step RK4 with step dt; the last step before each output
/// time is shortened to land on it. An empty `output_times` means {0, T};
/// 0 is prepended when missing. Throws NonFiniteStateError carrying the time
/// of the first non-finite state.
RdSolution integrate_rd(const StepGraphon& g, const ReactionTerm& phi, const GridFunction& u0,
                        double T, double dt, std::vector<double> output_times = {});

/// max over output times t of
///   || u(t) - e^{tM} u0 - trapz_s e^{(t-s)M} Phi(u(s)) ||_p
/// with the trapezoidal rule on the stored (uniformly spaced) states.
/// Throws InsufficientSamples.
double mild_residual(const RdSolution& sol, Exponent p);

/// CSV with columns t, cell_0 .. cell_{n-1}.
std::string to_csv(const RdSolution& sol);
/// JSON: config echo plus times and states.
std::string to_json(const RdSolution& sol);

}  // namespace graphrd
