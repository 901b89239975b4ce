#pragma once

#include "graphrd/gridfn.hpp"
#include "graphrd/kernel.hpp"
#include "graphrd/particles.hpp"
#include "graphrd/reaction.hpp"

namespace graphrd {

/// Z(t) = X(t) - X(0) - int_0^t L X(s) ds - int_0^t Phi(X(s)) ds.
/// X is piecewise constant in time, so both integrals are exact sums over
/// inter-event intervals. Throws FamilyMismatch unless Phi equals b - d of
/// the simulated rates, DimensionMismatch, TimeOutOfRange.
GridFunction martingale_residual_Z(const ParticleTrajectory& traj, const StepGraphon& g,
                                   const ReactionTerm& phi, double t);

/// Y(t) = X(t) - e^{tL} X(0) - int_0^t e^{(t-s)L} Phi(X(s)) ds, integrated
/// exactly per inter-event interval in the eigenbasis of L. Throws
/// SemigroupCapExceeded plus the errors above.
GridFunction stochastic_convolution_Y(const ParticleTrajectory& traj, const StepGraphon& g,
                                      const ReactionTerm& phi, double t);

struct QuadraticVariation {
  /// Number of jumps of m_k (each of size 1).
  double observed = 0.0;
  /// int_0^t [ (1/n) sum_{j != k} W_kj (m_j + m_k) + ell b(m_k/ell) + ell d(m_k/ell) ] ds
  double compensator = 0.0;
};

/// Over [0, t]; t defaults to the end of the trajectory. Throws
/// InvalidArgument for a bad node, TimeOutOfRange.
QuadraticVariation quadratic_variation_check(const ParticleTrajectory& traj, std::size_t node);
QuadraticVariation quadratic_variation_check(const ParticleTrajectory& traj, std::size_t node,
                                             double t);

/// Drift of the counts: coordinate j is
///   (1/n) sum_i W_ij (m_i - m_j) + ell (b(m_j/ell) - d(m_j/ell)).
/// Throws DimensionMismatch.
Vector generator_apply(const StepGraphon& g, const RateFamily& birth, const RateFamily& death,
                       const std::vector<Count>& m, double ell);

/// True when Phi(x) = b(x) - d(x) for the given rate families.
bool matches_birth_death(const ReactionTerm& phi, const RateFamily& birth, const RateFamily& death);

}  // namespace graphrd
