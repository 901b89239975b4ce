#pragma once

#include <cstddef>

#include "graphrd/gridfn.hpp"
#include "graphrd/kernel.hpp"

namespace graphrd {

/// Largest partition for which dense matrix exponentials are formed.
inline constexpr std::size_t kSemigroupCap = 2048;

/// Graph diffusion operator: (L u)_k = (1/n) sum_j W_kj (u_j - u_k).
/// Throws DimensionMismatch.
GridFunction apply_L(const StepGraphon& g, const GridFunction& u);

/// Dense form M = (1/n) W - diag(degrees). Symmetric, zero row sums.
Matrix build_L_matrix(const StepGraphon& g);

/// exp(t M) by scaling and squaring with a Pade approximant.
/// Throws NegativeTime / SemigroupCapExceeded.
Matrix semigroup_matrix(const StepGraphon& g, double t);

/// exp(t M) u0. Throws NegativeTime, DimensionMismatch, SemigroupCapExceeded.
GridFunction semigroup_apply(const StepGraphon& g, double t, const GridFunction& u0);

/// Eigendecomposition M = V diag(lambda) V^T, used where many propagations
/// exp(tau M) of varying tau are needed.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const StepGraphon& g);

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }

  Vector to_modal(const Vector& u) const { return eigenvectors_.transpose() * u; }
  Vector from_modal(const Vector& c) const { return eigenvectors_ * c; }

  GridFunction apply(double t, const GridFunction& u0) const;

 private:
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

Vector to_vector(const GridFunction& u);
GridFunction from_vector(const Vector& v);

}  // namespace graphrd
