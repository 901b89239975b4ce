#include "graphrd/diffusion.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "graphrd/error.hpp"
#include "graphrd/output.hpp"

namespace graphrd {

namespace {

void require_match(const StepGraphon& g, const GridFunction& u) {
  if (g.size() != u.size()) {
    fail(ErrorCode::DimensionMismatch, "graphon has n = " + std::to_string(g.size()) +
                                           " but state has n = " + std::to_string(u.size()));
  }
}

void require_semigroup_size(const StepGraphon& g) {
  if (g.size() > kSemigroupCap) {
    fail(ErrorCode::SemigroupCapExceeded, "n = " + std::to_string(g.size()) +
                                              " exceeds the dense semigroup cap of " +
                                              std::to_string(kSemigroupCap));
  }
}

}  // namespace

Vector to_vector(const GridFunction& u) {
  return Eigen::Map<const Vector>(u.values().data(), static_cast<Eigen::Index>(u.size()));
}

GridFunction from_vector(const Vector& v) {
  return GridFunction(std::vector<double>(v.data(), v.data() + v.size()));
}

GridFunction apply_L(const StepGraphon& g, const GridFunction& u) {
  require_match(g, u);
  const Vector x = to_vector(u);
  const double inv_n = 1.0 / static_cast<double>(g.size());
  const Vector out = inv_n * (g.values() * x) - g.degrees().cwiseProduct(x);
  return from_vector(out);
}

Matrix build_L_matrix(const StepGraphon& g) {
  Matrix m = g.values() / static_cast<double>(g.size());
  m.diagonal() -= g.degrees();
  return m;
}

Matrix semigroup_matrix(const StepGraphon& g, double t) {
  if (!(t >= 0.0)) fail(ErrorCode::NegativeTime, "time " + format_real(t) + " is negative");
  require_semigroup_size(g);
  if (t == 0.0) return Matrix::Identity(g.values().rows(), g.values().cols());
  const Matrix tm = t * build_L_matrix(g);
  return tm.exp();
}

GridFunction semigroup_apply(const StepGraphon& g, double t, const GridFunction& u0) {
  if (!(t >= 0.0)) fail(ErrorCode::NegativeTime, "time " + format_real(t) + " is negative");
  require_match(g, u0);
  if (t == 0.0) return u0;
  return from_vector(semigroup_matrix(g, t) * to_vector(u0));
}

SpectralPropagator::SpectralPropagator(const StepGraphon& g) {
  require_semigroup_size(g);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(build_L_matrix(g));
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::InvalidArgument, "eigendecomposition of the diffusion matrix failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

GridFunction SpectralPropagator::apply(double t, const GridFunction& u0) const {
  if (!(t >= 0.0)) fail(ErrorCode::NegativeTime, "time " + format_real(t) + " is negative");
  if (u0.size() != size()) fail(ErrorCode::DimensionMismatch, "state size does not match");
  Vector c = to_modal(to_vector(u0));
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(t * eigenvalues_(k));
  return from_vector(from_modal(c));
}

}  // namespace graphrd
