#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

#include "graphrd/exponent.hpp"

namespace graphrd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kDegreeTolerance = 1e-12;
/// Largest partition two step graphons may be refined to for comparison.
inline constexpr std::size_t kMaxCommonRefinement = 4096;

/// Symmetric nonnegative n x n matrix read as a piecewise-constant kernel on
/// the uniform partition of (0,1). Entry (i,j) is the kernel value on
/// I_i x I_j. Immutable once constructed.
class StepGraphon {
 public:
  /// Validates symmetry, sign, finiteness and the degree bound
  /// (1/n) * sum_j W_ij <= 1.
  explicit StepGraphon(Matrix values);

  static StepGraphon zeros(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double evaluate(double x, double y) const;
  const Matrix& values() const noexcept { return values_; }

  /// (1/n) * row sums.
  Vector degrees() const;
  double max_degree() const;

  /// Same kernel on the m-cell partition (m a multiple of n).
  StepGraphon refine(std::size_t m) const;

 private:
  Matrix values_;
};

StepGraphon step_from_adjacency(const Matrix& adjacency);

enum class AnalyticFamily { Constant, SeparableProduct, MinKernel, SmoothCosine };

/// Factor f of a separable kernel W(x,y) = f(x) f(y).
enum class SeparableFactor {
  Linear,    // f(x) = a x
  Constant,  // f(x) = a
  Sine,      // f(x) = a sin(pi x)
};

/// Closed-form kernel on (0,1)^2:
///   Constant(c)           W = c
///   SeparableProduct(f,a) W = f(x) f(y)
///   MinKernel(c)          W = c min(x,y)
///   SmoothCosine(c)       W = c (1 + cos(2 pi (x - y))) / 2
/// Construction checks nonnegativity and the degree bound on a sample grid.
class AnalyticGraphon {
 public:
  static AnalyticGraphon constant(double c);
  static AnalyticGraphon separable(SeparableFactor factor, double scale);
  static AnalyticGraphon min_kernel(double c);
  static AnalyticGraphon smooth_cosine(double c);

  /// Builds from a family name ("constant", "min", "smooth_cosine",
  /// "separable_linear", "separable_constant", "separable_sine") and named
  /// parameters ("c", or "a" for the separable families).
  /// Throws UnknownFamily / InvalidArgument.
  static AnalyticGraphon from_params(std::string_view family,
                                     const std::map<std::string, double>& params);

  AnalyticFamily family() const noexcept { return family_; }
  std::string_view family_name() const noexcept;
  const std::map<std::string, double>& params() const noexcept { return params_; }

  double operator()(double x, double y) const;
  double factor(double x) const;

 private:
  AnalyticGraphon(AnalyticFamily family, std::map<std::string, double> params,
                  SeparableFactor factor = SeparableFactor::Linear);
  void validate() const;

  AnalyticFamily family_;
  std::map<std::string, double> params_;
  SeparableFactor factor_;
  double c_ = 0.0;
};

using GraphonHandle = std::variant<StepGraphon, AnalyticGraphon>;

double evaluate(const GraphonHandle& w, double x, double y);

/// d_W(x) = integral of W(x, y) over y. Exact for step graphons; adaptive-free
/// composite Gauss-Legendre (split at y = x) for analytic ones.
double degree(const GraphonHandle& w, double x);

/// Cell averages n^2 * integral over I_i x I_j, by tensor Gauss-Legendre
/// quadrature (order 10 per cell; the inner integral is split at y = x on
/// diagonal cells so the min kernel's ridge is integrated exactly).
StepGraphon quotient_step(const AnalyticGraphon& w, std::size_t n);

/// Simple graph with edge (i,j), i<j, present independently with
/// probability W at the cell midpoints. Zero diagonal. Throws
/// KernelOutOfUnitRange.
StepGraphon sample_w_random(const GraphonHandle& w, std::size_t n, std::uint64_t seed);

/// Smallest common refinement of partitions n and m, bounded by
/// kMaxCommonRefinement. Throws IncompatibleRepresentations.
std::size_t common_refinement(std::size_t n, std::size_t m);

/// Signed entrywise difference a - b on the common refinement.
Matrix difference(const StepGraphon& a, const StepGraphon& b);

/// Lp norm of a step kernel over (0,1)^2 (each cell has measure 1/n^2).
double kernel_lp_norm(const Matrix& d, Exponent p);
double kernel_mean(const Matrix& d);

struct DistanceOptions {
  /// Analytic kernels are compared through their quotient at a multiple of
  /// the step partition that is at least this fine.
  std::size_t reference_resolution = 256;
};

/// ||G1 - G2||_p. Step-step pairs use exact cell arithmetic on the common
/// refinement; analytic arguments are replaced by their quotient graphon.
double lp_kernel_distance(const GraphonHandle& a, const GraphonHandle& b, Exponent p,
                          const DistanceOptions& options = {});

}  // namespace graphrd
