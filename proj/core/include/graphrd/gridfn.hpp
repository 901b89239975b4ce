#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphrd/exponent.hpp"

namespace graphrd {

/// Index of the cell I_k = ((k-1)/n, k/n] (0-based, last cell open at 1)
/// containing x in (0, 1).
std::size_t cell_index(double x, std::size_t n);

/// Piecewise-constant function on (0,1) over the uniform n-cell partition.
/// Norms use the probability measure on (0,1), so a cell has weight 1/n.
class GridFunction {
 public:
  explicit GridFunction(std::vector<double> values);
  GridFunction(std::initializer_list<double> values) : GridFunction(std::vector<double>(values)) {}
  GridFunction(std::size_t n, double value);

  static GridFunction zeros(std::size_t n) { return GridFunction(n, 0.0); }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  /// Value at a point x in (0,1).
  double at(double x) const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::vector<double> values_;
};

double lp_norm(const GridFunction& u, Exponent p);
double mean(const GridFunction& u);
double min_value(const GridFunction& u);
double max_value(const GridFunction& u);

/// Replicates each value m/n times. Throws NotAMultiple.
GridFunction refine(const GridFunction& u, std::size_t m);
/// Averages blocks of n/m cells. Throws NotADivisor.
GridFunction coarsen(const GridFunction& u, std::size_t m);

/// a*x + y, elementwise. Throws DimensionMismatch.
GridFunction axpy(double a, const GridFunction& x, const GridFunction& y);
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& a);

using ScalarFunction = std::function<double(double)>;

/// Registered pointwise maps: identity, square, cube, abs, negate,
/// allen_cahn (x - x^3), logistic (x(1-x)).
ScalarFunction scalar_function(std::string_view name);
/// Entrywise f(u). Throws NonFiniteResult.
GridFunction map_pointwise(const GridFunction& u, const ScalarFunction& f);
GridFunction map_pointwise(const GridFunction& u, std::string_view name);

std::string to_json(const GridFunction& u);
GridFunction grid_function_from_json(std::string_view text);
/// Single column with header "value".
std::string to_csv(const GridFunction& u);
GridFunction grid_function_from_csv(std::string_view text);

}  // namespace graphrd
