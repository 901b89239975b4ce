#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "graphrd/gridfn.hpp"
#include "graphrd/particles.hpp"

namespace graphrd {

/// Named initial profile on (0,1):
///   constant(c)          c
///   step(a, b, split)    a for x < split, b for x >= split
///   sine(c[, offset])    offset + c sin(2 pi x)
class Profile {
 public:
  enum class Kind { Constant, Step, Sine };

  static Profile constant(double c) { return Profile(Kind::Constant, c, 0.0, 0.0); }
  static Profile step(double a, double b, double split);
  static Profile sine(double c, double offset = 0.0) { return Profile(Kind::Sine, c, offset, 0.0); }

  Kind kind() const noexcept { return kind_; }
  double operator()(double x) const noexcept;
  /// Exact average over each of the n cells.
  GridFunction cell_averages(std::size_t n) const;
  double sup() const noexcept;
  double inf() const noexcept;
  std::string to_string() const;

 private:
  Profile(Kind kind, double p0, double p1, double p2) : kind_(kind), p0_(p0), p1_(p1), p2_(p2) {}
  Kind kind_;
  double p0_, p1_, p2_;
};

/// Parses "constant(0.2)", "step(0,1,0.5)", "sine(0.9)", "sine(0.3,0.5)".
/// Throws InvalidArgument.
Profile parse_profile(std::string_view text);

/// m_k = round(ell * u_k). Throws InvalidArgument for negative values.
std::vector<Count> counts_from_density(const GridFunction& u, double ell);

}  // namespace graphrd
