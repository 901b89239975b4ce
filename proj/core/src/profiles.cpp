#include "graphrd/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "graphrd/error.hpp"
#include "graphrd/output.hpp"

namespace graphrd {

Profile Profile::step(double a, double b, double split) {
  if (!(split >= 0.0 && split <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "step split must lie in [0, 1]");
  }
  return Profile(Kind::Step, a, b, split);
}

double Profile::operator()(double x) const noexcept {
  switch (kind_) {
    case Kind::Constant: return p0_;
    case Kind::Step: return x < p2_ ? p0_ : p1_;
    case Kind::Sine: return p1_ + p0_ * std::sin(2.0 * std::numbers::pi * x);
  }
  return 0.0;
}

GridFunction Profile::cell_averages(std::size_t n) const {
  if (n == 0) fail(ErrorCode::InvalidArgument, "partition size must be positive");
  std::vector<double> values(n);
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = static_cast<double>(k) / nn;
    const double hi = static_cast<double>(k + 1) / nn;
    switch (kind_) {
      case Kind::Constant: values[k] = p0_; break;
      case Kind::Step: {
        const double left = std::clamp(p2_, lo, hi) - lo;
        values[k] = (p0_ * left + p1_ * (hi - lo - left)) * nn;
        break;
      }
      case Kind::Sine: {
        const double w = 2.0 * std::numbers::pi;
        values[k] = p1_ + p0_ * (std::cos(w * lo) - std::cos(w * hi)) / w * nn;
        break;
      }
    }
  }
  return GridFunction(std::move(values));
}

double Profile::sup() const noexcept {
  switch (kind_) {
    case Kind::Constant: return p0_;
    case Kind::Step: return std::max(p0_, p1_);
    case Kind::Sine: return p1_ + std::abs(p0_);
  }
  return 0.0;
}

double Profile::inf() const noexcept {
  switch (kind_) {
    case Kind::Constant: return p0_;
    case Kind::Step: return std::min(p0_, p1_);
    case Kind::Sine: return p1_ - std::abs(p0_);
  }
  return 0.0;
}

std::string Profile::to_string() const {
  switch (kind_) {
    case Kind::Constant: return "constant(" + format_real(p0_) + ")";
    case Kind::Step:
      return "step(" + format_real(p0_) + "," + format_real(p1_) + "," + format_real(p2_) + ")";
    case Kind::Sine: return "sine(" + format_real(p0_) + "," + format_real(p1_) + ")";
  }
  return {};
}

Profile parse_profile(std::string_view text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
      close + 1 != text.size()) {
    fail(ErrorCode::InvalidArgument, "profile must look like name(args), got '" +
                                         std::string(text) + "'");
  }
  const std::string_view name = text.substr(0, open);
  std::vector<double> args;
  std::string_view rest = text.substr(open + 1, close - open - 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument, "bad profile argument '" + std::string(item) + "'");
    }
    args.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      fail(ErrorCode::InvalidArgument, "profile " + std::string(name) + " takes " +
                                           std::to_string(lo) +
                                           (lo == hi ? "" : "-" + std::to_string(hi)) +
                                           " arguments");
    }
  };
  if (name == "constant") {
    need(1, 1);
    return Profile::constant(args[0]);
  }
  if (name == "step") {
    need(3, 3);
    return Profile::step(args[0], args[1], args[2]);
  }
  if (name == "sine") {
    need(1, 2);
    return Profile::sine(args[0], args.size() > 1 ? args[1] : 0.0);
  }
  fail(ErrorCode::InvalidArgument, "unknown profile '" + std::string(name) +
                                       "' (expected constant, step or sine)");
}

std::vector<Count> counts_from_density(const GridFunction& u, double ell) {
  if (!(ell > 0.0)) fail(ErrorCode::InvalidArgument, "ell must be positive");
  std::vector<Count> m(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] < 0.0) fail(ErrorCode::InvalidArgument, "densities must be nonnegative for counts");
    m[k] = static_cast<Count>(std::llround(ell * u[k]));
  }
  return m;
}

}  // namespace graphrd
