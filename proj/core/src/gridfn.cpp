#include "graphrd/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "graphrd/error.hpp"
#include "graphrd/output.hpp"

namespace graphrd {

Exponent::Exponent(double p) : infinite_(false), p_(p) {
  if (std::isnan(p) || p < 1.0) {
    fail(ErrorCode::InvalidExponent, "Lp exponent must lie in [1, inf], got " + format_real(p));
  }
  if (std::isinf(p)) {
    infinite_ = true;
    p_ = 0.0;
  }
}

std::string Exponent::to_string() const { return infinite_ ? "inf" : format_real(p_); }

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return Exponent(kInfinity);
  std::size_t pos = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidExponent, "cannot parse exponent '" + text + "'");
  }
  if (pos != text.size()) fail(ErrorCode::InvalidExponent, "cannot parse exponent '" + text + "'");
  return Exponent(p);
}

std::size_t cell_index(double x, std::size_t n) {
  if (!(x > 0.0 && x < 1.0)) {
    fail(ErrorCode::PointOutOfDomain, "point " + format_real(x) + " is outside (0,1)");
  }
  const double scaled = std::ceil(x * static_cast<double>(n));
  const auto k = static_cast<std::size_t>(std::max(scaled, 1.0)) - 1;
  return std::min(k, n - 1);
}

namespace {

void check_finite(const std::vector<double>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorCode::NonFiniteEntry, "grid function has a non-finite value");
  }
}

void require_same_size(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::DimensionMismatch, "grid functions have sizes " + std::to_string(a.size()) +
                                           " and " + std::to_string(b.size()));
  }
}

}  // namespace

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) fail(ErrorCode::InvalidArgument, "grid function needs n >= 1");
  check_finite(values_);
}

GridFunction::GridFunction(std::size_t n, double value) : values_(n, value) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "grid function needs n >= 1");
  if (!std::isfinite(value)) fail(ErrorCode::NonFiniteEntry, "grid function has a non-finite value");
}

double GridFunction::at(double x) const { return values_[cell_index(x, values_.size())]; }

double lp_norm(const GridFunction& u, Exponent p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : u.values()) m = std::max(m, std::abs(v));
    return m;
  }
  const double n = static_cast<double>(u.size());
  if (p.value() == 1.0) {
    double s = 0.0;
    for (double v : u.values()) s += std::abs(v);
    return s / n;
  }
  if (p.value() == 2.0) {
    double s = 0.0;
    for (double v : u.values()) s += v * v;
    return std::sqrt(s / n);
  }
  // Scale by the max to keep |v|^p representable for large p.
  double scale = 0.0;
  for (double v : u.values()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : u.values()) s += std::pow(std::abs(v) / scale, p.value());
  return scale * std::pow(s / n, 1.0 / p.value());
}

double mean(const GridFunction& u) {
  double s = 0.0;
  for (double v : u.values()) s += v;
  return s / static_cast<double>(u.size());
}

double min_value(const GridFunction& u) {
  return *std::min_element(u.values().begin(), u.values().end());
}

double max_value(const GridFunction& u) {
  return *std::max_element(u.values().begin(), u.values().end());
}

GridFunction refine(const GridFunction& u, std::size_t m) {
  const std::size_t n = u.size();
  if (m == 0 || m % n != 0) {
    fail(ErrorCode::NotAMultiple,
         std::to_string(m) + " is not a positive multiple of " + std::to_string(n));
  }
  const std::size_t r = m / n;
  std::vector<double> out(m);
  for (std::size_t k = 0; k < n; ++k) std::fill_n(out.begin() + k * r, r, u[k]);
  return GridFunction(std::move(out));
}

GridFunction coarsen(const GridFunction& u, std::size_t m) {
  const std::size_t n = u.size();
  if (m == 0 || n % m != 0) {
    fail(ErrorCode::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(n));
  }
  const std::size_t r = n / m;
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < r; ++j) s += u[k * r + j];
    out[k] = s / static_cast<double>(r);
  }
  return GridFunction(std::move(out));
}

GridFunction axpy(double a, const GridFunction& x, const GridFunction& y) {
  require_same_size(x, y);
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = a * x[k] + y[k];
  return GridFunction(std::move(out));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) { return axpy(1.0, a, b); }
GridFunction operator-(const GridFunction& a, const GridFunction& b) { return axpy(-1.0, b, a); }

GridFunction operator*(double s, const GridFunction& a) {
  std::vector<double> out(a.vector());
  for (double& v : out) v *= s;
  return GridFunction(std::move(out));
}

ScalarFunction scalar_function(std::string_view name) {
  if (name == "identity") return [](double x) { return x; };
  if (name == "square") return [](double x) { return x * x; };
  if (name == "cube") return [](double x) { return x * x * x; };
  if (name == "abs") return [](double x) { return std::abs(x); };
  if (name == "negate") return [](double x) { return -x; };
  if (name == "allen_cahn") return [](double x) { return x - x * x * x; };
  if (name == "logistic") return [](double x) { return x * (1.0 - x); };
  fail(ErrorCode::UnknownFamily, "unknown scalar function '" + std::string(name) + "'");
}

GridFunction map_pointwise(const GridFunction& u, const ScalarFunction& f) {
  std::vector<double> out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    out[k] = f(u[k]);
    if (!std::isfinite(out[k])) {
      fail(ErrorCode::NonFiniteResult, "pointwise map produced a non-finite value at cell " +
                                           std::to_string(k));
    }
  }
  return GridFunction(std::move(out));
}

GridFunction map_pointwise(const GridFunction& u, std::string_view name) {
  return map_pointwise(u, scalar_function(name));
}

std::string to_json(const GridFunction& u) {
  nlohmann::json j;
  j["n"] = u.size();
  j["values"] = u.vector();
  return j.dump();
}

GridFunction grid_function_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const auto n = j.at("n").get<std::size_t>();
    auto values = j.at("values").get<std::vector<double>>();
    if (values.size() != n) {
      fail(ErrorCode::DimensionMismatch, "\"n\" does not match the length of \"values\"");
    }
    return GridFunction(std::move(values));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("malformed grid function JSON: ") + e.what());
  }
}

std::string to_csv(const GridFunction& u) {
  std::string out = "value\n";
  for (double v : u.values()) {
    out += format_real(v);
    out += '\n';
  }
  return out;
}

GridFunction grid_function_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ConfigError, "empty grid function CSV");
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    try {
      values.push_back(std::stod(line));
    } catch (const std::exception&) {
      fail(ErrorCode::ConfigError, "bad CSV value '" + line + "'");
    }
  }
  return GridFunction(std::move(values));
}

}  // namespace graphrd
