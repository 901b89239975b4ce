#include "graphrd/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "graphrd/error.hpp"
#include "graphrd/gridfn.hpp"
#include "graphrd/output.hpp"
#include "graphrd/rng.hpp"

namespace graphrd {

namespace {

using boost::math::quadrature::gauss;

constexpr std::size_t kValidationGrid = 33;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

/// Integral of g over [a, b] by composite 20-point Gauss-Legendre.
template <class F>
double composite_gauss(F&& g, double a, double b, int panels) {
  if (b <= a) return 0.0;
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int k = 0; k < panels; ++k) {
    s += gauss<double, 20>::integrate(g, a + k * h, a + (k + 1) * h);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// StepGraphon

StepGraphon::StepGraphon(Matrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.rows() != values_.cols()) {
    fail(ErrorCode::InvalidArgument, "step graphon needs a non-empty square matrix");
  }
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v)) {
        fail(ErrorCode::NonFiniteEntry, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") is not finite");
      }
      if (v < 0.0) {
        fail(ErrorCode::NegativeEntry, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                           ") = " + format_real(v) + " is negative");
      }
      if (std::abs(v - (*this)(j, i)) > kSymmetryTolerance) {
        fail(ErrorCode::AsymmetricInput, "entries (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") and its transpose differ");
      }
    }
  }
  // Store an exactly symmetric matrix.
  values_ = 0.5 * (values_ + values_.transpose()).eval();
  const Vector d = degrees();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) > 1.0 + kDegreeTolerance) {
      fail(ErrorCode::DegreeBoundViolated, "degree of cell " + std::to_string(i) + " is " +
                                               format_real(d(i)) + " > 1");
    }
  }
}

StepGraphon StepGraphon::zeros(std::size_t n) { return StepGraphon(Matrix::Zero(idx(n), idx(n))); }

double StepGraphon::evaluate(double x, double y) const {
  const std::size_t n = size();
  return (*this)(cell_index(x, n), cell_index(y, n));
}

Vector StepGraphon::degrees() const {
  return values_.rowwise().sum() / static_cast<double>(size());
}

double StepGraphon::max_degree() const { return degrees().maxCoeff(); }

StepGraphon StepGraphon::refine(std::size_t m) const {
  const std::size_t n = size();
  if (m == 0 || m % n != 0) {
    fail(ErrorCode::NotAMultiple,
         std::to_string(m) + " is not a positive multiple of " + std::to_string(n));
  }
  if (m == n) return *this;
  const std::size_t r = m / n;
  Matrix out(idx(m), idx(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out(idx(i), idx(j)) = (*this)(i / r, j / r);
  }
  return StepGraphon(std::move(out));
}

StepGraphon step_from_adjacency(const Matrix& adjacency) { return StepGraphon(adjacency); }

// ---------------------------------------------------------------------------
// AnalyticGraphon

AnalyticGraphon::AnalyticGraphon(AnalyticFamily family, std::map<std::string, double> params,
                                 SeparableFactor factor)
    : family_(family), params_(std::move(params)), factor_(factor) {
  const auto it = params_.count("c") ? params_.find("c") : params_.find("a");
  if (it == params_.end() || !std::isfinite(it->second)) {
    fail(ErrorCode::InvalidArgument, "analytic graphon parameter missing or not finite");
  }
  c_ = it->second;
  validate();
}

AnalyticGraphon AnalyticGraphon::constant(double c) {
  return AnalyticGraphon(AnalyticFamily::Constant, {{"c", c}});
}

AnalyticGraphon AnalyticGraphon::separable(SeparableFactor factor, double scale) {
  return AnalyticGraphon(AnalyticFamily::SeparableProduct, {{"a", scale}}, factor);
}

AnalyticGraphon AnalyticGraphon::min_kernel(double c) {
  return AnalyticGraphon(AnalyticFamily::MinKernel, {{"c", c}});
}

AnalyticGraphon AnalyticGraphon::smooth_cosine(double c) {
  return AnalyticGraphon(AnalyticFamily::SmoothCosine, {{"c", c}});
}

AnalyticGraphon AnalyticGraphon::from_params(std::string_view family,
                                             const std::map<std::string, double>& params) {
  auto get = [&](const char* key) {
    const auto it = params.find(key);
    if (it == params.end()) {
      fail(ErrorCode::InvalidArgument,
           "family '" + std::string(family) + "' needs parameter '" + key + "'");
    }
    return it->second;
  };
  if (family == "constant") return constant(get("c"));
  if (family == "min") return min_kernel(get("c"));
  if (family == "smooth_cosine") return smooth_cosine(get("c"));
  if (family == "separable_linear") return separable(SeparableFactor::Linear, get("a"));
  if (family == "separable_constant") return separable(SeparableFactor::Constant, get("a"));
  if (family == "separable_sine") return separable(SeparableFactor::Sine, get("a"));
  fail(ErrorCode::UnknownFamily, "unknown graphon family '" + std::string(family) + "'");
}

std::string_view AnalyticGraphon::family_name() const noexcept {
  switch (family_) {
    case AnalyticFamily::Constant: return "constant";
    case AnalyticFamily::MinKernel: return "min";
    case AnalyticFamily::SmoothCosine: return "smooth_cosine";
    case AnalyticFamily::SeparableProduct:
      switch (factor_) {
        case SeparableFactor::Linear: return "separable_linear";
        case SeparableFactor::Constant: return "separable_constant";
        case SeparableFactor::Sine: return "separable_sine";
      }
  }
  return "unknown";
}

double AnalyticGraphon::factor(double x) const {
  switch (factor_) {
    case SeparableFactor::Linear: return c_ * x;
    case SeparableFactor::Constant: return c_;
    case SeparableFactor::Sine: return c_ * std::sin(std::numbers::pi * x);
  }
  return 0.0;
}

double AnalyticGraphon::operator()(double x, double y) const {
  switch (family_) {
    case AnalyticFamily::Constant: return c_;
    case AnalyticFamily::SeparableProduct: return factor(x) * factor(y);
    case AnalyticFamily::MinKernel: return c_ * std::min(x, y);
    case AnalyticFamily::SmoothCosine:
      return 0.5 * c_ * (1.0 + std::cos(2.0 * std::numbers::pi * (x - y)));
  }
  return 0.0;
}

void AnalyticGraphon::validate() const {
  if (family_ != AnalyticFamily::SeparableProduct && c_ < 0.0) {
    fail(ErrorCode::NegativeEntry, "graphon parameter c must be nonnegative");
  }
  const GraphonHandle self = *this;
  for (std::size_t i = 0; i <= kValidationGrid; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / (kValidationGrid + 1);
    for (std::size_t j = 0; j <= kValidationGrid; ++j) {
      const double y = (static_cast<double>(j) + 0.5) / (kValidationGrid + 1);
      const double v = (*this)(x, y);
      if (!std::isfinite(v)) fail(ErrorCode::NonFiniteEntry, "kernel is not finite");
      if (v < 0.0) fail(ErrorCode::NegativeEntry, "kernel is negative at a sample point");
    }
    const double d = degree(self, x);
    if (d > 1.0 + kDegreeTolerance) {
      fail(ErrorCode::DegreeBoundViolated,
           "degree at x = " + format_real(x) + " is " + format_real(d) + " > 1");
    }
  }
  // Degrees of the registered families are maximal at the right edge.
  const double d_edge = degree(self, 1.0 - 1e-12);
  if (d_edge > 1.0 + kDegreeTolerance) {
    fail(ErrorCode::DegreeBoundViolated, "degree near x = 1 is " + format_real(d_edge) + " > 1");
  }
}

// ---------------------------------------------------------------------------
// Free functions

double evaluate(const GraphonHandle& w, double x, double y) {
  if (const auto* step = std::get_if<StepGraphon>(&w)) return step->evaluate(x, y);
  return std::get<AnalyticGraphon>(w)(x, y);
}

double degree(const GraphonHandle& w, double x) {
  if (!(x > 0.0 && x < 1.0)) {
    fail(ErrorCode::PointOutOfDomain, "point " + format_real(x) + " is outside (0,1)");
  }
  if (const auto* step = std::get_if<StepGraphon>(&w)) {
    const std::size_t n = step->size();
    const std::size_t k = cell_index(x, n);
    return step->values().row(idx(k)).sum() / static_cast<double>(n);
  }
  const auto& g = std::get<AnalyticGraphon>(w);
  auto row = [&](double y) { return g(x, y); };
  // Split at the diagonal where the min kernel has its ridge.
  return composite_gauss(row, 0.0, x, 4) + composite_gauss(row, x, 1.0, 4);
}

StepGraphon quotient_step(const AnalyticGraphon& w, std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "quotient needs n >= 1");
  const double h = 1.0 / static_cast<double>(n);
  Matrix out(idx(n), idx(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double xa = i * h, xb = (i + 1) * h;
    for (std::size_t j = i; j < n; ++j) {
      const double ya = j * h, yb = (j + 1) * h;
      auto inner = [&](double x) {
        auto f = [&](double y) { return w(x, y); };
        if (x > ya && x < yb) {
          return gauss<double, 10>::integrate(f, ya, x) + gauss<double, 10>::integrate(f, x, yb);
        }
        return gauss<double, 10>::integrate(f, ya, yb);
      };
      const double integral = gauss<double, 10>::integrate(inner, xa, xb);
      const double avg = integral / (h * h);
      if (!std::isfinite(avg)) {
        fail(ErrorCode::QuadratureFailure, "non-finite kernel value in cell (" +
                                               std::to_string(i) + "," + std::to_string(j) + ")");
      }
      out(idx(i), idx(j)) = avg;
      out(idx(j), idx(i)) = avg;
    }
  }
  return StepGraphon(std::move(out));
}

StepGraphon sample_w_random(const GraphonHandle& w, std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "sample needs n >= 1");
  const double dn = static_cast<double>(n);
  Matrix p(idx(n), idx(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = evaluate(w, (i + 0.5) / dn, (j + 0.5) / dn);
      if (!(v >= 0.0 && v <= 1.0)) {
        fail(ErrorCode::KernelOutOfUnitRange,
             "kernel value " + format_real(v) + " at a cell midpoint lies outside [0,1]");
      }
      p(idx(i), idx(j)) = v;
    }
  }
  Rng rng(seed);
  Matrix a = Matrix::Zero(idx(n), idx(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double edge = rng.bernoulli(p(idx(i), idx(j))) ? 1.0 : 0.0;
      a(idx(i), idx(j)) = edge;
      a(idx(j), idx(i)) = edge;
    }
  }
  return StepGraphon(std::move(a));
}

std::size_t common_refinement(std::size_t n, std::size_t m) {
  const std::size_t l = std::lcm(n, m);
  if (l > kMaxCommonRefinement) {
    fail(ErrorCode::IncompatibleRepresentations,
         "common refinement of " + std::to_string(n) + " and " + std::to_string(m) + " is " +
             std::to_string(l) + " > " + std::to_string(kMaxCommonRefinement));
  }
  return l;
}

Matrix difference(const StepGraphon& a, const StepGraphon& b) {
  const std::size_t m = common_refinement(a.size(), b.size());
  return a.refine(m).values() - b.refine(m).values();
}

double kernel_lp_norm(const Matrix& d, Exponent p) {
  if (p.is_infinite()) return d.cwiseAbs().maxCoeff();
  const double cells = static_cast<double>(d.size());
  if (p.value() == 1.0) return d.cwiseAbs().sum() / cells;
  if (p.value() == 2.0) return std::sqrt(d.squaredNorm() / cells);
  const double scale = d.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double s = (d.cwiseAbs() / scale).array().pow(p.value()).sum();
  return scale * std::pow(s / cells, 1.0 / p.value());
}

double kernel_mean(const Matrix& d) { return d.sum() / static_cast<double>(d.size()); }

namespace {

StepGraphon as_step(const GraphonHandle& g, std::size_t partner_n, const DistanceOptions& opt) {
  if (const auto* step = std::get_if<StepGraphon>(&g)) return *step;
  const std::size_t base = std::max<std::size_t>(partner_n, 1);
  const std::size_t mult = (std::max(opt.reference_resolution, base) + base - 1) / base;
  return quotient_step(std::get<AnalyticGraphon>(g), base * mult);
}

}  // namespace

double lp_kernel_distance(const GraphonHandle& a, const GraphonHandle& b, Exponent p,
                          const DistanceOptions& options) {
  const auto* sb = std::get_if<StepGraphon>(&b);
  const StepGraphon qa = as_step(a, sb ? sb->size() : 1, options);
  const StepGraphon qb = as_step(b, qa.size(), options);
  return kernel_lp_norm(difference(qa, qb), p);
}

}  // namespace graphrd
