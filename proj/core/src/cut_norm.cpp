#include "graphrd/cut_norm.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "graphrd/error.hpp"
#include "graphrd/rng.hpp"

namespace graphrd {

namespace {

void require_square(const Matrix& d) {
  if (d.rows() == 0 || d.rows() != d.cols()) {
    fail(ErrorCode::DimensionMismatch, "cut norm needs a non-empty square matrix");
  }
}

void check_limit(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    fail(ErrorCode::BruteForceLimitExceeded, std::string(what) + " brute force limited to n <= " +
                                                 std::to_string(limit) + ", got n = " +
                                                 std::to_string(n));
  }
}

std::vector<std::size_t> members(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) out.push_back(i);
  }
  return out;
}

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

}  // namespace

SubsetCut cut_norm_exact(const Matrix& d, CutVariant variant, const CutNormLimits& limits) {
  require_square(d);
  const std::size_t n = static_cast<std::size_t>(d.rows());
  check_limit(n, variant == CutVariant::ST ? limits.st : limits.s_complement,
              variant == CutVariant::ST ? "ST cut norm" : "S-complement cut norm");
  const double scale = 1.0 / static_cast<double>(n * n);

  // col[j] = sum_{i in S} D_ij, maintained under single-element toggles.
  Vector col = Vector::Zero(d.cols());
  std::uint64_t best_s = 0, best_t = 0;
  double best = 0.0;
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;

  for (std::uint64_t step = 0; step < count; ++step) {
    if (step > 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(step));
      gray ^= std::uint64_t{1} << bit;
      if (gray >> bit & 1U) {
        col += d.row(static_cast<Eigen::Index>(bit)).transpose();
      } else {
        col -= d.row(static_cast<Eigen::Index>(bit)).transpose();
      }
    }
    if (variant == CutVariant::ST) {
      double pos = 0.0, neg = 0.0;
      std::uint64_t t_pos = 0, t_neg = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const double c = col(static_cast<Eigen::Index>(j));
        if (c > 0.0) {
          pos += c;
          t_pos |= std::uint64_t{1} << j;
        } else if (c < 0.0) {
          neg -= c;
          t_neg |= std::uint64_t{1} << j;
        }
      }
      if (pos > best) {
        best = pos;
        best_s = gray;
        best_t = t_pos;
      }
      if (neg > best) {
        best = neg;
        best_s = gray;
        best_t = t_neg;
      }
    } else {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(gray >> j & 1U)) v += col(static_cast<Eigen::Index>(j));
      }
      if (v > best) {
        best = v;
        best_s = gray;
      }
    }
  }

  SubsetCut out;
  out.value = best * scale;
  out.s = members(best_s, n);
  out.t = variant == CutVariant::ST ? members(best_t, n) : members(~best_s & (count - 1), n);
  if (best == 0.0) {
    out.s.clear();
    out.t.clear();
  }
  return out;
}

SignCut cut_norm_bilinear_exact(const Matrix& d, const CutNormLimits& limits) {
  require_square(d);
  const std::size_t n = static_cast<std::size_t>(d.rows());
  check_limit(n, limits.bilinear, "bilinear cut norm");
  const double scale = 1.0 / static_cast<double>(n * n);

  // phi starts at all +1; col = D^T phi. phi and -phi give the same value,
  // so the last coordinate stays fixed.
  std::vector<int> phi(n, 1);
  Vector col = d.colwise().sum().transpose();
  std::vector<int> best_phi = phi;
  double best = col.cwiseAbs().sum();
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t step = 1; step < count; ++step) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(step));
    gray ^= std::uint64_t{1} << bit;
    col -= 2.0 * phi[bit] * d.row(static_cast<Eigen::Index>(bit)).transpose();
    phi[bit] = -phi[bit];
    const double v = col.cwiseAbs().sum();
    if (v > best) {
      best = v;
      best_phi = phi;
    }
  }
  SignCut out;
  out.phi = best_phi;
  out.psi.resize(n);
  Vector best_col = Vector::Zero(d.cols());
  for (std::size_t i = 0; i < n; ++i) {
    best_col += best_phi[i] * d.row(static_cast<Eigen::Index>(i)).transpose();
  }
  for (std::size_t j = 0; j < n; ++j) out.psi[j] = sign_of(best_col(static_cast<Eigen::Index>(j)));
  out.value = best * scale;
  return out;
}

double bilinear_value(const Matrix& d, const std::vector<int>& phi, const std::vector<int>& psi) {
  const std::size_t n = static_cast<std::size_t>(d.rows());
  if (phi.size() != n || psi.size() != n) {
    fail(ErrorCode::DimensionMismatch, "sign vectors do not match the kernel size");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * psi[j];
    }
    s += phi[i] * row;
  }
  return s / static_cast<double>(n * n);
}

SignCut cut_norm_heuristic(const Matrix& d, int restarts, std::uint64_t seed) {
  require_square(d);
  if (restarts < 1) fail(ErrorCode::InvalidArgument, "heuristic needs restarts >= 1");
  const auto n = d.rows();
  const double scale = 1.0 / static_cast<double>(n * n);
  Rng rng(seed);

  SignCut best;
  best.phi.assign(static_cast<std::size_t>(n), 1);
  best.psi.assign(static_cast<std::size_t>(n), 1);
  best.value = d.sum() * scale;

  Vector phi(n), psi(n);
  for (int round = 0; round < restarts; ++round) {
    if (round == 0) {
      Eigen::Index heavy = 0;
      d.cwiseAbs().rowwise().sum().maxCoeff(&heavy);
      for (Eigen::Index j = 0; j < n; ++j) psi(j) = sign_of(d(heavy, j));
    } else {
      for (Eigen::Index j = 0; j < n; ++j) psi(j) = rng.bernoulli(0.5) ? 1.0 : -1.0;
    }
    double value = -std::numeric_limits<double>::infinity();
    // Each half-step cannot decrease phi^T D psi, and the sign space is
    // finite, so this terminates; the cap guards against float ties.
    for (int iter = 0; iter < 1000; ++iter) {
      const Vector row = d * psi;
      for (Eigen::Index i = 0; i < n; ++i) phi(i) = sign_of(row(i));
      const Vector col = d.transpose() * phi;
      for (Eigen::Index j = 0; j < n; ++j) psi(j) = sign_of(col(j));
      const double next = col.cwiseAbs().sum();
      const bool improved = next > value;
      value = next;
      if (!improved) break;
    }
    if (value * scale > best.value) {
      best.value = value * scale;
      for (Eigen::Index i = 0; i < n; ++i) {
        best.phi[static_cast<std::size_t>(i)] = static_cast<int>(phi(i));
        best.psi[static_cast<std::size_t>(i)] = static_cast<int>(psi(i));
      }
    }
  }
  return best;
}

}  // namespace graphrd
