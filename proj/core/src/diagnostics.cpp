#include "graphrd/diagnostics.hpp"

#include <cmath>

#include "graphrd/diffusion.hpp"
#include "graphrd/error.hpp"
#include "graphrd/output.hpp"

namespace graphrd {

bool matches_birth_death(const ReactionTerm& phi, const RateFamily& birth,
                         const RateFamily& death) {
  if (phi.kind() == ReactionTerm::Kind::BirthDeath && phi.birth() == birth &&
      phi.death() == death) {
    return true;
  }
  // Different parametrizations of the same polynomial (e.g. logistic r = 1
  // against b(x) = x, d(x) = x^2) are accepted when they agree on a grid.
  for (int i = 0; i <= 64; ++i) {
    const double x = 4.0 * i / 64.0;
    const double want = birth(x) - death(x);
    if (std::abs(phi(x) - want) > 1e-12 * (1.0 + std::abs(want))) return false;
  }
  return true;
}

namespace {

void validate(const ParticleTrajectory& traj, const StepGraphon& g, const ReactionTerm& phi,
              double t) {
  if (g.size() != traj.size()) {
    fail(ErrorCode::DimensionMismatch, "graphon has n = " + std::to_string(g.size()) +
                                           ", trajectory has n = " + std::to_string(traj.size()));
  }
  if (!matches_birth_death(phi, traj.birth(), traj.death())) {
    fail(ErrorCode::FamilyMismatch, phi.to_string() + " is not b - d for b = " +
                                        traj.birth().to_string() +
                                        ", d = " + traj.death().to_string());
  }
  if (!(t >= 0.0) || t > traj.end_time()) {
    fail(ErrorCode::TimeOutOfRange, "time " + format_real(t) + " outside [0, " +
                                        format_real(traj.end_time()) + "]");
  }
}

/// Walks the event log over [0, t], calling on_interval(a, b, m) for every
/// maximal interval on which the counts are m, and on_event(e, m_after)
/// after each event.
template <class OnInterval, class OnEvent>
std::vector<Count> walk(const ParticleTrajectory& traj, double t, OnInterval on_interval,
                        OnEvent on_event) {
  std::vector<Count> m = traj.initial().m;
  double last = 0.0;
  for (const auto& e : traj.events()) {
    if (e.time > t) break;
    on_interval(last, e.time, m);
    switch (e.kind) {
      case EventKind::Migrate:
        --m[e.k];
        ++m[e.i];
        break;
      case EventKind::Birth: ++m[e.k]; break;
      case EventKind::Death: --m[e.k]; break;
    }
    on_event(e, m);
    last = e.time;
  }
  on_interval(last, t, m);
  return m;
}

}  // namespace

GridFunction martingale_residual_Z(const ParticleTrajectory& traj, const StepGraphon& g,
                                   const ReactionTerm& phi, double t) {
  validate(traj, g, phi, t);
  const std::size_t n = traj.size();
  const double ell = traj.ell();
  // Phi(X) changes only at nodes touched by an event, so keep it cached.
  std::vector<double> phi_x(n);
  for (std::size_t k = 0; k < n; ++k) phi_x[k] = phi(static_cast<double>(traj.initial().m[k]) / ell);
  Vector int_x = Vector::Zero(static_cast<Eigen::Index>(n));
  Vector int_phi = Vector::Zero(static_cast<Eigen::Index>(n));
  const auto final_m = walk(
      traj, t,
      [&](double a, double b, const std::vector<Count>& m) {
        const double dt = b - a;
        if (dt <= 0.0) return;
        for (std::size_t k = 0; k < n; ++k) {
          int_x(static_cast<Eigen::Index>(k)) += dt * static_cast<double>(m[k]) / ell;
          int_phi(static_cast<Eigen::Index>(k)) += dt * phi_x[k];
        }
      },
      [&](const ParticleEvent& e, const std::vector<Count>& m) {
        phi_x[e.k] = phi(static_cast<double>(m[e.k]) / ell);
        phi_x[e.i] = phi(static_cast<double>(m[e.i]) / ell);
      });
  const Vector drift = build_L_matrix(g) * int_x;
  std::vector<double> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    z[k] = static_cast<double>(final_m[k] - traj.initial().m[k]) / ell - drift(kk) - int_phi(kk);
  }
  return GridFunction(std::move(z));
}

GridFunction stochastic_convolution_Y(const ParticleTrajectory& traj, const StepGraphon& g,
                                      const ReactionTerm& phi, double t) {
  validate(traj, g, phi, t);
  const std::size_t n = traj.size();
  if (n > kSemigroupCap) {
    fail(ErrorCode::SemigroupCapExceeded, "n = " + std::to_string(n) + " exceeds the semigroup cap " +
                                              std::to_string(kSemigroupCap));
  }
  const double ell = traj.ell();
  const SpectralPropagator prop(g);
  const Vector& lambda = prop.eigenvalues();
  const Matrix& v = prop.eigenvectors();
  const auto nn = static_cast<Eigen::Index>(n);

  std::vector<double> phi_x(n);
  Vector phi_vec(nn);
  for (std::size_t k = 0; k < n; ++k) {
    phi_x[k] = phi(static_cast<double>(traj.initial().m[k]) / ell);
    phi_vec(static_cast<Eigen::Index>(k)) = phi_x[k];
  }
  // Modal coordinates of Phi(X), updated by rank-one corrections.
  Vector phi_hat = v.transpose() * phi_vec;
  Vector acc = Vector::Zero(nn);
  auto set_phi = [&](std::size_t k, double value) {
    const double delta = value - phi_x[k];
    if (delta == 0.0) return;
    phi_x[k] = value;
    phi_hat += delta * v.row(static_cast<Eigen::Index>(k)).transpose();
  };

  const auto final_m = walk(
      traj, t,
      [&](double a, double b, const std::vector<Count>&) {
        const double width = b - a;
        if (width <= 0.0) return;
        // int_a^b e^{(t-s) lambda} ds = e^{(t-b) lambda} (e^{width lambda} - 1) / lambda
        for (Eigen::Index j = 0; j < nn; ++j) {
          const double l = lambda(j);
          const double w = l == 0.0 ? width : std::exp((t - b) * l) * std::expm1(width * l) / l;
          acc(j) += w * phi_hat(j);
        }
      },
      [&](const ParticleEvent& e, const std::vector<Count>& m) {
        set_phi(e.k, phi(static_cast<double>(m[e.k]) / ell));
        set_phi(e.i, phi(static_cast<double>(m[e.i]) / ell));
      });

  Vector x0(nn), xt(nn);
  for (std::size_t k = 0; k < n; ++k) {
    x0(static_cast<Eigen::Index>(k)) = static_cast<double>(traj.initial().m[k]) / ell;
    xt(static_cast<Eigen::Index>(k)) = static_cast<double>(final_m[k]) / ell;
  }
  Vector free_modal = v.transpose() * x0;
  for (Eigen::Index j = 0; j < nn; ++j) free_modal(j) *= std::exp(t * lambda(j));
  const Vector y = xt - v * (free_modal + acc);
  return from_vector(y);
}

QuadraticVariation quadratic_variation_check(const ParticleTrajectory& traj, std::size_t node) {
  return quadratic_variation_check(traj, node, traj.end_time());
}

QuadraticVariation quadratic_variation_check(const ParticleTrajectory& traj, std::size_t node,
                                             double t) {
  const std::size_t n = traj.size();
  if (node >= n) fail(ErrorCode::InvalidArgument, "node index out of range");
  if (!(t >= 0.0) || t > traj.end_time()) {
    fail(ErrorCode::TimeOutOfRange, "time " + format_real(t) + " outside [0, " +
                                        format_real(traj.end_time()) + "]");
  }
  const StepGraphon& g = traj.graphon();
  const double ell = traj.ell();
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto& m0 = traj.initial().m;

  // inflow = (1/n) sum_{j != k} W_kj m_j, degree = (1/n) sum_{j != k} W_kj.
  double inflow = 0.0;
  double degree_off = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == node) continue;
    inflow += g(node, j) * inv_n * static_cast<double>(m0[j]);
    degree_off += g(node, j) * inv_n;
  }
  auto node_terms = [&](Count mk) {
    const double x = static_cast<double>(mk) / ell;
    return degree_off * static_cast<double>(mk) + ell * traj.birth()(x) + ell * traj.death()(x);
  };
  double own = node_terms(m0[node]);

  QuadraticVariation qv;
  auto adjust = [&](std::size_t j, double delta) {
    if (j != node) inflow += g(node, j) * inv_n * delta;
  };
  walk(
      traj, t,
      [&](double a, double b, const std::vector<Count>&) {
        if (b > a) qv.compensator += (b - a) * (inflow + own);
      },
      [&](const ParticleEvent& e, const std::vector<Count>& m) {
        switch (e.kind) {
          case EventKind::Migrate:
            adjust(e.k, -1.0);
            adjust(e.i, 1.0);
            break;
          case EventKind::Birth: adjust(e.k, 1.0); break;
          case EventKind::Death: adjust(e.k, -1.0); break;
        }
        if (e.k == node || e.i == node) {
          qv.observed += 1.0;
          own = node_terms(m[node]);
        }
      });
  return qv;
}

Vector generator_apply(const StepGraphon& g, const RateFamily& birth, const RateFamily& death,
                       const std::vector<Count>& m, double ell) {
  const std::size_t n = g.size();
  if (m.size() != n) {
    fail(ErrorCode::DimensionMismatch, "counts have length " + std::to_string(m.size()) +
                                           ", graphon has n = " + std::to_string(n));
  }
  if (!(ell > 0.0)) fail(ErrorCode::InvalidArgument, "ell must be positive");
  const double inv_n = 1.0 / static_cast<double>(n);
  Vector out(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    double flow = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      flow += g(i, j) * static_cast<double>(m[i] - m[j]);
    }
    const double x = static_cast<double>(m[j]) / ell;
    out(static_cast<Eigen::Index>(j)) = inv_n * flow + ell * (birth(x) - death(x));
  }
  return out;
}

}  // namespace graphrd
