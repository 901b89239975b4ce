#include "graphrd/rd_solver.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "graphrd/diffusion.hpp"
#include "graphrd/error.hpp"
#include "graphrd/kernel_io.hpp"
#include "graphrd/output.hpp"

namespace graphrd {

std::vector<double> uniform_times(double T, std::size_t count) {
  if (count < 2) fail(ErrorCode::InvalidArgument, "need at least two output times");
  if (!(T > 0.0)) fail(ErrorCode::InvalidArgument, "horizon must be positive");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = T * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = T;
  return out;
}

namespace {

struct Rhs {
  const Matrix& m;
  const ReactionTerm& phi;

  Vector operator()(const Vector& u) const {
    Vector out = m * u;
    if (!phi.is_zero()) {
      for (Eigen::Index k = 0; k < u.size(); ++k) out(k) += phi(u(k));
    }
    return out;
  }
};

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace

RdSolution integrate_rd(const StepGraphon& g, const ReactionTerm& phi, const GridFunction& u0,
                        double T, double dt, std::vector<double> output_times) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(T >= 0.0)) fail(ErrorCode::NegativeTime, "horizon must be nonnegative");
  if (u0.size() != g.size()) {
    fail(ErrorCode::DimensionMismatch, "initial state has n = " + std::to_string(u0.size()) +
                                           ", graphon has n = " + std::to_string(g.size()));
  }
  if (output_times.empty()) output_times = T > 0.0 ? std::vector<double>{0.0, T} : std::vector<double>{0.0};
  if (output_times.front() != 0.0) output_times.insert(output_times.begin(), 0.0);
  for (std::size_t i = 1; i < output_times.size(); ++i) {
    if (!(output_times[i] > output_times[i - 1])) {
      fail(ErrorCode::InvalidArgument, "output times must be strictly increasing");
    }
  }
  if (output_times.back() > T) fail(ErrorCode::InvalidArgument, "output time beyond the horizon");

  const Matrix m = build_L_matrix(g);
  const Rhs f{m, phi};
  RdSolution sol{{}, {}, g, phi, dt};
  sol.times = output_times;
  sol.states.reserve(output_times.size());
  sol.states.push_back(u0);

  Vector u = to_vector(u0);
  double t = 0.0;
  for (std::size_t i = 1; i < output_times.size(); ++i) {
    const double target = output_times[i];
    while (t < target) {
      // Absorb a trailing sliver into the final step instead of taking a
      // vanishing one.
      double h = dt;
      if (t + h >= target - 1e-12 * std::max(1.0, target)) h = target - t;
      const Vector k1 = f(u);
      const Vector k2 = f(u + 0.5 * h * k1);
      const Vector k3 = f(u + 0.5 * h * k2);
      const Vector k4 = f(u + h * k3);
      u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = (h == target - t) ? target : t + h;
      if (!all_finite(u)) {
        throw NonFiniteStateError(t, "state became non-finite at t = " + format_real(t));
      }
    }
    t = target;
    sol.states.push_back(from_vector(u));
  }
  return sol;
}

double mild_residual(const RdSolution& sol, Exponent p) {
  const std::size_t count = sol.times.size();
  if (count < 3) fail(ErrorCode::InsufficientSamples, "mild residual needs >= 3 output times");
  const double h = sol.times[1] - sol.times[0];
  for (std::size_t i = 1; i < count; ++i) {
    const double gap = sol.times[i] - sol.times[i - 1];
    if (std::abs(gap - h) > 1e-9 * std::max(1.0, h)) {
      fail(ErrorCode::InsufficientSamples, "mild residual needs uniformly spaced output times");
    }
  }
  const Matrix step = semigroup_matrix(sol.graphon, h);
  auto reaction_of = [&](const GridFunction& u) {
    Vector r(static_cast<Eigen::Index>(u.size()));
    for (std::size_t k = 0; k < u.size(); ++k) r(static_cast<Eigen::Index>(k)) = sol.reaction(u[k]);
    return r;
  };

  // free = e^{t_i M} u0; acc = sum_{j<=i} e^{(t_i - t_j) M} Phi(u_j);
  // head = e^{t_i M} Phi(u_0). Trapezoid: h (acc - head/2 - Phi(u_i)/2).
  Vector free = to_vector(sol.initial());
  const Vector phi0 = reaction_of(sol.initial());
  Vector acc = phi0;
  Vector head = phi0;
  double worst = 0.0;
  for (std::size_t i = 1; i < count; ++i) {
    free = step * free;
    head = step * head;
    const Vector phi_i = reaction_of(sol.states[i]);
    acc = step * acc + phi_i;
    const Vector integral = h * (acc - 0.5 * head - 0.5 * phi_i);
    const Vector residual = to_vector(sol.states[i]) - free - integral;
    worst = std::max(worst, lp_norm(from_vector(residual), p));
  }
  return worst;
}

std::string to_csv(const RdSolution& sol) {
  std::string out = "t";
  const std::size_t n = sol.graphon.size();
  for (std::size_t k = 0; k < n; ++k) out += ",cell_" + std::to_string(k);
  out += '\n';
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    out += format_real(sol.times[i]);
    for (double v : sol.states[i].values()) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const RdSolution& sol) {
  nlohmann::json j;
  j["config"] = {
      {"n", sol.graphon.size()},
      {"reaction", sol.reaction.to_string()},
      {"dt", sol.dt},
      {"kernel", nlohmann::json::parse(to_json(GraphonHandle(sol.graphon)))},
  };
  j["times"] = sol.times;
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : sol.states) states.push_back(s.vector());
  j["states"] = states;
  return j.dump();
}

}  // namespace graphrd
