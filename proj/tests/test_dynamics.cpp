#include <doctest.h>

#include <cmath>

#include "graphrd/bounds.hpp"
#include "graphrd/checks.hpp"
#include "graphrd/diffusion.hpp"
#include "graphrd/error.hpp"
#include "graphrd/profiles.hpp"
#include "graphrd/rd_solver.hpp"
#include "graphrd/studies.hpp"
#include "oracles.hpp"

using namespace graphrd;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

StepGraphon complete2() {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  return StepGraphon(a);
}

GridFunction random_u(oracle::Gen& gen, std::size_t n, double lo, double hi) {
  return GridFunction(gen.values(n, lo, hi));
}

double max_diff(const GridFunction& a, const GridFunction& b) { return lp_norm(a - b, kInfinity); }

}  // namespace

TEST_CASE("apply_L examples") {
  const auto g = complete2();
  const auto out = apply_L(g, GridFunction({1.0, 0.0}));
  CHECK(out[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(apply_L(g, GridFunction(2, 3.7)) == GridFunction::zeros(2));
  CHECK(code_of([&] { apply_L(g, GridFunction(3, 1.0)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("property: apply_L matches direct summation and has zero mean") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = gen.size(1, 24);
    const StepGraphon g(gen.kernel(n));
    const auto u = random_u(gen, n, -2.0, 2.0);
    const auto out = apply_L(g, u);
    const auto ref = oracle::apply_l(g.values(), u.vector());
    for (std::size_t k = 0; k < n; ++k) CHECK(out[k] == doctest::Approx(ref[k]).epsilon(1e-12));
    CHECK(std::abs(mean(out)) <= 1e-12);
    for (double p : {1.0, 2.0}) CHECK(lp_norm(out, p) <= 2.0 * lp_norm(u, p) + 1e-12);
    CHECK(lp_norm(out, kInfinity) <= 2.0 * lp_norm(u, kInfinity) + 1e-12);
  }
}

TEST_CASE("L matrix structure") {
  CHECK(build_L_matrix(StepGraphon::zeros(3)) == Matrix::Zero(3, 3));
  oracle::Gen gen(32);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = gen.size(1, 20);
    const Matrix m = build_L_matrix(StepGraphon(gen.kernel(n)));
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(m.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
    const Vector eig = Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues();
    CHECK(eig.maxCoeff() <= 1e-12);
    CHECK(eig.minCoeff() >= -2.0 - 1e-12);
  }
}

TEST_CASE("semigroup examples") {
  const auto g = complete2();
  const GridFunction u0({1.0, 0.0});
  CHECK(semigroup_apply(g, 0.0, u0) == u0);
  const auto u1 = semigroup_apply(g, 1.0, u0);
  CHECK(u1[0] == doctest::Approx(0.6839397206).epsilon(1e-10));
  CHECK(u1[1] == doctest::Approx(0.3160602794).epsilon(1e-10));
  for (double t : {0.1, 0.7, 3.0, 10.0}) {
    const auto u = semigroup_apply(g, t, u0);
    CHECK(std::abs(u[0] - (0.5 + 0.5 * std::exp(-t))) <= 1e-12);
  }
  const GridFunction c(5, 0.3);
  CHECK(max_diff(semigroup_apply(StepGraphon(oracle::Gen(1).kernel(5)), 2.0, c), c) <= 1e-14);
  CHECK(code_of([&] { semigroup_apply(g, -1.0, u0); }) == ErrorCode::NegativeTime);
  CHECK(code_of([] { semigroup_matrix(StepGraphon::zeros(kSemigroupCap + 1), 1.0); }) ==
        ErrorCode::SemigroupCapExceeded);
}

TEST_CASE("property: semigroup composition and spectral propagator agree") {
  oracle::Gen gen(33);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = gen.size(1, 16);
    const StepGraphon g(gen.kernel(n));
    const auto u0 = random_u(gen, n, -1.0, 1.0);
    const double s = gen.real(0.0, 2.0);
    const double t = gen.real(0.0, 2.0);
    const auto composed = semigroup_apply(g, s, semigroup_apply(g, t, u0));
    CHECK(max_diff(composed, semigroup_apply(g, s + t, u0)) <= 1e-10);
    CHECK(max_diff(SpectralPropagator(g).apply(s, u0), semigroup_apply(g, s, u0)) <= 1e-10);
  }
}

TEST_CASE("integrate_rd examples") {
  const auto g = complete2();
  const GridFunction u0({1.0, 0.0});
  const auto sol = integrate_rd(g, ReactionTerm::zero(), u0, 1.0, 1e-3);
  CHECK(sol.times.front() == 0.0);
  CHECK(sol.times.back() == 1.0);
  CHECK(max_diff(sol.final_state(), semigroup_apply(g, 1.0, u0)) <= 1e-10);

  const double expected = 0.2 * std::exp(1.0) / (1.0 + 0.2 * (std::exp(1.0) - 1.0));
  // The often-quoted 0.4046338134 agrees with the closed form to 2.5e-5 only.
  CHECK(std::abs(expected - 0.4046338134) <= 3e-5);
  const StepGraphon rg(oracle::Gen(4).kernel(6));
  const auto logi = integrate_rd(rg, ReactionTerm::logistic(1.0), GridFunction(6, 0.2), 1.0, 1e-3);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(logi.final_state()[k] - expected) <= 1e-10);
  CHECK(std::abs(logi.final_state()[0] - oracle::logistic(0.2, 1.0, 1.0)) <= 1e-10);

  for (const auto& phi : {ReactionTerm::zero(), ReactionTerm::linear(2.0), ReactionTerm::logistic(1.0),
                          ReactionTerm::allen_cahn(),
                          ReactionTerm::birth_death(RateFamily::linear(1.0), RateFamily::quadratic(1.0))}) {
    const auto z = integrate_rd(rg, phi, GridFunction::zeros(6), 1.0, 1e-2);
    CHECK(z.final_state() == GridFunction::zeros(6));
  }
}

TEST_CASE("integrate_rd output times and blow-up") {
  const auto g = complete2();
  const auto times = uniform_times(1.0, 5);
  const auto sol = integrate_rd(g, ReactionTerm::zero(), GridFunction({1.0, 0.0}), 1.0, 0.03, times);
  REQUIRE(sol.times.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(sol.times[i] == times[i]);
    CHECK(max_diff(sol.states[i], semigroup_apply(g, times[i], GridFunction({1.0, 0.0}))) <= 1e-8);
  }
  // du/dt = u + u(1-u) is not blowing up, but linear growth with r=800 overflows quickly.
  bool threw = false;
  try {
    integrate_rd(g, ReactionTerm::linear(800.0), GridFunction({1.0, 1.0}), 2.0, 1e-2);
  } catch (const NonFiniteStateError& e) {
    threw = true;
    CHECK(e.time() > 0.0);
    CHECK(e.time() <= 2.0);
  }
  CHECK(threw);
}

TEST_CASE("rk4 is fourth order on the diffusion problem") {
  const StepGraphon g(oracle::Gen(9).kernel(8));
  const auto u0 = Profile::sine(0.3, 0.5).cell_averages(8);
  CHECK(rk4_order_ratio(g, u0, 1.0, 0.2) >= 12.0);
}

TEST_CASE("mild residual") {
  const StepGraphon g(oracle::Gen(10).kernel(8));
  const auto u0 = Profile::sine(0.3, 0.5).cell_averages(8);

  const auto diffusion = integrate_rd(g, ReactionTerm::zero(), u0, 1.0, 1e-3, uniform_times(1.0, 11));
  CHECK(mild_residual(diffusion, 2.0) <= 1e-10);

  const auto phi = ReactionTerm::logistic(1.0);
  const double coarse = mild_residual(integrate_rd(g, phi, u0, 1.0, 1e-3, uniform_times(1.0, 11)), 2.0);
  const double fine = mild_residual(integrate_rd(g, phi, u0, 1.0, 1e-3, uniform_times(1.0, 21)), 2.0);
  CHECK(coarse / fine >= 3.5);

  // The constant state has zero diffusion: the Duhamel identity reduces to a
  // scalar trapezoid error, which is tiny at this spacing.
  const auto constant = integrate_rd(g, phi, GridFunction(8, 0.2), 1.0, 1e-3, uniform_times(1.0, 1001));
  CHECK(mild_residual(constant, 2.0) <= 1e-8);

  const auto two = integrate_rd(g, phi, u0, 1.0, 1e-3);
  CHECK(code_of([&] { mild_residual(two, 2.0); }) == ErrorCode::InsufficientSamples);
}

TEST_CASE("contraction and mass conservation") {
  oracle::Gen gen(34);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = gen.size(2, 16);
    const StepGraphon g(gen.kernel(n));
    const auto sol = integrate_rd(g, ReactionTerm::zero(), random_u(gen, n, -1.0, 1.0), 1.0, 1e-2,
                                  uniform_times(1.0, 11));
    for (double p : {1.0, 2.0, 3.5}) CHECK(check_contraction(sol, p).worst <= kContractionSlack);
    CHECK(check_contraction(sol, kInfinity).worst <= kContractionSlack);
    CHECK(check_mass_conservation(sol).worst <= kMassSlack);
  }
  const StepGraphon g(gen.kernel(4));
  const auto flat = integrate_rd(g, ReactionTerm::zero(), GridFunction(4, 0.7), 1.0, 1e-2,
                                 uniform_times(1.0, 5));
  CHECK(check_contraction(flat, 2.0).worst <= 0.0);
  CHECK(check_mass_conservation(flat).worst == 0.0);
  const auto reacting = integrate_rd(g, ReactionTerm::logistic(1.0), GridFunction(4, 0.7), 1.0, 1e-2);
  CHECK(code_of([&] { check_contraction(reacting, 2.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("maximum principle") {
  oracle::Gen gen(35);
  const StepGraphon g(gen.kernel(16));
  const auto ac = integrate_rd(g, ReactionTerm::allen_cahn(), random_u(gen, 16, -1.0, 1.0), 2.0, 1e-2,
                               uniform_times(2.0, 21));
  CHECK(check_max_principle(ac).worst <= kMaxPrincipleSlack);
  CHECK(check_max_principle(ac, Interval{-1.0, 1.0}).worst <= kMaxPrincipleSlack);

  const auto eq = integrate_rd(g, ReactionTerm::allen_cahn(), GridFunction(16, 1.0), 1.0, 1e-2,
                               uniform_times(1.0, 11));
  for (const auto& s : eq.states) CHECK(s == GridFunction(16, 1.0));

  const auto lg = integrate_rd(g, ReactionTerm::logistic(1.0), random_u(gen, 16, 0.0, 1.0), 2.0, 1e-2,
                               uniform_times(2.0, 21));
  CHECK(check_max_principle(lg, Interval{0.0, 1.0}).worst <= kMaxPrincipleSlack);

  CHECK(code_of([&] { check_max_principle(lg, Interval{0.0, 0.5}); }) == ErrorCode::InvalidArgument);
  const auto lin = integrate_rd(g, ReactionTerm::linear(1.0), GridFunction(16, 0.1), 1.0, 1e-2);
  CHECK(code_of([&] { check_max_principle(lin); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("p = 2 norm of a sine profile") {
  // cell averages of 0.5 + 0.3 sin(2 pi x) at n = 8, checked against the
  // oracle norm of midpoint-refined averages.
  const auto u = Profile::sine(0.3, 0.5).cell_averages(8);
  std::vector<double> ref(8);
  for (std::size_t k = 0; k < 8; ++k) {
    double s = 0.0;
    for (int q = 0; q < 10000; ++q) {
      s += 0.5 + 0.3 * std::sin(2.0 * std::numbers::pi * ((static_cast<double>(k) + (q + 0.5) / 10000.0) / 8.0));
    }
    ref[k] = s / 10000.0;
  }
  CHECK(lp_norm(u, 2.0) == doctest::Approx(oracle::lp(ref, 2.0)).epsilon(1e-8));
}

TEST_CASE("reaction Lipschitz constants dominate finite differences") {
  oracle::Gen gen(36);
  const std::vector<ReactionTerm> terms = {
      ReactionTerm::zero(), ReactionTerm::linear(-1.5), ReactionTerm::logistic(2.0),
      ReactionTerm::allen_cahn(),
      ReactionTerm::birth_death(RateFamily::linear(1.0), RateFamily::quadratic(1.0))};
  for (const auto& phi : terms) {
    for (int trial = 0; trial < 40; ++trial) {
      const double a = gen.real(-3.0, 3.0);
      const double b = a + gen.real(0.0, 3.0);
      const Interval range{a, b};
      const double lip = phi.lipschitz_on(range);
      for (int s = 0; s < 20; ++s) {
        const double x = gen.real(a, b);
        const double y = gen.real(a, b);
        CHECK(std::abs(phi(x) - phi(y)) <= lip * std::abs(x - y) + 1e-12);
      }
    }
  }
  CHECK(ReactionTerm::allen_cahn().global_lipschitz() == std::nullopt);
  CHECK(ReactionTerm::linear(-1.5).global_lipschitz().value() == 1.5);
}

TEST_CASE("convergence bound examples") {
  const auto w = AnalyticGraphon::smooth_cosine(0.5);
  const auto u0 = Profile::sine(0.3, 0.5).cell_averages(64);
  BoundOptions opts;
  opts.dt = 1e-2;
  opts.output_count = 11;

  const auto self = rd_convergence_bound(w, quotient_step(w, 64), ReactionTerm::logistic(1.0), u0, 1.0,
                                         2.0, opts);
  CHECK(self.lhs <= 1e-6);
  const auto self_inf = linfty_convergence_bound(w, quotient_step(w, 64), ReactionTerm::logistic(1.0), u0,
                                                 1.0, opts);
  CHECK(self_inf.lhs <= 1e-6);

  for (std::size_t n : {4u, 8u}) {
    const auto r = rd_convergence_bound(w, quotient_step(w, n), ReactionTerm::zero(), u0, 1.0, 2.0, opts);
    CHECK(r.passed);
    for (std::size_t i = 0; i < r.times.size(); ++i) CHECK(r.lhs_series[i] <= r.rhs_series[i] + 1e-6);
    CHECK(r.lhs > 0.0);
    // 64 reference cells exceed exhaustive enumeration: heuristic lower bound.
    CHECK(r.advisory);
    CHECK(r.cut_norm_value <= r.l1_distance + 1e-12);
  }

  const auto ac_u0 = Profile::sine(0.9).cell_averages(64);
  for (std::size_t n : {4u, 8u}) {
    const auto r = linfty_convergence_bound(w, quotient_step(w, n), ReactionTerm::allen_cahn(), ac_u0, 1.0,
                                            opts);
    CHECK(r.passed);
    CHECK(r.lhs <= r.rhs + 1e-6);
  }

  CHECK(code_of([&] {
          rd_convergence_bound(w, quotient_step(w, 4), ReactionTerm::zero(), u0, 1.0, kInfinity, opts);
        }) == ErrorCode::InvalidExponent);
  CHECK(code_of([&] {
          rd_convergence_bound(w, quotient_step(w, 5), ReactionTerm::zero(), u0, 1.0, 2.0, opts);
        }) == ErrorCode::NotADivisor);
  BoundOptions strict = opts;
  strict.strict = true;
  CHECK(code_of([&] {
          rd_convergence_bound(w, quotient_step(w, 4), ReactionTerm::zero(), u0, 1.0, 2.0, strict);
        }) == ErrorCode::CutNormUnavailable);
}

TEST_CASE("sup-norm bound against a perturbed constant kernel") {
  const auto w = AnalyticGraphon::constant(0.5);
  Matrix perturbed(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) perturbed(i, j) = (i + j) % 2 == 0 ? 0.6 : 0.4;
  }
  const StepGraphon wn(perturbed);
  // Constant on the coarse cells, so both runs start from the same state.
  const auto u0 = Profile::step(1.0, 0.0, 0.5).cell_averages(16);
  BoundOptions opts;
  opts.dt = 1e-3;
  const double T = 1.0;
  const auto r = linfty_convergence_bound(w, wn, ReactionTerm::zero(), u0, T, opts);
  const double m = lp_norm(u0, kInfinity);
  CHECK(r.kernel_distance == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.initial_error == 0.0);
  CHECK(r.lhs <= 2.0 * T * m * 0.1 + 1e-6);
  CHECK(r.rhs == doctest::Approx(2.0 * T * m * 0.1).epsilon(1e-9));
  CHECK(r.passed);
}
