#include <doctest.h>

#include <cmath>
#include <numbers>

#include "graphrd/cut_norm.hpp"
#include "graphrd/error.hpp"
#include "graphrd/kernel.hpp"
#include "graphrd/kernel_io.hpp"
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

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("4-cycle adjacency gives the checkerboard step graphon of the figure") {
  const auto g = step_from_adjacency(mat({{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}}));
  // Black unit squares of the figure in its drawing coordinates: the square
  // (c, r)-(c+1, r+1) covers x in I_{c+1} and row 4 - r.
  const int black[8][2] = {{1, 3}, {0, 2}, {3, 3}, {2, 2}, {1, 1}, {3, 1}, {0, 0}, {2, 0}};
  Matrix expected = Matrix::Zero(4, 4);
  for (const auto& sq : black) expected(3 - sq[1], sq[0]) = 1.0;
  CHECK(g.values() == expected);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(g.evaluate((i + 0.5) / 4.0, (j + 0.5) / 4.0) == expected(i, j));
    }
  }
}

TEST_CASE("step_from_adjacency validation") {
  CHECK(step_from_adjacency(Matrix::Zero(3, 3)).values() == Matrix::Zero(3, 3));
  CHECK_NOTHROW(step_from_adjacency(mat({{0, 2}, {2, 0}})));
  CHECK(code_of([] { step_from_adjacency(mat({{0, 3}, {3, 0}})); }) ==
        ErrorCode::DegreeBoundViolated);
  CHECK(code_of([] { step_from_adjacency(mat({{0, 1}, {0.5, 0}})); }) == ErrorCode::AsymmetricInput);
  CHECK(code_of([] { step_from_adjacency(mat({{0, -1}, {-1, 0}})); }) == ErrorCode::NegativeEntry);
  CHECK(code_of([] { step_from_adjacency(mat({{0, NAN}, {NAN, 0}})); }) ==
        ErrorCode::NonFiniteEntry);
}

TEST_CASE("quotient of a constant kernel is constant") {
  const auto q = quotient_step(AnalyticGraphon::constant(0.5), 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(q(i, j) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("quotient of the smooth cosine kernel matches a Riemann-sum oracle") {
  const auto w = AnalyticGraphon::smooth_cosine(0.5);
  const auto q = quotient_step(w, 2);
  auto fn = [](double x, double y) {
    return 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * (x - y))) / 2.0;
  };
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      // 1000 x 1000 = 10^6 midpoint samples per cell.
      const double ref = oracle::riemann_cell(fn, 2, i, j, 1000);
      CHECK(q(i, j) == doctest::Approx(ref).epsilon(1e-6));
    }
  }
  // Closed form: 0.25 + 0.25 * (2/pi)^2 * (+1 on the diagonal, -1 off it).
  const double s = 0.25 * std::pow(2.0 / std::numbers::pi, 2);
  CHECK(q(0, 0) == doctest::Approx(0.25 + s).epsilon(1e-12));
  CHECK(q(0, 1) == doctest::Approx(0.25 - s).epsilon(1e-12));
}

TEST_CASE("quotient of the min kernel at n = 1 is 1/3") {
  const auto q = quotient_step(AnalyticGraphon::min_kernel(1.0), 1);
  CHECK(q(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  // Monte Carlo cross-check of the double integral.
  oracle::Gen gen(5);
  double sum = 0.0;
  const int samples = 400000;
  for (int s = 0; s < samples; ++s) sum += std::min(gen.real(0, 1), gen.real(0, 1));
  CHECK(std::abs(sum / samples - q(0, 0)) < 4.0 * std::sqrt(1.0 / 18.0 / samples));
  // Ridge handled on diagonal cells at larger n too.
  const auto q4 = quotient_step(AnalyticGraphon::min_kernel(1.0), 4);
  auto fn = [](double x, double y) { return std::min(x, y); };
  CHECK(q4(1, 1) == doctest::Approx(oracle::riemann_cell(fn, 4, 1, 1, 1000)).epsilon(1e-6));
}

TEST_CASE("analytic kernel validation") {
  CHECK(code_of([] { AnalyticGraphon::constant(1.5); }) == ErrorCode::DegreeBoundViolated);
  CHECK(code_of([] { AnalyticGraphon::constant(-0.1); }) == ErrorCode::NegativeEntry);
  CHECK(code_of([] { AnalyticGraphon::from_params("wavelet", {}); }) == ErrorCode::UnknownFamily);
  CHECK(code_of([] { AnalyticGraphon::separable(SeparableFactor::Linear, 3.0); }) ==
        ErrorCode::DegreeBoundViolated);
  const auto w = AnalyticGraphon::from_params("separable_linear", {{"a", 1.0}});
  CHECK(w(0.3, 0.7) == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(w(0.3, 0.7) == w(0.7, 0.3));
}

TEST_CASE("sample_w_random") {
  CHECK(sample_w_random(AnalyticGraphon::constant(0.0), 7, 3).values() == Matrix::Zero(7, 7));
  const auto full = sample_w_random(AnalyticGraphon::constant(1.0), 3, 99);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(full(i, j) == (i == j ? 0.0 : 1.0));
  }
  const auto half = sample_w_random(AnalyticGraphon::constant(0.5), 200, 7);
  const double pairs = 200.0 * 199.0 / 2.0;
  const double density = (half.values().sum() / 2.0) / pairs;
  CHECK(std::abs(density - 0.5) <= 0.06);
  CHECK(sample_w_random(AnalyticGraphon::constant(0.5), 30, 5).values() ==
        sample_w_random(AnalyticGraphon::constant(0.5), 30, 5).values());
  CHECK(code_of([] { sample_w_random(step_from_adjacency(mat({{0, 2}, {2, 0}})), 2, 1); }) ==
        ErrorCode::KernelOutOfUnitRange);
}

TEST_CASE("degree") {
  CHECK(degree(AnalyticGraphon::constant(0.3), 0.77) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(degree(step_from_adjacency(mat({{0, 1}, {1, 0}})), 0.25) == 0.5);
  const auto sep = AnalyticGraphon::separable(SeparableFactor::Linear, 1.0);
  CHECK(std::abs(degree(sep, 0.5) - 0.25) <= 1e-8);
  const auto mk = AnalyticGraphon::min_kernel(1.0);
  // int_0^1 min(x, y) dy = x - x^2/2.
  CHECK(std::abs(degree(mk, 0.3) - (0.3 - 0.045)) <= 1e-8);
  CHECK(code_of([&] { degree(mk, 1.2); }) == ErrorCode::PointOutOfDomain);
}

TEST_CASE("lp kernel distance") {
  const GraphonHandle a = step_from_adjacency(mat({{0, 1}, {1, 0}}));
  const GraphonHandle z = StepGraphon::zeros(2);
  for (double p : {1.0, 2.0}) CHECK(lp_kernel_distance(a, a, p) == 0.0);
  CHECK(lp_kernel_distance(a, a, kInfinity) == 0.0);
  CHECK(lp_kernel_distance(a, z, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lp_kernel_distance(a, z, kInfinity) == 1.0);
  // Different partitions are compared on the common refinement.
  const GraphonHandle b = StepGraphon(Matrix::Constant(3, 3, 0.5));
  CHECK(lp_kernel_distance(a, b, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(code_of([] { common_refinement(4093, 4091); }) == ErrorCode::IncompatibleRepresentations);
  // Analytic against its own quotient at the reference resolution.
  const auto w = AnalyticGraphon::constant(0.25);
  CHECK(lp_kernel_distance(w, quotient_step(w, 8), 2.0) <= 1e-14);
}

TEST_CASE("exact cut norm examples") {
  const Matrix zero = Matrix::Zero(3, 3);
  const auto z = cut_norm_exact(zero, CutVariant::ST);
  CHECK(z.value == 0.0);
  CHECK(z.s.empty());
  CHECK(z.t.empty());

  const Matrix d = mat({{-1, 1}, {1, -1}});
  const auto st = cut_norm_exact(d, CutVariant::ST);
  CHECK(st.value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(bilinear_value(d, {1, 1}, {1, 1})) <= 0.25);
  // The certificate attains the value.
  double sum = 0.0;
  for (auto i : st.s) {
    for (auto j : st.t) sum += d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  CHECK(std::abs(sum) / 4.0 == doctest::Approx(0.25));
  CHECK(oracle::cut_st(d) == doctest::Approx(0.25));

  const auto sc = cut_norm_exact(d, CutVariant::SComplement);
  CHECK(sc.value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sc.s.size() == 1);
  CHECK(code_of([] { cut_norm_exact(Matrix::Zero(17, 17), CutVariant::ST); }) ==
        ErrorCode::BruteForceLimitExceeded);
  CHECK(code_of([] { cut_norm_exact(Matrix::Zero(21, 21), CutVariant::SComplement); }) ==
        ErrorCode::BruteForceLimitExceeded);
}

TEST_CASE("heuristic cut norm examples") {
  CHECK(cut_norm_heuristic(Matrix::Zero(5, 5), 3, 1).value == 0.0);

  oracle::Gen gen(8);
  std::vector<int> s(8), t(8);
  for (int& v : s) v = gen.sign();
  for (int& v : t) v = gen.sign();
  Matrix r1(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) r1(i, j) = s[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(j)];
  }
  const auto one_round = cut_norm_heuristic(r1, 1, 42);
  CHECK(one_round.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bilinear_value(r1, one_round.phi, one_round.psi) == doctest::Approx(one_round.value));
  CHECK(cut_norm_bilinear_exact(r1).value == doctest::Approx(1.0).epsilon(1e-15));

  const Matrix d = oracle::Gen(3).signed_matrix(10);
  const auto h = cut_norm_heuristic(d, 50, 3);
  const double brute = oracle::cut_bilinear(d);
  CHECK(h.value <= brute + 1e-12);
  CHECK(cut_norm_bilinear_exact(d).value == doctest::Approx(brute).epsilon(1e-12));
  CHECK(cut_norm_heuristic(d, 50, 3).value == h.value);
}

TEST_CASE("property: exact cut norms agree with the enumeration oracles") {
  oracle::Gen gen(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = gen.size(1, 6);
    const Matrix d = gen.signed_matrix(n);
    CHECK(cut_norm_exact(d, CutVariant::ST).value == doctest::Approx(oracle::cut_st(d)).epsilon(1e-12));
    CHECK(cut_norm_exact(d, CutVariant::SComplement).value ==
          doctest::Approx(oracle::cut_s_complement(d)).epsilon(1e-12));
    const auto b = cut_norm_bilinear_exact(d);
    CHECK(b.value == doctest::Approx(oracle::cut_bilinear(d)).epsilon(1e-12));
    CHECK(bilinear_value(d, b.phi, b.psi) == doctest::Approx(b.value).epsilon(1e-12));
  }
}

TEST_CASE("property: norm chain for signed step differences") {
  oracle::Gen gen(22);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = gen.size(1, 12);
    const StepGraphon a(gen.kernel(n));
    const StepGraphon b(gen.kernel(n));
    const Matrix d = difference(a, b);
    const double cut = cut_norm_exact(d, CutVariant::ST).value;
    const double l1 = kernel_lp_norm(d, 1.0);
    const double l2 = kernel_lp_norm(d, 2.0);
    CHECK(cut <= l1 + 1e-12);
    CHECK(l1 <= l2 + 1e-12);
    CHECK(std::abs(kernel_mean(d)) <= cut + 1e-12);
  }
}

TEST_CASE("property: heuristic never exceeds the bilinear optimum") {
  oracle::Gen gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = gen.size(1, 9);
    const Matrix d = gen.signed_matrix(n);
    const auto h = cut_norm_heuristic(d, static_cast<int>(gen.size(1, 8)), gen.engine()());
    CHECK(h.value <= cut_norm_bilinear_exact(d).value + 1e-12);
    CHECK(bilinear_value(d, h.phi, h.psi) == doctest::Approx(h.value).epsilon(1e-12));
  }
}

TEST_CASE("property: step graphons from random valid matrices satisfy the degree bound") {
  oracle::Gen gen(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gen.size(1, 30);
    const StepGraphon g(gen.kernel(n));
    for (int s = 0; s < 10; ++s) CHECK(degree(g, gen.real(1e-9, 1.0 - 1e-9)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("property: quotient refinement decreases the L1 error for the smooth cosine kernel") {
  const auto w = AnalyticGraphon::smooth_cosine(0.8);
  const StepGraphon fine = quotient_step(w, 256);
  double previous = 1e9;
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u, 32u}) {
    const double err = kernel_lp_norm(difference(quotient_step(w, n), fine), 1.0);
    CHECK(err <= previous + 1e-10);
    previous = err;
  }
}

TEST_CASE("sampled constant kernels approach the constant in cut norm") {
  const auto w = AnalyticGraphon::constant(0.5);
  auto median_distance = [&](std::size_t n) {
    std::vector<double> d;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      d.push_back(cut_norm_exact(difference(sample_w_random(w, n, seed), quotient_step(w, n)),
                                 CutVariant::ST)
                      .value);
    }
    std::sort(d.begin(), d.end());
    return 0.5 * (d[9] + d[10]);
  };
  CHECK(median_distance(8) > median_distance(16));
}

TEST_CASE("kernel serialization") {
  const GraphonHandle step = StepGraphon(mat({{0, 0.5}, {0.5, 0.25}}));
  const auto back = graphon_from_json(to_json(step));
  CHECK(std::get<StepGraphon>(back).values() == std::get<StepGraphon>(step).values());
  const GraphonHandle an = AnalyticGraphon::smooth_cosine(0.4);
  const auto an_back = std::get<AnalyticGraphon>(graphon_from_json(to_json(an)));
  CHECK(an_back.family() == AnalyticFamily::SmoothCosine);
  CHECK(an_back(0.1, 0.6) == std::get<AnalyticGraphon>(an)(0.1, 0.6));
  const Matrix a = parse_adjacency_text("# a comment\n0 1\n\n1 0\n");
  CHECK(a == mat({{0, 1}, {1, 0}}));
  CHECK(parse_adjacency_text(to_adjacency_text(a)) == a);
  CHECK(code_of([] { parse_adjacency_text("0 1\n1\n"); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { graphon_from_json("{\"kind\":\"triangle\"}"); }) == ErrorCode::ConfigError);
}
