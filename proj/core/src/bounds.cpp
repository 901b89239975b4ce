#include "graphrd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "graphrd/error.hpp"
#include "graphrd/output.hpp"

namespace graphrd {

std::string_view to_string(CutNormMode mode) noexcept {
  return mode == CutNormMode::Exact ? "exact" : "heuristic";
}

CutNormMode parse_cut_norm_mode(std::string_view text) {
  if (text == "exact") return CutNormMode::Exact;
  if (text == "heuristic") return CutNormMode::Heuristic;
  fail(ErrorCode::InvalidArgument, "cut norm mode must be exact or heuristic, got '" +
                                       std::string(text) + "'");
}

ConvergenceReference make_reference(const StepGraphon& reference_graphon, const ReactionTerm& phi,
                                    const GridFunction& u0_fine, double T,
                                    const BoundOptions& options) {
  if (u0_fine.size() != reference_graphon.size()) {
    fail(ErrorCode::DimensionMismatch, "reference initial state and graphon differ in size");
  }
  auto sol = integrate_rd(reference_graphon, phi, u0_fine, T, options.dt,
                          uniform_times(T, options.output_count));
  return ConvergenceReference{reference_graphon, u0_fine, std::move(sol)};
}

namespace {

double growth(double k, double t) { return k > 0.0 ? std::expm1(k * t) / k : t; }

double sup_abs(const GridFunction& u) {
  return std::max(std::abs(min_value(u)), std::abs(max_value(u)));
}

bool inside(const GridFunction& u, Interval range) {
  return min_value(u) >= range.lo && max_value(u) <= range.hi;
}

double lipschitz_for_lp(const ReactionTerm& phi, const GridFunction& u0) {
  if (auto k = phi.global_lipschitz()) return *k;
  // Solutions started inside an invariant interval never leave it, so Phi
  // can be replaced by a globally Lipschitz extension from that interval.
  if (auto range = phi.invariant_interval(); range && inside(u0, *range)) {
    return phi.lipschitz_on(*range);
  }
  fail(ErrorCode::InvalidArgument, phi.to_string() +
                                       " is not uniformly Lipschitz and the initial data is "
                                       "not inside an invariant interval");
}

double lipschitz_for_sup(const ReactionTerm& phi, const GridFunction& u0) {
  if (phi.is_zero()) return 0.0;
  if (auto range = phi.invariant_interval(); range && inside(u0, *range)) {
    return phi.lipschitz_on(*range);
  }
  if (auto k = phi.global_lipschitz()) return *k;
  fail(ErrorCode::InvalidArgument, "initial data is not inside the invariant interval of " +
                                       phi.to_string());
}

struct Comparison {
  GridFunction un0;
  RdSolution coarse;
  Matrix kernel_diff;
};

Comparison compare(const ConvergenceReference& ref, const StepGraphon& wn,
                   const ReactionTerm& phi, const BoundOptions& options) {
  const std::size_t big = ref.graphon.size();
  const std::size_t n = wn.size();
  if (big % n != 0) {
    fail(ErrorCode::NotADivisor, "partition " + std::to_string(n) +
                                     " does not divide the reference partition " +
                                     std::to_string(big));
  }
  GridFunction un0 = coarsen(ref.u0, n);
  auto coarse = integrate_rd(wn, phi, un0, ref.solution.times.back(), options.dt,
                             ref.solution.times);
  Matrix diff = wn.refine(big).values() - ref.graphon.values();
  return Comparison{std::move(un0), std::move(coarse), std::move(diff)};
}

template <class Rhs>
void fill_series(BoundReport& report, const ConvergenceReference& ref, const RdSolution& coarse,
                 Exponent p, const Rhs& rhs_at, double slack) {
  const std::size_t big = ref.graphon.size();
  report.times = ref.solution.times;
  report.lhs_series.clear();
  report.rhs_series.clear();
  report.lhs = 0.0;
  report.margin = std::numeric_limits<double>::infinity();
  report.passed = true;
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const double lhs = lp_norm(refine(coarse.states[i], big) - ref.solution.states[i], p);
    const double rhs = rhs_at(report.times[i]);
    report.lhs_series.push_back(lhs);
    report.rhs_series.push_back(rhs);
    report.lhs = std::max(report.lhs, lhs);
    report.margin = std::min(report.margin, rhs - lhs);
    if (!(lhs <= rhs + slack)) report.passed = false;
  }
  report.rhs = report.rhs_series.back();
}

}  // namespace

BoundReport rd_convergence_bound(const ConvergenceReference& ref, const StepGraphon& wn,
                                 const ReactionTerm& phi, Exponent p,
                                 const BoundOptions& options) {
  if (p.is_infinite()) {
    fail(ErrorCode::InvalidExponent, "the cut-norm bound needs a finite exponent; use the sup-norm "
                                     "variant for p = inf");
  }
  const auto cmp = compare(ref, wn, phi, options);
  const std::size_t big = ref.graphon.size();

  BoundReport report;
  report.p = p;
  report.lipschitz = lipschitz_for_lp(phi, ref.u0);
  report.sup_initial = sup_abs(ref.u0);
  report.initial_error = lp_norm(refine(cmp.un0, big) - ref.u0, p);
  report.l1_distance = kernel_lp_norm(cmp.kernel_diff, Exponent(1.0));

  const bool exact_feasible = big <= options.limits.bilinear;
  if (options.mode == CutNormMode::Exact && exact_feasible) {
    report.cut_norm_value = cut_norm_bilinear_exact(cmp.kernel_diff, options.limits).value;
    report.cut_norm_mode = CutNormMode::Exact;
  } else {
    if (options.mode == CutNormMode::Exact && options.strict) {
      fail(ErrorCode::CutNormUnavailable,
           "exact cut norm on " + std::to_string(big) + " cells exceeds the brute-force limit " +
               std::to_string(options.limits.bilinear));
    }
    report.cut_norm_value =
        cut_norm_heuristic(cmp.kernel_diff, options.heuristic_restarts, options.heuristic_seed)
            .value;
    report.cut_norm_mode = CutNormMode::Heuristic;
    report.advisory = true;
  }
  report.kernel_distance = report.cut_norm_value;

  const double k = report.lipschitz;
  const double e0 = report.initial_error;
  const double kernel_term = 4.0 * report.sup_initial *
                             std::pow(std::max(report.cut_norm_value, 0.0), 1.0 / p.value());
  fill_series(
      report, ref, cmp.coarse, p,
      [&](double t) { return std::exp(k * t) * e0 + growth(k, t) * kernel_term; }, options.slack);
  return report;
}

BoundReport rd_convergence_bound(const AnalyticGraphon& w, const StepGraphon& wn,
                                 const ReactionTerm& phi, const GridFunction& u0_fine, double T,
                                 Exponent p, const BoundOptions& options) {
  const auto ref = make_reference(quotient_step(w, u0_fine.size()), phi, u0_fine, T, options);
  return rd_convergence_bound(ref, wn, phi, p, options);
}

BoundReport linfty_convergence_bound(const ConvergenceReference& ref, const StepGraphon& wn,
                                     const ReactionTerm& phi, const BoundOptions& options) {
  const auto cmp = compare(ref, wn, phi, options);
  const std::size_t big = ref.graphon.size();
  const Exponent p(kInfinity);

  BoundReport report;
  report.p = p;
  report.lipschitz = lipschitz_for_sup(phi, ref.u0);
  report.sup_initial = sup_abs(ref.u0);
  report.initial_error = lp_norm(refine(cmp.un0, big) - ref.u0, p);
  report.l1_distance = kernel_lp_norm(cmp.kernel_diff, Exponent(1.0));
  report.kernel_distance = kernel_lp_norm(cmp.kernel_diff, p);
  report.cut_norm_value = 0.0;
  report.cut_norm_mode = CutNormMode::Exact;

  const double k = report.lipschitz;
  const double e0 = report.initial_error;
  const double kernel_term = 2.0 * report.sup_initial * report.kernel_distance;
  fill_series(
      report, ref, cmp.coarse, p,
      [&](double t) { return std::exp(k * t) * e0 + growth(k, t) * kernel_term; }, options.slack);
  return report;
}

BoundReport linfty_convergence_bound(const AnalyticGraphon& w, const StepGraphon& wn,
                                     const ReactionTerm& phi, const GridFunction& u0_fine,
                                     double T, const BoundOptions& options) {
  const auto ref = make_reference(quotient_step(w, u0_fine.size()), phi, u0_fine, T, options);
  return linfty_convergence_bound(ref, wn, phi, options);
}

std::string BoundReport::to_json() const {
  nlohmann::json j;
  j["p"] = p.to_string();
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["margin"] = margin;
  j["passed"] = passed;
  j["cut_norm_value"] = cut_norm_value;
  j["cut_norm_mode"] = std::string(graphrd::to_string(cut_norm_mode));
  j["advisory"] = advisory;
  j["kernel_distance"] = kernel_distance;
  j["l1_distance"] = l1_distance;
  j["initial_error"] = initial_error;
  j["lipschitz"] = lipschitz;
  j["sup_initial"] = sup_initial;
  j["times"] = times;
  j["lhs_series"] = lhs_series;
  j["rhs_series"] = rhs_series;
  return j.dump();
}

}  // namespace graphrd
