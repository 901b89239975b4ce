#include "graphrd/reaction.hpp"

#include <algorithm>
#include <cmath>

#include "graphrd/error.hpp"
#include "graphrd/output.hpp"

namespace graphrd {

namespace {

double max_abs(Interval range) { return std::max(std::abs(range.lo), std::abs(range.hi)); }

double parse_number(std::string_view text, std::string_view context) {
  try {
    std::size_t pos = 0;
    const std::string s(text);
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::ConfigError, "cannot parse number '" + std::string(text) + "' in " +
                                   std::string(context));
}

}  // namespace

RateFamily RateFamily::linear(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    fail(ErrorCode::InvalidArgument, "rate coefficient must be finite and >= 0");
  }
  return RateFamily(Kind::Linear, a);
}

RateFamily RateFamily::quadratic(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    fail(ErrorCode::InvalidArgument, "rate coefficient must be finite and >= 0");
  }
  return RateFamily(Kind::Quadratic, a);
}

RateFamily RateFamily::parse(std::string_view text) {
  if (text == "zero") return zero();
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  if (colon != std::string_view::npos) {
    const double a = parse_number(text.substr(colon + 1), "rate family");
    if (head == "linear") return linear(a);
    if (head == "quadratic") return quadratic(a);
  }
  fail(ErrorCode::UnknownFamily,
       "unknown rate family '" + std::string(text) + "' (use zero, linear:A, quadratic:A)");
}

double RateFamily::operator()(double x) const noexcept {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return a_ * x;
    case Kind::Quadratic: return a_ * x * x;
  }
  return 0.0;
}

double RateFamily::lipschitz_on(Interval range) const noexcept {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return a_;
    case Kind::Quadratic: return 2.0 * a_ * max_abs(range);
  }
  return 0.0;
}

std::string RateFamily::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "zero";
    case Kind::Linear: return "linear:" + format_real(a_);
    case Kind::Quadratic: return "quadratic:" + format_real(a_);
  }
  return "zero";
}

ReactionTerm ReactionTerm::birth_death(RateFamily birth, RateFamily death) {
  ReactionTerm t(Kind::BirthDeath, 0.0);
  t.birth_ = birth;
  t.death_ = death;
  return t;
}

double ReactionTerm::operator()(double x) const noexcept {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return r_ * x;
    case Kind::Logistic: return r_ * x * (1.0 - x);
    case Kind::AllenCahn: return x - x * x * x;
    case Kind::BirthDeath: return birth_(x) - death_(x);
  }
  return 0.0;
}

double ReactionTerm::lipschitz_on(Interval range) const noexcept {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return std::abs(r_);
    case Kind::Logistic:
      // |r (1 - 2x)| is maximal at an endpoint.
      return std::abs(r_) * std::max(std::abs(1.0 - 2.0 * range.lo), std::abs(1.0 - 2.0 * range.hi));
    case Kind::AllenCahn: {
      // |1 - 3x^2|: endpoints, plus x = 0 when inside.
      double m = std::max(std::abs(1.0 - 3.0 * range.lo * range.lo),
                          std::abs(1.0 - 3.0 * range.hi * range.hi));
      if (range.contains(0.0)) m = std::max(m, 1.0);
      return m;
    }
    case Kind::BirthDeath: return birth_.lipschitz_on(range) + death_.lipschitz_on(range);
  }
  return 0.0;
}

std::optional<double> ReactionTerm::global_lipschitz() const noexcept {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return std::abs(r_);
    case Kind::Logistic:
      if (r_ == 0.0) return 0.0;
      return std::nullopt;
    case Kind::AllenCahn: return std::nullopt;
    case Kind::BirthDeath:
      if (birth_.kind() == RateFamily::Kind::Quadratic && birth_.coefficient() != 0.0) {
        return std::nullopt;
      }
      if (death_.kind() == RateFamily::Kind::Quadratic && death_.coefficient() != 0.0) {
        return std::nullopt;
      }
      return birth_.lipschitz_on({0.0, 0.0}) + death_.lipschitz_on({0.0, 0.0});
  }
  return std::nullopt;
}

std::optional<Interval> ReactionTerm::invariant_interval() const noexcept {
  switch (kind_) {
    case Kind::Zero:
    case Kind::Linear: return std::nullopt;
    case Kind::Logistic:
      if (r_ > 0.0) return Interval{0.0, 1.0};
      return std::nullopt;
    case Kind::AllenCahn: return Interval{-1.0, 1.0};
    case Kind::BirthDeath: {
      // Phi(x) = c1 x + c2 x^2 on [0, inf).
      auto coeff = [](const RateFamily& f, RateFamily::Kind k) {
        return f.kind() == k ? f.coefficient() : 0.0;
      };
      const double c1 = coeff(birth_, RateFamily::Kind::Linear) - coeff(death_, RateFamily::Kind::Linear);
      const double c2 =
          coeff(birth_, RateFamily::Kind::Quadratic) - coeff(death_, RateFamily::Kind::Quadratic);
      if (c1 > 0.0 && c2 < 0.0) return Interval{0.0, c1 / -c2};
      if (c1 <= 0.0 && c2 <= 0.0) return Interval{0.0, 1.0};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string ReactionTerm::name() const {
  switch (kind_) {
    case Kind::Zero: return "zero";
    case Kind::Linear: return "linear";
    case Kind::Logistic: return "logistic";
    case Kind::AllenCahn: return "allen_cahn";
    case Kind::BirthDeath: return "birth_death";
  }
  return "zero";
}

std::string ReactionTerm::to_string() const {
  switch (kind_) {
    case Kind::Zero:
    case Kind::AllenCahn: return name();
    case Kind::Linear:
    case Kind::Logistic: return name() + "(r=" + format_real(r_) + ")";
    case Kind::BirthDeath:
      return "birth_death(b=" + birth_.to_string() + ",d=" + death_.to_string() + ")";
  }
  return name();
}

}  // namespace graphrd
