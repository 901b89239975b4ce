#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace graphrd {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// Scalar birth or death rate with rate(0) = 0: zero, a*x, or a*x^2.
class RateFamily {
 public:
  enum class Kind { Zero, Linear, Quadratic };

  static RateFamily zero() { return RateFamily(Kind::Zero, 0.0); }
  /// Throws InvalidArgument unless a >= 0 (rates are nonnegative on [0, inf)).
  static RateFamily linear(double a);
  static RateFamily quadratic(double a);
  /// "zero", "linear:A", "quadratic:A".
  static RateFamily parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double coefficient() const noexcept { return a_; }
  double operator()(double x) const noexcept;
  double lipschitz_on(Interval range) const noexcept;
  std::string to_string() const;

  friend bool operator==(const RateFamily&, const RateFamily&) = default;

 private:
  RateFamily(Kind kind, double a) : kind_(kind), a_(a) {}
  Kind kind_;
  double a_;
};

/// Reaction term Phi with Phi(0) = 0.
///   Zero                 0
///   Linear(r)            r x
///   Logistic(r)          r x (1 - x)
///   AllenCahn            x - x^3
///   BirthDeath(b, d)     b(x) - d(x)
class ReactionTerm {
 public:
  enum class Kind { Zero, Linear, Logistic, AllenCahn, BirthDeath };

  static ReactionTerm zero() { return ReactionTerm(Kind::Zero, 0.0); }
  static ReactionTerm linear(double r) { return ReactionTerm(Kind::Linear, r); }
  static ReactionTerm logistic(double r) { return ReactionTerm(Kind::Logistic, r); }
  static ReactionTerm allen_cahn() { return ReactionTerm(Kind::AllenCahn, 1.0); }
  static ReactionTerm birth_death(RateFamily birth, RateFamily death);

  Kind kind() const noexcept { return kind_; }
  bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  double rate() const noexcept { return r_; }
  const RateFamily& birth() const noexcept { return birth_; }
  const RateFamily& death() const noexcept { return death_; }

  double operator()(double x) const noexcept;
  /// A valid Lipschitz constant of Phi on `range`.
  double lipschitz_on(Interval range) const noexcept;
  /// Lipschitz constant on all of R, if Phi is uniformly Lipschitz.
  std::optional<double> global_lipschitz() const noexcept;
  /// Declared [M1, M2] with Phi(M2) <= 0 <= Phi(M1), when the family has one.
  std::optional<Interval> invariant_interval() const noexcept;

  std::string name() const;
  /// e.g. "logistic(r=1)" or "birth_death(b=linear:1,d=quadratic:1)".
  std::string to_string() const;

 private:
  ReactionTerm(Kind kind, double r)
      : kind_(kind), r_(r), birth_(RateFamily::zero()), death_(RateFamily::zero()) {}

  Kind kind_;
  double r_;
  RateFamily birth_;
  RateFamily death_;
};

}  // namespace graphrd
