#pragma once

#include <string>

namespace graphrd {

struct Infinity {};
inline constexpr Infinity kInfinity{};

/// Lp exponent in [1, inf]. Infinity is a distinct state rather than a large
/// finite p.
class Exponent {
 public:
  /// Throws InvalidExponent for p < 1 or NaN. A floating-point +inf maps to
  /// the infinity tag.
  Exponent(double p);  // NOLINT(google-explicit-constructor)
  Exponent(Infinity) noexcept : infinite_(true), p_(0.0) {}  // NOLINT

  bool is_infinite() const noexcept { return infinite_; }
  /// Finite exponent value; only meaningful when !is_infinite().
  double value() const noexcept { return p_; }

  std::string to_string() const;
  /// Parses "1", "2.5", "inf".
  static Exponent parse(const std::string& text);

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
  }

 private:
  bool infinite_;
  double p_;
};

}  // namespace graphrd
