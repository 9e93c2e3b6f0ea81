#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace prbox {

/// Exact number of the form numerator / 2^exponent.
///
/// Values are always kept canonical: the numerator is odd, or the value is
/// zero with exponent 0. Two equal values therefore have identical fields,
/// which makes defaulted equality exact.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  constexpr Dyadic(std::int64_t integer) : num_(integer) {}  // NOLINT

  /// numerator / 2^exponent, canonicalized.
  static Dyadic from_parts(std::int64_t numerator, int exponent);

  /// Parses "n", "-n" or "n/d" where d is a positive power of two.
  static Dyadic parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  int exponent() const { return exp_; }
  /// 2^exponent; only meaningful for exponent < 63.
  std::int64_t denominator() const { return std::int64_t{1} << exp_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  Dyadic& operator*=(const Dyadic& rhs);

  /// Division by 2^k, the only division the type is closed under.
  Dyadic div_pow2(int k) const;
  /// Exact division; throws kInexactDivision when the quotient is not dyadic.
  Dyadic divided_by(const Dyadic& divisor) const;

  Dyadic abs() const { return num_ < 0 ? -*this : *this; }

  /// Canonical fraction text: "0", "-3", "1/2", "-3/8".
  std::string to_string() const;
  double to_double() const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& lhs, const Dyadic& rhs);

 private:
  std::int64_t num_ = 0;
  int exp_ = 0;
};

inline Dyadic operator+(Dyadic lhs, const Dyadic& rhs) { return lhs += rhs; }
inline Dyadic operator-(Dyadic lhs, const Dyadic& rhs) { return lhs -= rhs; }
inline Dyadic operator*(Dyadic lhs, const Dyadic& rhs) { return lhs *= rhs; }

std::ostream& operator<<(std::ostream& os, const Dyadic& value);

inline const Dyadic kHalf = Dyadic::from_parts(1, 1);
inline const Dyadic kQuarter = Dyadic::from_parts(1, 2);

}  // namespace prbox
