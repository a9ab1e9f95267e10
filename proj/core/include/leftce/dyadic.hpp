#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace leftce {

/// Exact signed dyadic rational mantissa * 2^-exponent.
///
/// Values are always kept canonical: the mantissa is odd, or it is zero
/// and then the exponent is zero too. Two canonical values are equal iff
/// their fields are equal. No operation rounds.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value);  // NOLINT(google-explicit-constructor)

  /// Canonical form of m * 2^-k.
  static Dyadic make(mpz_class mantissa, std::uint64_t exponent);

  /// 2^power; power may be negative.
  static Dyadic pow2(std::int64_t power);

  /// Parses the trace serialization "m*2^-k". Throws ParseError.
  static Dyadic parse(std::string_view text);

  const mpz_class& mantissa() const { return mantissa_; }
  std::uint64_t exponent() const { return exponent_; }

  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return sign() == 0; }
  bool is_positive() const { return sign() > 0; }
  bool is_negative() const { return sign() < 0; }

  /// this * 2^shift, exact for any shift.
  Dyadic scaled(std::int64_t shift) const;
  Dyadic half() const { return scaled(-1); }

  /// If the value is 2^-n for some n >= 0, returns n; otherwise -1.
  std::int64_t neg_power_of_two() const;

  /// Exponents n_1 < n_2 < ... with value = sum 2^-n_j. Requires
  /// 0 < value <= 1 (so every n_j >= 0). Largest weight first.
  std::vector<std::uint64_t> binary_expansion() const;

  /// "m*2^-k", bit exact; inverse of parse().
  std::string to_string() const;

  /// Lossy, for human-facing summaries only.
  double to_double() const;

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& other);
  Dyadic& operator-=(const Dyadic& other);
  Dyadic& operator*=(const Dyadic& other);

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void canonicalize();

  mpz_class mantissa_{0};
  std::uint64_t exponent_ = 0;
};

Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);

std::ostream& operator<<(std::ostream& os, const Dyadic& value);

enum class ArithOp { add, sub, mul, neg };

/// Dispatch form of the four operations; `neg` ignores b.
Dyadic arith(ArithOp op, const Dyadic& a, const Dyadic& b);

}  // namespace leftce
