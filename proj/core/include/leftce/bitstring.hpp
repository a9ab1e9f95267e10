#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace leftce {

/// A finite binary string, used for machine programs and outputs.
///
/// The default ordering is plain lexicographic (what prefix checks need);
/// use length_lex_less() or length_lex_rank() for the canonical
/// "shortest first" enumeration.
class BitString {
 public:
  BitString() = default;

  /// Throws ParseError unless every character is '0' or '1'.
  explicit BitString(std::string bits);

  static BitString repeat(char bit, std::size_t count);

  /// The n-th string in length-lex order: "", "0", "1", "00", ...
  static BitString from_length_lex_rank(std::uint64_t rank);

  const std::string& str() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  char operator[](std::size_t i) const { return bits_[i]; }

  bool is_prefix_of(const BitString& other) const;
  /// Comparable under the prefix relation (either is a prefix of the other).
  bool comparable_with(const BitString& other) const;

  BitString operator+(const BitString& tail) const { return BitString(bits_ + tail.bits_, Trusted{}); }
  BitString operator+(char bit) const { return BitString(bits_ + bit, Trusted{}); }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  struct Trusted {};
  BitString(std::string bits, Trusted) : bits_(std::move(bits)) {}

  std::string bits_;
};

/// Rank in length-lex order. Throws ContractViolation if it overflows 64 bits.
std::uint64_t length_lex_rank(const BitString& s);
bool length_lex_less(const BitString& a, const BitString& b);

std::ostream& operator<<(std::ostream& os, const BitString& s);

}  // namespace leftce

template <>
struct std::hash<leftce::BitString> {
  std::size_t operator()(const leftce::BitString& s) const noexcept {
    return std::hash<std::string>{}(s.str());
  }
};
