#include "leftce/bitstring.hpp"

#include <cstdint>
#include <ostream>

#include "leftce/errors.hpp"

namespace leftce {

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') throw ParseError("not a binary string: '" + bits_ + "'");
  }
}

BitString BitString::repeat(char bit, std::size_t count) {
  return BitString(std::string(count, bit));
}

BitString BitString::from_length_lex_rank(std::uint64_t rank) {
  // Strings of length L occupy ranks [2^L - 1, 2^(L+1) - 1); the string is
  // the binary expansion of rank + 1 with its leading 1 removed.
  if (rank == UINT64_MAX) return BitString(std::string(64, '0'), Trusted{});
  const std::uint64_t v = rank + 1;
  int top = 63;
  while (!((v >> top) & 1)) --top;
  std::string bits;
  bits.reserve(static_cast<std::size_t>(top));
  for (int b = top - 1; b >= 0; --b) bits.push_back(((v >> b) & 1) ? '1' : '0');
  return BitString(std::move(bits), Trusted{});
}

bool BitString::is_prefix_of(const BitString& other) const {
  return bits_.size() <= other.bits_.size() &&
         other.bits_.compare(0, bits_.size(), bits_) == 0;
}

bool BitString::comparable_with(const BitString& other) const {
  return is_prefix_of(other) || other.is_prefix_of(*this);
}

std::uint64_t length_lex_rank(const BitString& s) {
  if (s.size() >= 63) {
    throw ContractViolation("string too long for a 64-bit length-lex rank (" +
                            std::to_string(s.size()) + " bits)");
  }
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < s.size(); ++i) v = (v << 1) | (s[i] == '1' ? 1u : 0u);
  return v - 1;
}

bool length_lex_less(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::ostream& operator<<(std::ostream& os, const BitString& s) { return os << '"' << s.str() << '"'; }

}  // namespace leftce
