#include "leftce/dyadic.hpp"

#include <charconv>
#include <ostream>

#include "leftce/errors.hpp"

namespace leftce {

namespace {

// a * 2^bits
mpz_class shifted_left(const mpz_class& a, std::uint64_t bits) {
  mpz_class out;
  mpz_mul_2exp(out.get_mpz_t(), a.get_mpz_t(), bits);
  return out;
}

}  // namespace

Dyadic::Dyadic(long value) : mantissa_(value) { canonicalize(); }

Dyadic Dyadic::make(mpz_class mantissa, std::uint64_t exponent) {
  Dyadic d;
  d.mantissa_ = std::move(mantissa);
  d.exponent_ = exponent;
  d.canonicalize();
  return d;
}

Dyadic Dyadic::pow2(std::int64_t power) {
  if (power >= 0) return make(shifted_left(mpz_class(1), static_cast<std::uint64_t>(power)), 0);
  return make(mpz_class(1), static_cast<std::uint64_t>(-power));
}

void Dyadic::canonicalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const mp_bitcnt_t zeros = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (zeros == 0 || exponent_ == 0) return;
  const std::uint64_t drop = std::min<std::uint64_t>(zeros, exponent_);
  mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), drop);
  exponent_ -= drop;
}

Dyadic Dyadic::scaled(std::int64_t shift) const {
  if (is_zero()) return *this;
  if (shift >= 0) {
    const auto up = static_cast<std::uint64_t>(shift);
    if (up <= exponent_) return make(mantissa_, exponent_ - up);
    return make(shifted_left(mantissa_, up - exponent_), 0);
  }
  return make(mantissa_, exponent_ + static_cast<std::uint64_t>(-shift));
}

std::int64_t Dyadic::neg_power_of_two() const {
  if (mantissa_ != 1) return -1;
  return static_cast<std::int64_t>(exponent_);
}

std::vector<std::uint64_t> Dyadic::binary_expansion() const {
  if (!is_positive() || *this > Dyadic(1)) {
    throw ContractViolation("binary_expansion requires 0 < value <= 1, got " + to_string());
  }
  std::vector<std::uint64_t> out;
  if (*this == Dyadic(1)) {
    out.push_back(0);
    return out;
  }
  // value = m * 2^-k with m < 2^k; bit b of m contributes 2^(b-k).
  const mpz_srcptr m = mantissa_.get_mpz_t();
  for (mp_bitcnt_t b = mpz_sizeinbase(m, 2); b-- > 0;) {
    if (mpz_tstbit(m, b)) out.push_back(exponent_ - b);
  }
  return out;
}

std::string Dyadic::to_string() const {
  return mantissa_.get_str(10) + "*2^-" + std::to_string(exponent_);
}

Dyadic Dyadic::parse(std::string_view text) {
  const auto star = text.find("*2^-");
  if (star == std::string_view::npos || star == 0) {
    throw ParseError("dyadic literal must look like m*2^-k: '" + std::string(text) + "'");
  }
  const std::string_view mant = text.substr(0, star);
  const std::string_view expo = text.substr(star + 4);
  const std::size_t digits_from = (mant.front() == '-') ? 1 : 0;
  if (mant.size() == digits_from || expo.empty()) {
    throw ParseError("dyadic literal has an empty field: '" + std::string(text) + "'");
  }
  for (std::size_t i = digits_from; i < mant.size(); ++i) {
    if (mant[i] < '0' || mant[i] > '9') {
      throw ParseError("bad dyadic mantissa: '" + std::string(text) + "'");
    }
  }
  std::uint64_t k = 0;
  const auto [ptr, ec] = std::from_chars(expo.data(), expo.data() + expo.size(), k);
  if (ec != std::errc() || ptr != expo.data() + expo.size()) {
    throw ParseError("bad dyadic exponent: '" + std::string(text) + "'");
  }
  return make(mpz_class(std::string(mant), 10), k);
}

double Dyadic::to_double() const {
  mpf_class f(mantissa_, 128);
  mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), exponent_);
  return f.get_d();
}

Dyadic Dyadic::operator-() const {
  Dyadic out = *this;
  out.mantissa_ = -out.mantissa_;
  return out;
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  if (exponent_ >= other.exponent_) {
    mantissa_ += shifted_left(other.mantissa_, exponent_ - other.exponent_);
  } else {
    mantissa_ = shifted_left(mantissa_, other.exponent_ - exponent_) + other.mantissa_;
    exponent_ = other.exponent_;
  }
  canonicalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& other) { return *this += -other; }

Dyadic& Dyadic::operator*=(const Dyadic& other) {
  mantissa_ *= other.mantissa_;
  exponent_ += other.exponent_;
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int c;
  if (a.exponent_ == b.exponent_) {
    c = cmp(a.mantissa_, b.mantissa_);
  } else if (a.exponent_ > b.exponent_) {
    c = cmp(a.mantissa_, shifted_left(b.mantissa_, a.exponent_ - b.exponent_));
  } else {
    c = cmp(shifted_left(a.mantissa_, b.exponent_ - a.exponent_), b.mantissa_);
  }
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Dyadic& value) {
  return os << value.to_string();
}

Dyadic arith(ArithOp op, const Dyadic& a, const Dyadic& b) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::neg: return -a;
  }
  return a;
}

}  // namespace leftce
