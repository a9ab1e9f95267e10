#include "leftce/kraft_chaitin.hpp"

#include "leftce/errors.hpp"

namespace leftce {

namespace {

BitString interval_code(const mpz_class& index, std::uint64_t length) {
  std::string bits(length, '0');
  for (std::uint64_t b = 0; b < length; ++b) {
    if (mpz_tstbit(index.get_mpz_t(), b)) bits[length - 1 - b] = '1';
  }
  return BitString(std::move(bits));
}

}  // namespace

KraftChaitinAllocator::KraftChaitinAllocator() { free_.emplace(0, mpz_class(0)); }

std::optional<BitString> KraftChaitinAllocator::grant(const Dyadic& weight) {
  const std::int64_t n = weight.neg_power_of_two();
  if (n < 0) throw ContractViolation("Kraft-Chaitin weight must be 2^-n with n >= 0, got " + weight.to_string());
  const auto length = static_cast<std::uint64_t>(n);

  if (auto exact = free_.find(length); exact != free_.end()) {
    BitString code = interval_code(exact->second, length);
    free_.erase(exact);
    granted_ += weight;
    return code;
  }
  // Largest free interval that is still too big: greatest key below n.
  auto it = free_.lower_bound(length);
  if (it == free_.begin()) return std::nullopt;
  --it;
  std::uint64_t len = it->first;
  mpz_class index = it->second;
  free_.erase(it);
  while (len < length) {
    // Split [index] at len into two halves at len+1; keep the left, free the right.
    index *= 2;
    ++len;
    free_.emplace(len, index + 1);
  }
  granted_ += weight;
  return interval_code(index, length);
}

AllocationResult kc_allocate(std::span<const Request> requests) {
  AllocationResult result;
  KraftChaitinAllocator allocator;
  std::uint64_t next_token = 0;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const Request& req = requests[i];
    auto program = allocator.grant(req.weight);
    if (!program) {
      result.rejected.push_back({i, req,
                                 "request " + std::to_string(i) + " of weight " + req.weight.to_string() +
                                     " would push the granted total above 1"});
      continue;
    }
    BitString output = req.target ? *req.target : BitString::from_length_lex_rank(next_token++);
    result.tape.append(req.stage, std::move(*program), std::move(output));
  }
  return result;
}

std::vector<Request> expansion_requests(const Dyadic& increment, Stage stage) {
  std::vector<Request> out;
  for (std::uint64_t n : increment.binary_expansion()) {
    out.push_back({stage, Dyadic::pow2(-static_cast<std::int64_t>(n)), std::nullopt});
  }
  return out;
}

MachineTape real_to_machine(const LeftCEStream& alpha, Stage horizon) {
  if (horizon > alpha.horizon()) throw ContractViolation("alpha is not defined up to the horizon");
  std::vector<Request> requests;
  Dyadic previous;
  for (Stage s = 0; s <= horizon; ++s) {
    const Dyadic& value = alpha.at(s);
    if (value.is_negative() || Dyadic(1) < value) {
      throw ContractViolation("alpha must stay in [0,1]; stage " + std::to_string(s) + " has " + value.to_string());
    }
    const Dyadic step = value - previous;
    if (step.is_positive()) {
      auto more = expansion_requests(step, s);
      requests.insert(requests.end(), more.begin(), more.end());
    }
    previous = value;
  }
  AllocationResult result = kc_allocate(requests);
  if (!result.rejected.empty()) throw ContractViolation(result.rejected.front().reason);
  return std::move(result.tape);
}

}  // namespace leftce
