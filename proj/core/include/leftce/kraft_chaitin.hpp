#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "leftce/bitstring.hpp"
#include "leftce/dyadic.hpp"
#include "leftce/machines.hpp"
#include "leftce/streams.hpp"

namespace leftce {

/// A request for a description of weight 2^-n. Without a target the
/// allocator hands out a fresh output token.
struct Request {
  Stage stage = 0;
  Dyadic weight;
  std::optional<BitString> target;
};

struct RejectedRequest {
  std::size_t index = 0;
  Request request;
  std::string reason;
};

/// Online Kraft-Chaitin allocator.
///
/// The unallocated part of [0,1) is kept as disjoint dyadic intervals, at
/// most one per length, mirroring the binary expansion of the free
/// measure. A request of length n takes the free interval of length n if
/// there is one; otherwise the smallest free interval that is still too
/// big is split, keeping its leftmost 2^-n piece and freeing the right
/// halves. Every request is granted as long as the
/// cumulative weight stays <= 1.
class KraftChaitinAllocator {
 public:
  KraftChaitinAllocator();

  /// Program of length n for weight 2^-n, or nullopt if it would exceed
  /// the budget. Throws ContractViolation if weight is not 2^-n, n >= 0.
  std::optional<BitString> grant(const Dyadic& weight);

  const Dyadic& granted() const { return granted_; }
  Dyadic free_measure() const { return Dyadic(1) - granted_; }

 private:
  // length -> index of the free interval [index * 2^-length, (index+1) * 2^-length)
  std::map<std::uint64_t, mpz_class> free_;
  Dyadic granted_;
};

/// Machine-building front end for a stage-ordered request list. Granted
/// requests become events at their stage; fresh outputs are length-lex
/// tokens numbered in request order.
struct AllocationResult {
  MachineTape tape;
  std::vector<RejectedRequest> rejected;
};

AllocationResult kc_allocate(std::span<const Request> requests);

/// Splits every increment alpha_s - alpha_(s-1) (alpha_(-1) = 0) into its
/// binary expansion and allocates one request per term, so that
/// omega_at(result, s) == alpha(s) for s <= horizon. Requires 0 <= alpha <= 1.
MachineTape real_to_machine(const LeftCEStream& alpha, Stage horizon);

/// Requests for the binary expansion of a positive increment <= 1,
/// largest weight first.
std::vector<Request> expansion_requests(const Dyadic& increment, Stage stage);

}  // namespace leftce
