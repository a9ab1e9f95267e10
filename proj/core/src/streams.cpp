#include "leftce/streams.hpp"

#include <stdexcept>
#include <string>

#include "leftce/errors.hpp"

namespace leftce {

std::string_view to_string(Direction d) {
  return d == Direction::nondecreasing ? "nondecreasing" : "nonincreasing";
}

Direction parse_direction(std::string_view text) {
  if (text == "nondecreasing" || text == "left") return Direction::nondecreasing;
  if (text == "nonincreasing" || text == "right") return Direction::nonincreasing;
  throw ParseError("unknown stream direction '" + std::string(text) + "'");
}

template <Direction D>
MonotoneStream<D>::MonotoneStream(std::vector<Dyadic> values) : values_(std::move(values)) {
  for (std::size_t s = 1; s < values_.size(); ++s) {
    const bool ok = D == Direction::nondecreasing ? values_[s - 1] <= values_[s]
                                                  : values_[s] <= values_[s - 1];
    if (!ok) {
      throw ContractViolation(std::string(to_string(D)) + " stream breaks monotonicity at stage " +
                              std::to_string(s) + ": " + values_[s - 1].to_string() + " then " +
                              values_[s].to_string());
    }
  }
}

template <Direction D>
MonotoneStream<D>::MonotoneStream(std::vector<Dyadic> values, Dyadic lo, Dyadic hi)
    : MonotoneStream(std::move(values)) {
  if (hi < lo) throw ContractViolation("stream bounds are empty: " + lo.to_string() + " > " + hi.to_string());
  for (std::size_t s = 0; s < values_.size(); ++s) {
    if (values_[s] < lo || hi < values_[s]) {
      throw ContractViolation("stream value " + values_[s].to_string() + " at stage " + std::to_string(s) +
                              " lies outside [" + lo.to_string() + ", " + hi.to_string() + "]");
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
}

template <Direction D>
const Dyadic& MonotoneStream<D>::at(Stage s) const {
  if (s < 0 || s > horizon()) {
    throw std::out_of_range("stage " + std::to_string(s) + " outside stream horizon " + std::to_string(horizon()));
  }
  return values_[static_cast<std::size_t>(s)];
}

template <Direction D>
MonotoneStream<D> MonotoneStream<D>::truncated(Stage horizon) const {
  if (horizon >= this->horizon()) return *this;
  MonotoneStream out = *this;
  out.values_.resize(static_cast<std::size_t>(horizon + 1));
  return out;
}

template class MonotoneStream<Direction::nondecreasing>;
template class MonotoneStream<Direction::nonincreasing>;

template <Direction D>
MonotoneStream<D> scripted_stream(std::span<const ScriptEvent> events, std::optional<Stage> horizon) {
  if (events.empty()) throw ContractViolation("stream script has no events");
  if (events.front().stage != 0) {
    throw ContractViolation("stream script must start at stage 0, got " + std::to_string(events.front().stage));
  }
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].stage <= events[i - 1].stage) {
      throw ContractViolation("stream script stages must strictly increase (stage " +
                              std::to_string(events[i].stage) + ")");
    }
  }
  const Stage last = events.back().stage;
  const Stage h = horizon.value_or(last);
  if (h < last) {
    throw ContractViolation("horizon " + std::to_string(h) + " cuts off scripted events up to stage " +
                            std::to_string(last));
  }
  std::vector<Dyadic> values;
  values.reserve(static_cast<std::size_t>(h + 1));
  std::size_t next = 0;
  for (Stage s = 0; s <= h; ++s) {
    if (next < events.size() && events[next].stage == s) {
      values.push_back(events[next].value);
      ++next;
    } else {
      values.push_back(values.back());
    }
  }
  return MonotoneStream<D>(std::move(values));
}

template LeftCEStream scripted_stream<Direction::nondecreasing>(std::span<const ScriptEvent>, std::optional<Stage>);
template RightCEStream scripted_stream<Direction::nonincreasing>(std::span<const ScriptEvent>, std::optional<Stage>);

AnyStream scripted_stream(std::span<const ScriptEvent> events, Direction direction, std::optional<Stage> horizon) {
  if (direction == Direction::nondecreasing) return scripted_stream<Direction::nondecreasing>(events, horizon);
  return scripted_stream<Direction::nonincreasing>(events, horizon);
}

LeftCEStream affine(const LeftCEStream& base, const Dyadic& q, const Dyadic& l) {
  if (!q.is_positive()) throw ContractViolation("affine map needs q > 0, got " + q.to_string());
  std::vector<Dyadic> values;
  values.reserve(base.values().size());
  for (const Dyadic& v : base.values()) values.push_back(q * v + l);
  if (base.lower_bound() && base.upper_bound()) {
    return LeftCEStream(std::move(values), q * *base.lower_bound() + l, q * *base.upper_bound() + l);
  }
  return LeftCEStream(std::move(values));
}

LeftCEStream default_beta(Stage horizon) {
  if (horizon < 0) throw ContractViolation("horizon must be >= 0");
  const Dyadic limit = Dyadic::make(13, 4);
  std::vector<Dyadic> values;
  values.reserve(static_cast<std::size_t>(horizon + 1));
  for (Stage s = 0; s <= horizon; ++s) values.push_back(limit - Dyadic::pow2(-s - 2));
  return LeftCEStream(std::move(values), Dyadic(0), Dyadic(1));
}

DominationVerdict solovay_domination_check(const LeftCEStream& alpha, const LeftCEStream& beta,
                                           std::int64_t n, Stage horizon) {
  if (n < 1) throw ContractViolation("Solovay witness n must be a positive integer");
  if (horizon > alpha.horizon() || horizon > beta.horizon()) {
    throw ContractViolation("streams are not defined up to the requested horizon");
  }
  // n*(b_t - b_s) >= a_t - a_s for all s < t  <=>  t -> n*b_t - a_t is nondecreasing.
  const Dyadic factor(static_cast<long>(n));
  Dyadic previous = factor * beta.at(0) - alpha.at(0);
  for (Stage t = 1; t <= horizon; ++t) {
    Dyadic current = factor * beta.at(t) - alpha.at(t);
    if (current < previous) return {false, t};
    previous = std::move(current);
  }
  return {};
}

}  // namespace leftce
