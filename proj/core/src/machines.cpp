#include "leftce/machines.hpp"

#include <algorithm>
#include <string>

#include "leftce/errors.hpp"

namespace leftce {

bool MachineTape::admits(const BitString& program) const {
  // In a lexicographically sorted antichain, the only candidate prefix of
  // `program` is its predecessor and the only candidate extension is its
  // successor.
  auto it = domain_.lower_bound(program);
  if (it != domain_.end() && program.is_prefix_of(*it)) return false;
  if (it != domain_.begin() && std::prev(it)->is_prefix_of(program)) return false;
  return true;
}

bool MachineTape::append(DescriptionEvent event) {
  if (event.stage < last_stage_) {
    throw ContractViolation("machine events out of stage order: stage " + std::to_string(event.stage) +
                            " after stage " + std::to_string(last_stage_));
  }
  if (event.stage < 0) throw ContractViolation("negative stage in machine event");
  last_stage_ = event.stage;
  if (!admits(event.program)) {
    rejected_.push_back(std::move(event));
    return false;
  }
  domain_.insert(event.program);
  Dyadic total = omega() + Dyadic::pow2(-static_cast<std::int64_t>(event.program.size()));
  cumulative_.push_back(std::move(total));

  auto& history = shortest_[event.output];
  if (history.empty() || event.program.size() < history.back().second) {
    if (!history.empty() && history.back().first == event.stage) {
      history.back().second = event.program.size();
    } else {
      history.emplace_back(event.stage, event.program.size());
    }
  }
  events_.push_back(std::move(event));
  return true;
}

Dyadic MachineTape::omega_at(Stage s) const {
  auto it = std::upper_bound(events_.begin(), events_.end(), s,
                             [](Stage stage, const DescriptionEvent& e) { return stage < e.stage; });
  if (it == events_.begin()) return Dyadic();
  return cumulative_[static_cast<std::size_t>(it - events_.begin()) - 1];
}

Complexity MachineTape::complexity_at(const BitString& target, Stage s) const {
  auto found = shortest_.find(target);
  if (found == shortest_.end()) return std::nullopt;
  const auto& history = found->second;
  auto it = std::upper_bound(history.begin(), history.end(), s,
                             [](Stage stage, const auto& entry) { return stage < entry.first; });
  if (it == history.begin()) return std::nullopt;
  return std::prev(it)->second;
}

Complexity MachineTape::complexity(const BitString& target) const {
  auto found = shortest_.find(target);
  if (found == shortest_.end()) return std::nullopt;
  return found->second.back().second;
}

std::vector<BitString> MachineTape::outputs() const {
  std::vector<BitString> out;
  out.reserve(shortest_.size());
  for (const auto& [output, history] : shortest_) out.push_back(output);
  std::sort(out.begin(), out.end(), length_lex_less);
  return out;
}

MachineTape enforce_prefix_free(std::span<const DescriptionEvent> raw) {
  MachineTape tape;
  for (const auto& e : raw) tape.append(e);
  return tape;
}

MachineTape adjoin_universal(std::span<const MachineTape> components) {
  struct Ref {
    Stage stage;
    std::size_t component;
    std::size_t index;
  };
  std::vector<Ref> order;
  for (std::size_t e = 0; e < components.size(); ++e) {
    const auto& events = components[e].events();
    for (std::size_t i = 0; i < events.size(); ++i) order.push_back({events[i].stage, e, i});
  }
  std::stable_sort(order.begin(), order.end(), [](const Ref& a, const Ref& b) {
    return a.stage != b.stage ? a.stage < b.stage : a.component < b.component;
  });
  MachineTape u;
  for (const Ref& r : order) {
    const auto& ev = components[r.component].events()[r.index];
    const BitString coder = BitString::repeat('0', r.component) + '1';
    u.append(ev.stage, coder + ev.program, ev.output);
  }
  return u;
}

MachineTape footnote_pad(const MachineTape& u) {
  MachineTape v;
  for (const auto& ev : u.events()) {
    if (ev.program.size() % 2 == 1) {
      v.append(ev.stage, ev.program + '0', ev.output);
      v.append(ev.stage, ev.program + '1', ev.output);
    } else {
      v.append(ev);
    }
  }
  return v;
}

BitString least_string_with_complexity_above(const MachineTape& tape, std::size_t bound, Stage s) {
  for (std::uint64_t rank = 0;; ++rank) {
    BitString candidate = BitString::from_length_lex_rank(rank);
    const Complexity k = tape.complexity_at(candidate, s);
    if (!k || *k > bound) return candidate;
  }
}

std::optional<std::pair<BitString, BitString>> find_comparable_pair(std::vector<BitString> programs) {
  std::sort(programs.begin(), programs.end());
  for (std::size_t i = 1; i < programs.size(); ++i) {
    // After sorting, a prefix sits immediately before some extension of it
    // (duplicates included) whenever any comparable pair exists.
    if (programs[i - 1].is_prefix_of(programs[i])) return std::make_pair(programs[i - 1], programs[i]);
  }
  return std::nullopt;
}

std::vector<BitString> domain_of(const MachineTape& tape) {
  std::vector<BitString> out;
  out.reserve(tape.size());
  for (const auto& e : tape.events()) out.push_back(e.program);
  return out;
}

}  // namespace leftce
