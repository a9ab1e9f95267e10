#include "leftce/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "json_util.hpp"
#include "leftce/errors.hpp"

namespace leftce::io {

using detail::JsonLines;
using detail::dyadic_field;
using detail::int_field;
using detail::string_field;
using nlohmann::ordered_json;

namespace {

template <Direction D>
std::vector<ScriptEvent> values_as_events(const MonotoneStream<D>& s) {
  std::vector<ScriptEvent> out;
  for (Stage t = 0; t <= s.horizon(); ++t) {
    if (t == 0 || s.at(t) != s.at(t - 1)) out.push_back({t, s.at(t)});
  }
  return out;
}

}  // namespace

AnyStream read_stream(std::istream& in) {
  JsonLines lines(in);
  auto header = lines.next();
  if (!header) throw ParseError("stream file is empty");
  const Direction direction = parse_direction(string_field(*header, "direction", lines.line()));
  std::optional<Stage> horizon;
  if (header->contains("horizon")) horizon = int_field(*header, "horizon", lines.line());
  std::vector<ScriptEvent> events;
  while (auto rec = lines.next()) {
    events.push_back({int_field(*rec, "stage", lines.line()), dyadic_field(*rec, "value", lines.line())});
  }
  if (events.empty()) throw ContractViolation("stream file has no values");
  return scripted_stream(events, direction, horizon);
}

LeftCEStream read_left_stream(std::istream& in) {
  AnyStream s = read_stream(in);
  if (auto* left = std::get_if<LeftCEStream>(&s)) return std::move(*left);
  throw ContractViolation("expected a nondecreasing (left-c.e.) stream");
}

RightCEStream read_right_stream(std::istream& in) {
  AnyStream s = read_stream(in);
  if (auto* right = std::get_if<RightCEStream>(&s)) return std::move(*right);
  throw ContractViolation("expected a nonincreasing (right-c.e.) stream");
}

void write_stream(std::ostream& out, const AnyStream& stream) {
  std::visit(
      [&](const auto& s) {
        ordered_json header;
        header["direction"] = std::string(to_string(s.direction));
        header["horizon"] = s.horizon();
        out << header.dump() << '\n';
        for (const ScriptEvent& e : values_as_events(s)) {
          ordered_json line;
          line["stage"] = e.stage;
          line["value"] = e.value.to_string();
          out << line.dump() << '\n';
        }
      },
      stream);
}

MachineTape read_machine_tape(std::istream& in) {
  JsonLines lines(in);
  MachineTape tape;
  while (auto rec = lines.next()) {
    DescriptionEvent ev = detail::event_from_json(*rec, lines.line());
    if (!tape.append(ev)) {
      throw ContractViolation("line " + std::to_string(lines.line()) + ": program '" + ev.program.str() +
                              "' is comparable with an earlier program");
    }
  }
  return tape;
}

void write_machine_tape(std::ostream& out, const MachineTape& tape) {
  for (const auto& ev : tape.events()) out << detail::event_to_json(ev).dump() << '\n';
}

SemiMeasureTape read_semimeasure(std::istream& in) {
  JsonLines lines(in);
  SemiMeasureTape tape;
  while (auto rec = lines.next()) {
    tape.add(int_field(*rec, "stage", lines.line()), int_field(*rec, "index", lines.line()),
             dyadic_field(*rec, "amount", lines.line()));
  }
  return tape;
}

void write_semimeasure(std::ostream& out, const SemiMeasureTape& tape) {
  for (const auto& inc : tape.increments()) {
    ordered_json line;
    line["stage"] = inc.stage;
    line["index"] = inc.index;
    line["amount"] = inc.amount.to_string();
    out << line.dump() << '\n';
  }
}

void write_test(std::ostream& out, const MLTestTape& test) {
  for (const auto& [k, intervals] : test.levels()) {
    for (const auto& iv : intervals) {
      ordered_json line;
      line["k"] = k;
      line["stage"] = iv.stage;
      line["lo"] = iv.lo.to_string();
      line["hi"] = iv.hi.to_string();
      out << line.dump() << '\n';
    }
  }
}

std::vector<std::int64_t> read_index_stream(std::istream& in, Stage horizon) {
  JsonLines lines(in);
  std::vector<std::pair<Stage, std::int64_t>> changes;
  while (auto rec = lines.next()) {
    const Stage s = int_field(*rec, "stage", lines.line());
    if (changes.empty() ? s != 0 : s <= changes.back().first) {
      throw ContractViolation("line " + std::to_string(lines.line()) +
                              ": index stages must start at 0 and strictly increase");
    }
    changes.emplace_back(s, int_field(*rec, "index", lines.line()));
  }
  if (changes.empty()) throw ContractViolation("index stream is empty");
  std::vector<std::int64_t> out(static_cast<std::size_t>(horizon + 1));
  std::size_t c = 0;
  for (Stage s = 0; s <= horizon; ++s) {
    while (c + 1 < changes.size() && changes[c + 1].first <= s) ++c;
    out[static_cast<std::size_t>(s)] = changes[c].second;
  }
  return out;
}

HSpec read_h_table(std::istream& in) {
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("h table is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("h table must be a JSON object");
  std::map<BitString, std::int64_t> table;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number_integer()) throw ParseError("h('" + key + "') must be an integer");
    table.emplace(BitString(key), value.get<std::int64_t>());
  }
  return HSpec::table(std::move(table));
}

HSpec load_h(const std::string& spec) {
  if (!spec.empty() && spec.front() == 'n' && !std::filesystem::exists(spec)) return HSpec::parse_formula(spec);
  auto in = open_in(spec);
  return read_h_table(in);
}

std::vector<RightCEStream> load_theta_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ParseError("theta directory '" + dir.string() + "' does not exist");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RightCEStream> out;
  for (const auto& f : files) {
    auto in = open_in(f);
    try {
      out.push_back(read_right_stream(in));
    } catch (const ContractViolation& e) {
      throw ContractViolation(f.filename().string() + ": " + e.what());
    }
  }
  if (out.empty()) throw ParseError("theta directory '" + dir.string() + "' has no .jsonl files");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace leftce::io
