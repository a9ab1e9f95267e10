#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "leftce/machines.hpp"
#include "leftce/omega_diff.hpp"
#include "leftce/semimeasures.hpp"
#include "leftce/streams.hpp"

// JSON-lines file formats. Dyadics are written as "m*2^-k", bit strings as
// "0"/"1" strings. Malformed input raises ParseError (with a line number);
// well-formed input that breaks a contract raises ContractViolation.
namespace leftce::io {

/// Header {"direction": "nondecreasing"|"nonincreasing", "horizon": N?}
/// followed by {"stage": s, "value": "m*2^-k"} lines.
AnyStream read_stream(std::istream& in);
void write_stream(std::ostream& out, const AnyStream& stream);

LeftCEStream read_left_stream(std::istream& in);
RightCEStream read_right_stream(std::istream& in);

/// {"stage": s, "program": "...", "output": "..."} lines in stage order.
/// A program comparable with an earlier one is a ContractViolation.
MachineTape read_machine_tape(std::istream& in);
void write_machine_tape(std::ostream& out, const MachineTape& tape);

/// {"stage": s, "index": i, "amount": "m*2^-k"} lines.
SemiMeasureTape read_semimeasure(std::istream& in);
void write_semimeasure(std::ostream& out, const SemiMeasureTape& tape);

/// {"k": k, "lo": ..., "hi": ...} lines, ordered by level then stage.
void write_test(std::ostream& out, const MLTestTape& test);

/// {"stage": s, "index": i} change points (first at stage 0), expanded to
/// one value per stage 0..horizon.
std::vector<std::int64_t> read_index_stream(std::istream& in, Stage horizon);

/// A JSON object {"output": h, ...}.
HSpec read_h_table(std::istream& in);

/// "n+K" formula, or a path to a JSON table.
HSpec load_h(const std::string& spec);

/// Every *.jsonl file in the directory, ordered by name, as theta^0, theta^1, ...
std::vector<RightCEStream> load_theta_dir(const std::filesystem::path& dir);

/// Opens a file for reading; throws ParseError if it cannot be opened.
std::ifstream open_in(const std::filesystem::path& path);

}  // namespace leftce::io
