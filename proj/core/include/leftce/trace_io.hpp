#pragma once

#include <iosfwd>
#include <string_view>
#include <variant>

#include "leftce/diag_diff.hpp"
#include "leftce/diag_machine.hpp"
#include "leftce/omega_diff.hpp"
#include "leftce/semimeasures.hpp"

namespace leftce {

enum class Construction { diag_machine, diag_machine_layerwise, diag_diff, semimeasure, omega_diff };

std::string_view to_string(Construction c);
/// Throws ParseError on an unknown id.
Construction parse_construction(std::string_view text);

using AnyTrace = std::variant<DiagTrace, DiffTrace, SemiTrace, DiffLedger>;

struct LoadedTrace {
  Construction construction = Construction::diag_machine;
  AnyTrace trace;
};

// A trace file is a header line {"construction": id, ...} followed by one
// record per stage. Writing is deterministic.
void write_trace(std::ostream& out, const DiagTrace& trace);
void write_trace(std::ostream& out, const DiffTrace& trace);
void write_trace(std::ostream& out, const SemiTrace& trace);
void write_trace(std::ostream& out, const DiffLedger& ledger);

/// Throws ParseError on malformed input.
LoadedTrace read_trace(std::istream& in);

}  // namespace leftce
