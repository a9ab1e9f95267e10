#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>

#include <json.hpp>

#include "leftce/bitstring.hpp"
#include "leftce/dyadic.hpp"
#include "leftce/errors.hpp"
#include "leftce/machines.hpp"

namespace leftce::detail {

using nlohmann::ordered_json;

/// Reads one JSON object per non-blank line.
class JsonLines {
 public:
  explicit JsonLines(std::istream& in) : in_(in) {}

  std::optional<ordered_json> next() {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        ordered_json value = ordered_json::parse(text);
        if (!value.is_object()) throw ParseError("line " + std::to_string(line_) + ": expected a JSON object");
        return value;
      } catch (const nlohmann::json::exception& e) {
        throw ParseError("line " + std::to_string(line_) + ": " + e.what());
      }
    }
    return std::nullopt;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

inline const ordered_json& field(const ordered_json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("line " + std::to_string(line) + ": missing field '" + key + "'");
  return *it;
}

inline std::int64_t int_field(const ordered_json& obj, const char* key, std::size_t line) {
  const ordered_json& v = field(obj, key, line);
  if (!v.is_number_integer()) throw ParseError("line " + std::to_string(line) + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline std::string string_field(const ordered_json& obj, const char* key, std::size_t line) {
  const ordered_json& v = field(obj, key, line);
  if (!v.is_string()) throw ParseError("line " + std::to_string(line) + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline Dyadic dyadic_value(const ordered_json& v, std::size_t line) {
  if (!v.is_string()) throw ParseError("line " + std::to_string(line) + ": expected a dyadic string");
  try {
    return Dyadic::parse(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

inline Dyadic dyadic_field(const ordered_json& obj, const char* key, std::size_t line) {
  return dyadic_value(field(obj, key, line), line);
}

inline BitString bits_value(const ordered_json& v, std::size_t line) {
  if (!v.is_string()) throw ParseError("line " + std::to_string(line) + ": expected a bit string");
  try {
    return BitString(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

inline BitString bits_field(const ordered_json& obj, const char* key, std::size_t line) {
  return bits_value(field(obj, key, line), line);
}

inline DescriptionEvent event_from_json(const ordered_json& obj, std::size_t line) {
  return {int_field(obj, "stage", line), bits_field(obj, "program", line), bits_field(obj, "output", line)};
}

inline ordered_json event_to_json(const DescriptionEvent& ev) {
  ordered_json j;
  j["stage"] = ev.stage;
  j["program"] = ev.program.str();
  j["output"] = ev.output.str();
  return j;
}

}  // namespace leftce::detail
