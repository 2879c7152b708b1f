#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "frobreal/field.hpp"

namespace frobreal {

enum class Mode { build, check, aut, orbit, report };

struct RunConfig {
  Mode mode = Mode::report;
  std::string spec;
  /// check only: a structure JSON document used instead of --spec.
  std::string input_path;
  std::string field = "rationals";
  std::optional<std::uint64_t> budget;
  bool json = false;
  /// orbit only: "algebra", "full" or "both".
  std::string target = "both";
  /// aut only: element lists are printed up to this many elements.
  std::uint64_t list_limit = 1000;
};

struct RunResult {
  int status = 0;  // 0 pass, 1 verdict failed, 2 usage or parse error, 3 budget exceeded
  std::string output;
  std::string error;
};

/// "rationals" or "q=<prime>"; throws ParseError.
FieldSpec parse_field(const std::string& text);

/// Deterministic: the same config always yields the same bytes.
RunResult run(const RunConfig& config);

}  // namespace frobreal
