#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "attainrisk/io/json_io.hpp"
#include "attainrisk/risk/risk_function.hpp"

namespace attainrisk::cli {

enum class Format { kHuman, kJson };

struct AnalysisRequest {
  std::string command;
  std::string input;
  std::optional<std::string> point;  // csv of rationals
  ExtensionMode mode = ExtensionMode::kFull;
  Format format = Format::kHuman;
  std::size_t max_atoms = 12;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitPrecondition = 3,
  kExitIo = 4,
};

const std::vector<std::string>& commands();

// Runs one analysis and returns the machine report
// {"command", "status": "ok", "result": {...}}. Propagates ValidationError,
// PreconditionError and IoError.
io::Json run(const AnalysisRequest& request);

// Human-readable rendering of a report, one "path: value" line per leaf.
std::string render_human(const io::Json& report);

// Full command-line entry point; argv[0] is the program name. Returns the
// process exit code.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace attainrisk::cli
