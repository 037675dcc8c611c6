#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace lincheck::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,         // Linearizable, PASS, or a successful build/tensor run
  kExitNegative = 1,   // NotLinearizable or FAIL
  kExitUndecided = 2,  // Inconclusive, or the computation was aborted
  kExitInput = 64,     // unreadable or malformed input
};

enum class Command { Check, Build, Verify, Tensor };

const char* to_string(Command c);

enum class TensorAction { Christoffel, Riemann, Flat };

/// Flag values; unset fields fall back to the input file, then defaults.
struct RunOptions {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  TensorAction tensor_action = TensorAction::Flat;
};

struct CommandOutput {
  int exit_code = kExitOk;
  nlohmann::ordered_json report;
  std::string text;
};

/// Runs one command on file contents. `name` is recorded in the report.
CommandOutput run_on_text(Command cmd, std::string_view text, std::string_view name, const RunOptions& opts);

/// Reads the file (input errors on failure) and runs the command.
CommandOutput run_on_file(Command cmd, const std::filesystem::path& path, const RunOptions& opts);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Decimal text with 17 significant digits ("%.17g").
std::string decimal17(double v);

/// Copy of a report without its timing fields, for determinism checks.
nlohmann::ordered_json without_timings(const nlohmann::ordered_json& report);

}  // namespace lincheck::cli
