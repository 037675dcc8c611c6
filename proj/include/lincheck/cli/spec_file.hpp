#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lincheck/criteria/criteria2.hpp"
#include "lincheck/criteria/criteria3.hpp"
#include "lincheck/errors.hpp"
#include "lincheck/tensor/tensor.hpp"
#include "lincheck/verify/verify.hpp"

namespace lincheck::cli {

/// Malformed input file. Line and column are 1-based; 0 means the whole file.
class InputError : public Error {
 public:
  InputError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

enum class SystemKind { ThirdOrder, SecondOrder, Metric };

const char* to_string(SystemKind k);

/// Values left unset fall back to command-line flags, then defaults.
struct NumericSettings {
  std::optional<double> step;
  std::optional<double> s_end;
  std::optional<double> tol;
  std::optional<double> center_x;
  std::optional<double> center_y;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
};

struct SystemSpec {
  SystemKind kind = SystemKind::ThirdOrder;
  criteria::CubicCoeffs third;
  criteria::QuadraticSystem2 second;
  std::optional<tensor::Metric> metric;
  std::optional<verify::TransformPair> transform;
  sym::Bindings constants;
  NumericSettings numeric;
};

/// Sectioned key = value text:
///
///   [third_order]        P .. W           (missing entries are 0)
///   [second_order]       a .. f, beta11 .. beta22, alpha1, alpha2
///   [metric]             n, g11, g12, ... (or g_i_j), off-diagonal default 0
///   [transform]          u, v
///   [transform.constants] name = rational
///   [numeric]            step, s_end, samples, seed, tol, center_x, center_y
///
/// Exactly one of the first three sections must appear. Values may be
/// double-quoted; '#' starts a comment.
SystemSpec parse_system_spec(std::string_view text);

/// Reads and parses a file; unreadable files raise InputError at line 0.
SystemSpec load_system_spec(const std::filesystem::path& path);

}  // namespace lincheck::cli
