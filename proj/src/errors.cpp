#include "lincheck/errors.hpp"

namespace lincheck {

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected, std::string found)
    : Error("syntax error at column " + std::to_string(position + 1) + ": expected " +
            join(expected, " or ") + ", found " + found),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

UnknownSymbol::UnknownSymbol(std::size_t position, std::string name)
    : Error("unknown symbol '" + name + "' at column " + std::to_string(position + 1)),
      position_(position),
      name_(std::move(name)) {}

ExpressionTooLarge::ExpressionTooLarge(std::size_t terms, std::size_t cap)
    : Error("expression too large: " + std::to_string(terms) + " terms exceeds cap " +
            std::to_string(cap)),
      terms_(terms),
      cap_(cap) {}

NonGeodesicType::NonGeodesicType(std::vector<std::string> components)
    : Error("system is not of geodesic type; nonzero components: " + join(components, ", ")),
      components_(std::move(components)) {}

StepLimitExceeded::StepLimitExceeded(std::size_t requested, std::size_t limit)
    : Error("integration needs " + std::to_string(requested) + " steps, limit is " +
            std::to_string(limit)) {}

}  // namespace lincheck
