#include "lpsparse/errors.hpp"

#include <utility>

namespace lpsparse {

ParseError::ParseError(const std::string& message, std::size_t line, std::string field)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ": " + message),
      line_(line),
      field_(std::move(field)) {}

}  // namespace lpsparse
