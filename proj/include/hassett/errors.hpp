#pragma once

#include <stdexcept>
#include <string>

namespace hassett {

/// A precondition on domain data was violated: mismatched dimensions,
/// invalid weight data, an out-of-range family parameter, and so on.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hassett
