#pragma once

#include <stdexcept>
#include <string>

namespace cbounds {

/// A precondition on the mathematical domain was violated
/// (a >= b, n below a formula's minimum, nonpositive log argument, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A name (function, family, mean kind) is not known to a registry.
class UnknownName : public std::invalid_argument {
 public:
  explicit UnknownName(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace cbounds
