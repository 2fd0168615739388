#pragma once

#include <stdexcept>
#include <string>

namespace wittperv {

// Bad input: mismatched parents, wrong lengths, objects failing their axioms.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured enumeration cap would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Something that is a theorem failed to hold; always an engine bug.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace wittperv
