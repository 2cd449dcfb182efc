#pragma once

#include <stdexcept>
#include <string>

namespace keplerreg {

/// Input outside an operation's domain (e.g. the punctured space).
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// The (||P||+P0)-chart of the physical dictionary degenerates here.
struct SingularChartError : std::runtime_error {
  explicit SingularChartError(const std::string& what) : std::runtime_error(what) {}
};

/// The point maps to a collision state (zero physical radius).
struct CollisionError : std::runtime_error {
  explicit CollisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation not supported for this input class.
struct UnsupportedError : std::invalid_argument {
  explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace keplerreg
