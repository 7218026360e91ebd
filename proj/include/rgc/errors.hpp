#pragma once

#include <stdexcept>
#include <string>

namespace rgc {

/// Raised when an input lies outside the domain of an operation
/// (bad coordinates, invalid radius, formula used outside its range).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a construction exceeds its configured resource budget.
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(const std::string& what, int reached_dim)
        : std::runtime_error(what), reached_dim_(reached_dim) {}

    /// Highest simplex dimension that was completely enumerated before the
    /// limit was hit (-1 if none).
    int reached_dim() const noexcept { return reached_dim_; }

private:
    int reached_dim_;
};

}  // namespace rgc
