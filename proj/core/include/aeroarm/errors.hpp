#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aeroarm {

// Bad or inconsistent configuration / parameters. CLI exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Mission cannot be carried out: empty corridor or no collision-free path.
// Carries the first trajectory index at which the search became blocked.
// CLI exit code 3.
class InfeasibleError : public std::runtime_error {
  public:
    InfeasibleError(const std::string& what, std::size_t blocking_index)
        : std::runtime_error(what + " (blocking index " + std::to_string(blocking_index) + ")"),
          blocking_index_(blocking_index) {}

    std::size_t blocking_index() const { return blocking_index_; }

  private:
    std::size_t blocking_index_;
};

// Integrator produced a non-finite state. CLI exit code 4.
class NumericalBlowup : public std::runtime_error {
  public:
    explicit NumericalBlowup(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aeroarm
