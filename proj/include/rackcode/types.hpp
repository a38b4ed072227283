#pragma once

#include <cstdint>
#include <stdexcept>

namespace rackcode {

/// Element of a prime field F_q, stored reduced to [0, q).
using Symbol = std::uint32_t;

enum class Construction { stacked, grouped };

/// Invalid parameters, configs, or failure patterns. The message names the
/// violated condition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear system with no unique solution. The code constructions guarantee
/// invertibility whenever the field constraints hold, so this signals a broken
/// field/parameter combination rather than bad input data.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rackcode
