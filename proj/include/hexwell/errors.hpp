#pragma once

#include <stdexcept>
#include <string>

namespace hexwell {

struct NotCoprime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoBoundState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoRoot : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Underflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingCoefficient : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct NotDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RotationLeak : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace hexwell
