#pragma once

#include <stdexcept>
#include <string>

namespace wordlab {

// Invalid caller-supplied parameter (counts, probabilities, budgets).
class parameter_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Dimension disagreement between containers that must line up.
class shape_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input file; message carries row/column context.
class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad or unknown key in a run configuration.
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace wordlab
