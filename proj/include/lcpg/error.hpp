#ifndef LCPG_ERROR_HPP
#define LCPG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lcpg {

/// Malformed or out-of-range input (parse errors, bad vertex indices, bad parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Instance exceeds the size supported by the requested method.
class LimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A numerical solver failed to reach its accuracy contract.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lcpg

#endif  // LCPG_ERROR_HPP
