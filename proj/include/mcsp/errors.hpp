#pragma once

#include <stdexcept>
#include <string>

namespace mcsp {

// Malformed input: unparsable files, unknown variable names, bad values.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated domain invariant: unrelated strings, overlapping block selections,
// parameters out of range, provenly infeasible models.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mcsp
