#pragma once

#include <stdexcept>
#include <string>

namespace graphk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad graph file, non-hereditary set, inadmissible pair,
/// vector outside the required kernel, mismatched dimensions.
struct InputError : Error {
  using Error::Error;
};

/// A matrix that does not map the source relations into the target
/// relation subgroup.
struct NotWellDefined : Error {
  using Error::Error;
};

/// A symbolic residue that cannot be written in the expected gap elements.
struct ResidueError : Error {
  using Error::Error;
};

/// Violation of an invariant the library itself guarantees.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace graphk
