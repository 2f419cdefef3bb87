#pragma once

#include <stdexcept>
#include <string>

namespace awmc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed construction input: dangling references, duplicate names,
/// out-of-range sizes. Raised before any validation logic runs.
struct ModelError : Error {
  using Error::Error;
};

/// A structural validator rejected the object; the message carries the
/// rendered violation report.
struct ValidationError : Error {
  using Error::Error;
};

/// A model transformation could not be carried out (non-equivalence
/// relations, unattained minimum space, kind mismatch).
struct TransformError : Error {
  using Error::Error;
};

/// Reference to a world or state the model does not contain.
struct UnknownWorldError : Error {
  using Error::Error;
};

/// Formula mentions an atom or agent outside the model's vocabulary.
struct UnknownSymbolError : Error {
  using Error::Error;
};

/// Model file could not be read or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace awmc
