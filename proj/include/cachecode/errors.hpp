#pragma once

#include <stdexcept>
#include <string>

namespace cachecode {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters outside the domain an operation accepts.
class InstanceError : public Error {
 public:
  using Error::Error;
};

// No replacement rule produced a valid term for a term that was already
// delivered.
class ReplacementExhausted : public Error {
 public:
  using Error::Error;
};

class NoSeedTerm : public Error {
 public:
  using Error::Error;
};

// Memory point at which the multi-access placement splits files into more
// than K subfiles.
class UnsupportedMemoryPoint : public Error {
 public:
  using Error::Error;
};

class RegimeError : public Error {
 public:
  using Error::Error;
};

class SimulationMismatch : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cachecode
