#pragma once

#include <stdexcept>
#include <string>

namespace memsim {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// append_write with a timestamp <= the last one at that position.
// The step loop writes each cell at most once per step, so this always
// indicates a bug in the caller, never a recoverable condition.
class NonMonotonicTimestamp : public Error {
 public:
  using Error::Error;
};

// A symbol id outside the machine alphabet.
class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

// Checksum mismatch on a stored history entry.
class IntegrityViolation : public Error {
 public:
  using Error::Error;
};

// seed_input called on a store that already holds entries.
class StoreNotEmpty : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// fit_scaling needs at least 16 samples spanning 3 octaves.
class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace memsim
