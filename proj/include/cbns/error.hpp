#pragma once

#include <stdexcept>
#include <string>

namespace cbns {

// Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Invalid system parameters, digits out of range, violated preconditions.
class DomainError : public Error {
  public:
    using Error::Error;
};

// A lattice coefficient left the 64-bit range.
class OverflowError : public Error {
  public:
    using Error::Error;
};

// A reduction orbit entered a cycle that is not a fixed point, or exceeded
// its iteration cap.
class CycleError : public Error {
  public:
    using Error::Error;
};

// Chain self-checks (neighbour steps, connectivity, census mismatch).
class ChainError : public Error {
  public:
    using Error::Error;
};

class ConvergenceError : public Error {
  public:
    using Error::Error;
};

// Output file could not be written.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace cbns
