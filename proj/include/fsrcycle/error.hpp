#pragma once

#include <stdexcept>
#include <string>

namespace fsrcycle {

// Base of everything the library throws on bad input or exhausted limits.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated (malformed text, reducible
// modulus where an irreducible one is required, non-periodic register, ...).
class input_error : public error {
  public:
    using error::error;
};

// A configured size cap (degree, stage count, brute-force state count) would
// be exceeded.
class cap_exceeded : public error {
  public:
    using error::error;
};

// Checked 128-bit count arithmetic or 64-bit length arithmetic overflowed.
class overflow_error : public error {
  public:
    using error::error;
};

// The closed form has no branch for these parameters.
class unsupported : public error {
  public:
    using error::error;
};

} // namespace fsrcycle
