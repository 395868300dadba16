#pragma once

#include <stdexcept>
#include <string>

namespace revised {

// Error taxonomy shared by all modules. The CLI maps these onto stable
// exit codes (see tools/revised_main.cpp).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input schema (missing CSV column, bad header).
class SchemaError : public Error {
public:
  using Error::Error;
};

// Inconsistent or unusable data content (label conflicts, single-class log).
class DataError : public Error {
public:
  using Error::Error;
};

// Bad argument to an operation (dimension mismatch, unknown activity).
class ArgumentError : public Error {
public:
  using Error::Error;
};

// Operation invoked in an invalid object state (EoS already appended, ...).
class StateError : public Error {
public:
  using Error::Error;
};

// Requested feature is not supported for the given input (e.g. soft
// relaxation of a chain/alternate template).
class CapabilityError : public Error {
public:
  using Error::Error;
};

// Numeric contract violated (simplex rows out of tolerance, NaN loss).
class NumericError : public Error {
public:
  using Error::Error;
};

// Caller violated a documented precondition of an algorithm.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// Filesystem / stream failure.
class IoError : public Error {
public:
  using Error::Error;
};

// Persisted artifact does not match its expected fingerprint (vocabulary
// hash mismatch, stale stage input).
class ArtifactError : public Error {
public:
  using Error::Error;
};

}  // namespace revised
