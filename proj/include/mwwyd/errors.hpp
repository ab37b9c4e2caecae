#pragma once

#include <stdexcept>
#include <string>

namespace mwwyd {

// Operand dimensions disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value lies outside the domain of the operation (parameters, Bloch
// vectors, damping strengths, non-finite entries).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPositiveSemidefiniteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kraus operators fail sum_i E_i^dag E_i = I, or a unitary fails U^dag U = I.
class ChannelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The permutation search would exceed the configured tuple cap.
class EnumerationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed JSON input. The message names the offending entry path.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mwwyd
