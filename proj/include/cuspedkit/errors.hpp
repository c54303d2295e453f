#pragma once

#include <stdexcept>
#include <string>

namespace cuspedkit {

// Bad input: malformed files, violated preconditions, unknown vertex ids.
class InvalidInput : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

// A finite-graph lemma that must hold by construction did not.
class LemmaViolation : public std::logic_error {
 public:
    using std::logic_error::logic_error;
};

// An exhaustive scan would exceed its configured size limit.
class SizeGuardExceeded : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace cuspedkit
