#pragma once

#include <stdexcept>
#include <string>

namespace setdepth {

// Bad input: malformed files, dimension mismatches, out-of-range parameters.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An exact combinatorial engine was asked to handle a body it cannot
// represent combinatorially (ball, composite). Callers fall back to sampling.
class NeedsSampling : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace setdepth
