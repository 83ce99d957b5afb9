#pragma once

#include <stdexcept>
#include <string>

namespace commcalc {

// Violated mathematical precondition (non-spd input, singular operator,
// repeated eigenvalues where distinct ones are required, lost positive
// definiteness during integration, ...).  The CLI maps this to exit code 2.
class MathError : public std::runtime_error {
public:
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// File or serialization problem.  The CLI maps this to exit code 1.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace commcalc
