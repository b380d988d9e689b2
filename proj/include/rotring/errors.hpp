#pragma once

#include <stdexcept>
#include <string>

namespace rotring {

// Input outside the physical or mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical kernel failed to meet its accuracy contract (budget exhausted,
// NaN produced, no convergence).
class numerical_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The computed quantities contradict an assumption the model relies on,
// e.g. total angular momentum that is not monotone in the rotation speed.
class model_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rotring
