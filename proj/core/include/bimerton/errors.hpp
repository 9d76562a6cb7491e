#pragma once

#include <stdexcept>
#include <string>

namespace bimerton {

/// Raised when a computation produces an unusable result (non-finite values,
/// truncation order cap exceeded). Input validation uses std::invalid_argument.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bimerton

namespace bimerton {

/// Raised when an output file cannot be opened or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bimerton
