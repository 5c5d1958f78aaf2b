#pragma once

#include <stdexcept>
#include <string>

namespace qisflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated (dimension mismatch,
/// non-Hermitian input, wrong trace, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

/// A state left the regular part: an eigenvalue or coordinate fell
/// below the positivity floor, or a tuple lost full column rank.
class RegularityError : public Error {
public:
    using Error::Error;
};

/// Eigensolver non-convergence or non-finite arithmetic.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace qisflow
