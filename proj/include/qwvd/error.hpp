#pragma once

#include <stdexcept>
#include <string>

namespace qwvd {

/// Argument outside the domain of a formula (e.g. b = 0 for a kernel prefactor).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A b = 0 parameter reached code that needs the integral branch.
class DegenerateParameterError : public DomainError {
   public:
    using DomainError::DomainError;
};

/// Reconstruction needs g(0) != 0.
class ReconstructionUndefinedError : public DomainError {
   public:
    using DomainError::DomainError;
};

/// Grids with different layouts were combined.
class ShapeError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Parameter matrix with ad - bc != 1.
class DeterminantError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qwvd
