#pragma once

#include <stdexcept>
#include <string>

namespace cgc {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateProfile : NumericalError {
    using NumericalError::NumericalError;
};

struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateData : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateForms : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateConfiguration : NumericalError {
    using NumericalError::NumericalError;
};

struct FlatnessTooLarge : NumericalError {
    using NumericalError::NumericalError;
};

struct SpectralOnCircle : NumericalError {
    using NumericalError::NumericalError;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cgc
