#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

// fit_blowup could not find an asymptotic window
struct FitFailed : Error {
    using Error::Error;
};

// requested s or window lies outside the stored data
struct CoverageError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

}  // namespace blowup
