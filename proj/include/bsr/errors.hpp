#pragma once

#include <stdexcept>
#include <string>

namespace bsr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// lp_core
struct MalformedProblem : Error { using Error::Error; };
struct IterationLimit : Error { using Error::Error; };

// signal_model
struct TooManySpikes : Error { using Error::Error; };
struct EvenKernelSize : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// acquisition
struct DegenerateEncoding : Error { using Error::Error; };
struct ConstantProjections : Error { using Error::Error; };

// patch2d
struct BadDims : Error { using Error::Error; };

// harness
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace bsr
