#pragma once

#include <stdexcept>
#include <string>

namespace hyperspec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linalg
struct NotSquare : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };

// hypergraph
struct NotUniform : Error { using Error::Error; };
struct NotRegular : Error { using Error::Error; };
struct DuplicateHyperedge : Error { using Error::Error; };
struct VertexOutOfRange : Error { using Error::Error; };
struct CountMismatch : Error { using Error::Error; };
struct MultipleHyperedges : Error { using Error::Error; };
struct LengthTooLarge : Error { using Error::Error; };

// sampler
struct InvalidParameters : Error { using Error::Error; };
struct RetryLimitExceeded : Error { using Error::Error; };

// spectra
struct DensityNotNormalized : Error { using Error::Error; };
struct IntervalTooNarrow : Error { using Error::Error; };

// walks
struct NoSpectralGap : Error { using Error::Error; };
struct DegenerateParameters : Error { using Error::Error; };
struct NegativeInput : Error { using Error::Error; };
struct EmptySet : Error { using Error::Error; };

struct IoError : Error { using Error::Error; };

}  // namespace hyperspec
