#pragma once

#include <complex>
#include <vector>

#include "hyperspec/matrix.hpp"

namespace hyperspec {

// Eigenvalues sorted descending.
struct RealSpectrum {
    std::vector<double> values;
};

// Sorted by descending modulus, ties by descending real part. Nonreal
// values occur in conjugate pairs since the inputs are real matrices.
struct ComplexSpectrum {
    std::vector<std::complex<double>> values;
};

struct EigenDecomposition {
    RealSpectrum spectrum;
    // Column j of `vectors` is the eigenvector for spectrum.values[j].
    DenseMatrix vectors;
};

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr std::size_t kNonsymmetricCap = 600;

// Cyclic Jacobi with round-robin rotation ordering; disjoint rotation
// pairs within a round are applied through OpenMP. Converges when the
// off-diagonal Frobenius mass drops below 1e-12 of its initial value.
RealSpectrum symmetric_eigenvalues(const DenseMatrix& m);
// Plain sequential cyclic Jacobi, kept as the reference the parallel
// kernel is tested against.
RealSpectrum symmetric_eigenvalues_serial(const DenseMatrix& m);

EigenDecomposition symmetric_eigendecomposition(const DenseMatrix& m);

// Hessenberg reduction followed by shifted QR with 2x2 deflation.
// Oracle-grade: dimension capped at kNonsymmetricCap.
ComplexSpectrum nonsymmetric_eigenvalues_small(const DenseMatrix& m);

std::vector<double> singular_values(const DenseMatrix& m);

// Count of singular values above tol * sigma_max.
int numeric_rank(const DenseMatrix& m, double tol = 1e-8);

}  // namespace hyperspec
