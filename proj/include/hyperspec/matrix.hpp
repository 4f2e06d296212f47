#pragma once

#include <cstddef>
#include <vector>

namespace hyperspec {

// Dense row-major real matrix. All spectral objects in the library
// (adjacency, incidence, non-backtracking operators, walk counts) are
// instances of this type; everything stays dense at desk scale.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    double* row(std::size_t i) { return a_.data() + i * cols_; }
    const double* row(std::size_t i) const { return a_.data() + i * cols_; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    bool operator==(const DenseMatrix& o) const = default;

    DenseMatrix transpose() const;
    double trace() const;
    double max_abs() const;
    // max |a_ij - a_ji|
    double asymmetry() const;
    bool all_finite() const;

    std::vector<double> row_sums() const;
    std::vector<double> col_sums() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

// OpenMP-parallel product; falls back to the same loop nest serially
// when built without OpenMP.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
// Reference implementation kept for testing the parallel kernel against.
DenseMatrix multiply_serial(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double s);

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// a * a^T (the smaller Gram side when rows <= cols).
DenseMatrix gram_left(const DenseMatrix& a);

}  // namespace hyperspec
