#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "hyperspec/eigen.hpp"
#include "hyperspec/errors.hpp"
#include "hyperspec/matrix.hpp"

using namespace hyperspec;

namespace {

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix m(rows, cols);
    for (auto& v : m.data()) v = dist(rng);
    return m;
}

DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
    DenseMatrix m = random_matrix(n, n, seed);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
    return m;
}

// 4x4 matrix 2(J - I); J is all-ones
DenseMatrix two_j_minus_i() {
    DenseMatrix m(4, 4, 2.0);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = 0.0;
    return m;
}

}  // namespace

TEST_CASE("dense matrix basics") {
    const DenseMatrix id = DenseMatrix::identity(3);
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);
    CHECK(id.trace() == doctest::Approx(3.0));

    DenseMatrix m(2, 3);
    m(0, 1) = 5.0;
    m(1, 2) = -2.0;
    const DenseMatrix t = m.transpose();
    CHECK(t.rows() == 3);
    CHECK(t(1, 0) == 5.0);
    CHECK(t(2, 1) == -2.0);
    CHECK(m.max_abs() == doctest::Approx(5.0));
    CHECK(m.row_sums() == std::vector<double>{5.0, -2.0});
    CHECK(m.col_sums() == std::vector<double>{0.0, 5.0, -2.0});
    CHECK(m.all_finite());
}

TEST_CASE("parallel multiply matches serial reference") {
    const DenseMatrix a = random_matrix(17, 23, 1);
    const DenseMatrix b = random_matrix(23, 11, 2);
    CHECK(max_abs_diff(multiply(a, b), multiply_serial(a, b)) == 0.0);

    // identity is neutral
    CHECK(max_abs_diff(multiply(a, DenseMatrix::identity(23)), a) == 0.0);
}

TEST_CASE("symmetric eigenvalues of simple matrices") {
    const RealSpectrum id2 = symmetric_eigenvalues(DenseMatrix::identity(2));
    CHECK(id2.values[0] == doctest::Approx(1.0));
    CHECK(id2.values[1] == doctest::Approx(1.0));

    const RealSpectrum sp = symmetric_eigenvalues(two_j_minus_i());
    REQUIRE(sp.values.size() == 4);
    CHECK(sp.values[0] == doctest::Approx(6.0).epsilon(1e-10));
    for (int i = 1; i < 4; ++i) CHECK(sp.values[i] == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("symmetric eigensolver input validation") {
    CHECK_THROWS_AS(symmetric_eigenvalues(DenseMatrix(2, 3)), NotSquare);
    DenseMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0 + 1e-6;
    CHECK_THROWS_AS(symmetric_eigenvalues(m), NotSymmetric);
}

TEST_CASE("parallel jacobi matches the serial reference") {
    for (std::uint64_t seed : {3, 4, 5}) {
        const DenseMatrix m = random_symmetric(31, seed);
        const RealSpectrum par = symmetric_eigenvalues(m);
        const RealSpectrum ser = symmetric_eigenvalues_serial(m);
        REQUIRE(par.values.size() == ser.values.size());
        for (std::size_t i = 0; i < par.values.size(); ++i)
            CHECK(par.values[i] == doctest::Approx(ser.values[i]).epsilon(1e-10));
    }
}

TEST_CASE("eigenvalue sum equals trace") {
    for (std::uint64_t seed : {7, 8}) {
        const DenseMatrix m = random_symmetric(25, seed);
        const RealSpectrum sp = symmetric_eigenvalues(m);
        double sum = 0.0;
        for (double v : sp.values) sum += v;
        CHECK(std::fabs(sum - m.trace()) < 1e-8 * 25);
    }
}

TEST_CASE("eigendecomposition residuals") {
    const DenseMatrix m = random_symmetric(12, 9);
    const EigenDecomposition ed = symmetric_eigendecomposition(m);
    double norm_est = 0.0;
    for (double v : ed.spectrum.values) norm_est = std::max(norm_est, std::fabs(v));
    for (std::size_t j = 0; j < 12; ++j) {
        for (std::size_t i = 0; i < 12; ++i) {
            double mv = 0.0;
            for (std::size_t t = 0; t < 12; ++t) mv += m(i, t) * ed.vectors(t, j);
            CHECK(std::fabs(mv - ed.spectrum.values[j] * ed.vectors(i, j)) < 1e-8 * norm_est);
        }
    }
}

TEST_CASE("nonsymmetric eigenvalues: rotation matrix") {
    DenseMatrix rot(2, 2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    const ComplexSpectrum sp = nonsymmetric_eigenvalues_small(rot);
    REQUIRE(sp.values.size() == 2);
    CHECK(std::abs(sp.values[0] - std::complex<double>(0, 1)) < 1e-8);
    CHECK(std::abs(sp.values[1] - std::complex<double>(0, -1)) < 1e-8);
}

TEST_CASE("nonsymmetric eigenvalues: two directed 3-cycles") {
    // block-diagonal pair of directed-cycle permutation matrices: the
    // spectrum is the cube roots of unity, each with multiplicity 2
    DenseMatrix m(6, 6);
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 3; ++i) m(3 * b + i, 3 * b + (i + 1) % 3) = 1.0;
    const ComplexSpectrum sp = nonsymmetric_eigenvalues_small(m);
    REQUIRE(sp.values.size() == 6);
    int ones = 0, omegas = 0, omega_bars = 0;
    const std::complex<double> omega = std::polar(1.0, 2.0 * M_PI / 3.0);
    for (const auto& z : sp.values) {
        if (std::abs(z - 1.0) < 1e-8) ++ones;
        if (std::abs(z - omega) < 1e-8) ++omegas;
        if (std::abs(z - std::conj(omega)) < 1e-8) ++omega_bars;
    }
    CHECK(ones == 2);
    CHECK(omegas == 2);
    CHECK(omega_bars == 2);
}

TEST_CASE("nonsymmetric solver agrees with jacobi on symmetric input") {
    const DenseMatrix m = random_symmetric(20, 11);
    const ComplexSpectrum ns = nonsymmetric_eigenvalues_small(m);
    const RealSpectrum sym = symmetric_eigenvalues(m);
    std::vector<double> re;
    for (const auto& z : ns.values) {
        CHECK(std::fabs(z.imag()) < 1e-8);
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end(), std::greater<>());
    for (std::size_t i = 0; i < re.size(); ++i)
        CHECK(std::fabs(re[i] - sym.values[i]) < 1e-6);
}

TEST_CASE("nonsymmetric solver guards") {
    CHECK_THROWS_AS(nonsymmetric_eigenvalues_small(DenseMatrix(2, 3)), NotSquare);
    CHECK_THROWS_AS(nonsymmetric_eigenvalues_small(DenseMatrix(601, 601)), DimensionTooLarge);
    // eigenvalue sum tracks the trace
    const DenseMatrix m = random_matrix(15, 15, 13);
    const ComplexSpectrum sp = nonsymmetric_eigenvalues_small(m);
    std::complex<double> sum = 0.0;
    for (const auto& z : sp.values) sum += z;
    CHECK(std::abs(sum - m.trace()) < 1e-6 * 15);
}

TEST_CASE("singular values square to gram eigenvalues") {
    const DenseMatrix m = random_matrix(5, 7, 17);
    const std::vector<double> sv = singular_values(m);
    const RealSpectrum gram = symmetric_eigenvalues(multiply(m, m.transpose()));
    REQUIRE(sv.size() == 5);
    for (std::size_t i = 0; i < sv.size(); ++i)
        CHECK(sv[i] * sv[i] == doctest::Approx(gram.values[i]).epsilon(1e-8));
}

TEST_CASE("numeric rank") {
    CHECK(numeric_rank(DenseMatrix::identity(3)) == 3);
    CHECK(numeric_rank(DenseMatrix(3, 5)) == 0);

    // incidence matrix of the triangle graph has full rank 3
    DenseMatrix x(3, 3);
    x(0, 0) = x(1, 0) = 1.0;
    x(1, 1) = x(2, 1) = 1.0;
    x(0, 2) = x(2, 2) = 1.0;
    CHECK(numeric_rank(x) == 3);

    DenseMatrix rank1(4, 4, 1.0);
    CHECK(numeric_rank(rank1) == 1);
}
