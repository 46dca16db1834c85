#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "quasipin/linalg.hpp"

using namespace qpin;

TEST_CASE("jacobi reproduces a known 2x2 spectrum") {
    Matrix a(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 2.0;
    a(0, 1) = a(1, 0) = 1.0;
    const EigenSystem es = jacobi_eigensolve_sorted(a);
    CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(es.values[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("jacobi diagonalizes random symmetric matrices") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 8 + trial * 3;
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                a(i, j) = a(j, i) = dist(rng);
        const EigenSystem es = jacobi_eigensolve_sorted(a);

        // residual ||A v - lambda v|| per eigenpair
        for (std::size_t k = 0; k < n; ++k) {
            const auto v = es.vectors.column(k);
            const auto av = matvec(a, v);
            double residual = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                residual = std::max(residual, std::fabs(av[i] - es.values[k] * v[i]));
            CHECK(residual < 1e-12);
        }
        // orthonormal eigenvectors
        const Matrix vtv = es.vectors.transposed() * es.vectors;
        const Matrix diff = vtv - Matrix::identity(n);
        CHECK(diff.max_abs() < 1e-12);
    }
}

TEST_CASE("matrix product against hand values") {
    Matrix a(2, 3), b(3, 2);
    int v = 1;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            a(i, j) = v++;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            b(i, j) = v++;
    const Matrix c = a * b;
    CHECK(c(0, 0) == doctest::Approx(1 * 7 + 2 * 9 + 3 * 11));
    CHECK(c(1, 1) == doctest::Approx(4 * 8 + 5 * 10 + 6 * 12));
}
