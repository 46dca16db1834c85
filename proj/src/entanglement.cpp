#include "quasipin/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace qpin {

namespace {

double det3(const Matrix& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double trace_product(const Matrix& a, const Matrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            s += a(i, k) * b(k, i);
    return s;
}

} // namespace

Matrix adjugate3(const Matrix& m) {
    if (m.rows() != 3 || m.cols() != 3)
        throw std::invalid_argument("adjugate3 expects a 3x3 matrix");
    Matrix adj(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            // cofactor of (i,j), transposed into (j,i)
            adj(j, i) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
        }
    return adj;
}

TMeasureDecomposition t_measure(const AmplitudeTensor& tensor) {
    if (tensor.rank != 6)
        throw std::invalid_argument("the T-measure is defined over six modes");
    // 1-based index layout of the source arrangement
    const auto c = [&](int i, int j, int k) { return tensor.at(i - 1, j - 1, k - 1); };

    TMeasureDecomposition d;
    d.m1 = Matrix(3, 3);
    d.m2 = Matrix(3, 3);
    for (int r = 0; r < 3; ++r) {
        d.m1(r, 0) = c(r + 1, 5, 6);
        d.m1(r, 1) = -c(r + 1, 4, 6);
        d.m1(r, 2) = c(r + 1, 4, 5);
        d.m2(r, 0) = c(2, 3, r + 4);
        d.m2(r, 1) = -c(1, 3, r + 4);
        d.m2(r, 2) = c(1, 2, r + 4);
    }
    d.mu = c(1, 2, 3);
    d.nu = c(4, 5, 6);

    const double cross = trace_product(d.m1, d.m2) - d.mu * d.nu;
    d.value = 4.0 * (cross * cross - 4.0 * trace_product(adjugate3(d.m1), adjugate3(d.m2)) +
                     4.0 * d.mu * det3(d.m1) + 4.0 * d.nu * det3(d.m2));
    return d;
}

EntropyReport jaynes_entropy(const std::vector<double>& lambdas) {
    EntropyReport r;
    for (double l : lambdas) {
        if (l < -1e-12 || l > 1.0 + 1e-12)
            throw std::invalid_argument("occupation outside [0, 1]");
        const double contribution = l > 0.0 ? -l * std::log(l) : 0.0;
        r.contributions.push_back(contribution);
        r.value += contribution;
    }
    return r;
}

EntropyReport jaynes_entropy(const OccupationSpectrum& spectrum) {
    return jaynes_entropy(spectrum.lambdas);
}

} // namespace qpin
