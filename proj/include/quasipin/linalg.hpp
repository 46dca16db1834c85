#ifndef QUASIPIN_LINALG_HPP
#define QUASIPIN_LINALG_HPP

#include <cstddef>
#include <vector>

namespace qpin {

/// Small dense row-major matrix. Everything in this project is tiny
/// (dimension <= ~120), so no attempt is made at blocking or views.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Matrix transposed() const;
    std::vector<double> column(std::size_t j) const;

    double frobenius_norm() const;
    double max_abs() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

/// Eigenpairs of a real symmetric matrix; vectors stores the k-th
/// eigenvector in column k, so that A V = V diag(values).
struct EigenSystem {
    std::vector<double> values;
    Matrix vectors;
};

/// Cyclic Jacobi diagonalization for real symmetric matrices.
/// Sweeps until the off-diagonal Frobenius norm drops below
/// rel_threshold * ||A||_F. Throws std::runtime_error if the rotation
/// sweep cap is reached with the off-diagonal norm still above
/// 1e-12 * ||A||_F. Results are unsorted.
EigenSystem jacobi_eigensolve(Matrix a, double rel_threshold = 1e-14, int max_sweeps = 128);

/// Same as jacobi_eigensolve but with eigenpairs sorted by ascending value.
EigenSystem jacobi_eigensolve_sorted(const Matrix& a);

} // namespace qpin

#endif
