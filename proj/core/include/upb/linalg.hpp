#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace upb {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<Complex>;

struct InvalidDimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularSystemError : std::runtime_error {
    double condition_estimate;
    explicit SingularSystemError(const std::string& what, double cond)
        : std::runtime_error(what), condition_estimate(cond) {}
};

struct DegenerateSteadyStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operator on a truncated tensor-product Hilbert space. Mode ordering is
/// fixed project-wide as (photon-L, photon-R, phonon).
struct TensorOperator {
    std::vector<int> dims;
    SpMat data;

    TensorOperator() = default;
    TensorOperator(std::vector<int> d, SpMat m);

    int hilbert_dim() const;
    Mat dense() const { return Mat(data); }
    TensorOperator adjoint() const;

    TensorOperator operator*(const TensorOperator& rhs) const;
    TensorOperator operator+(const TensorOperator& rhs) const;
    TensorOperator operator-(const TensorOperator& rhs) const;
    friend TensorOperator operator*(Complex s, const TensorOperator& op);
};

/// Density operator with cached trace. Validity checks are explicit so the
/// solvers can report how far a steady state drifted from physicality.
struct DensityMatrix {
    std::vector<int> dims;
    Mat data;

    double hermiticity_residual() const;   // max |rho - rho^dag| entrywise
    Complex trace() const { return data.trace(); }
    void normalize();                      // hermitize + divide by trace
};

/// Truncated annihilation operator, <n-1|a|n> = sqrt(n). Throws
/// InvalidDimensionError for dim < 2.
Mat fock_destroy(int dim);

/// Number operator a^dag a on a single mode.
Mat fock_number(int dim);

/// Kronecker-embed a single-mode operator at mode_index, identity elsewhere.
TensorOperator embed(const Mat& op, int mode_index, const std::vector<int>& dims);

TensorOperator identity_op(const std::vector<int>& dims);

/// Dense LU solve with a reciprocal-condition estimate; relative residual is
/// verified against `residual_tol`.
Vec solve_linear(const Mat& A, const Vec& rhs, double residual_tol = 1e-10);

/// Solve M v = 0 subject to constraint^dag v = value, assuming a (numerically)
/// one-dimensional kernel. Implemented as a bordered system: one row of M is
/// replaced by the constraint functional. Dense or sparse depending on size.
Vec null_vector_with_constraint(const Mat& M, const Vec& constraint, Complex value,
                                double kernel_tol = 1e-9);
Vec null_vector_with_constraint(const SpMat& M, const Vec& constraint, Complex value,
                                double kernel_tol = 1e-9);

/// Smallest eigenvalue of a Hermitian matrix. Input hermiticity is checked
/// to `herm_tol` (contract violation otherwise).
double eigen_min_hermitian(const Mat& H, double herm_tol = 1e-10);

/// Matrices up to this edge size are handled by dense factorizations;
/// anything larger (Liouvillians at default truncations) goes sparse.
inline constexpr int kDenseSolveLimit = 500;

}  // namespace upb
