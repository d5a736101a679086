#include "upb/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/UmfPackSupport>

namespace upb {

namespace {

int product(const std::vector<int>& dims) {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

}  // namespace

TensorOperator::TensorOperator(std::vector<int> d, SpMat m) : dims(std::move(d)), data(std::move(m)) {
    int n = product(dims);
    if (data.rows() != n || data.cols() != n)
        throw InvalidDimensionError("operator matrix does not match mode dimensions");
}

int TensorOperator::hilbert_dim() const { return product(dims); }

TensorOperator TensorOperator::adjoint() const {
    return TensorOperator(dims, SpMat(data.adjoint()));
}

TensorOperator TensorOperator::operator*(const TensorOperator& rhs) const {
    if (dims != rhs.dims) throw InvalidDimensionError("mode dimension mismatch");
    return TensorOperator(dims, SpMat(data * rhs.data));
}

TensorOperator TensorOperator::operator+(const TensorOperator& rhs) const {
    if (dims != rhs.dims) throw InvalidDimensionError("mode dimension mismatch");
    return TensorOperator(dims, SpMat(data + rhs.data));
}

TensorOperator TensorOperator::operator-(const TensorOperator& rhs) const {
    if (dims != rhs.dims) throw InvalidDimensionError("mode dimension mismatch");
    return TensorOperator(dims, SpMat(data - rhs.data));
}

TensorOperator operator*(Complex s, const TensorOperator& op) {
    return TensorOperator(op.dims, SpMat(s * op.data));
}

double DensityMatrix::hermiticity_residual() const {
    return (data - data.adjoint()).cwiseAbs().maxCoeff();
}

void DensityMatrix::normalize() {
    data = 0.5 * (data + data.adjoint().eval());
    Complex tr = data.trace();
    if (std::abs(tr) < 1e-300)
        throw DegenerateSteadyStateError("density matrix has vanishing trace");
    data /= tr;
}

Mat fock_destroy(int dim) {
    if (dim < 2) throw InvalidDimensionError("Fock truncation must be at least 2");
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Mat fock_number(int dim) {
    if (dim < 1) throw InvalidDimensionError("Fock truncation must be at least 1");
    Mat n = Mat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

TensorOperator embed(const Mat& op, int mode_index, const std::vector<int>& dims) {
    if (op.rows() != op.cols()) throw InvalidDimensionError("embedded operator must be square");
    if (mode_index < 0 || mode_index >= int(dims.size()))
        throw InvalidDimensionError("mode index out of range");
    if (op.rows() != dims[mode_index])
        throw InvalidDimensionError("operator size does not match mode dimension");

    // Kronecker ordering: mode 0 is the slowest index, kron(op0, op1, ...).
    int left = 1, right = 1;
    for (int i = 0; i < mode_index; ++i) left *= dims[i];
    for (int i = mode_index + 1; i < int(dims.size()); ++i) right *= dims[i];
    int d = dims[mode_index];
    int n = left * d * right;

    std::vector<Eigen::Triplet<Complex>> trips;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            Complex v = op(r, c);
            if (v == Complex(0)) continue;
            for (int l = 0; l < left; ++l)
                for (int q = 0; q < right; ++q)
                    trips.emplace_back((l * d + r) * right + q, (l * d + c) * right + q, v);
        }
    SpMat m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return TensorOperator(dims, std::move(m));
}

TensorOperator identity_op(const std::vector<int>& dims) {
    int n = product(dims);
    SpMat m(n, n);
    m.setIdentity();
    return TensorOperator(dims, std::move(m));
}

Vec solve_linear(const Mat& A, const Vec& rhs, double residual_tol) {
    if (A.rows() != A.cols() || A.rows() != rhs.size())
        throw InvalidDimensionError("solve_linear shape mismatch");
    Eigen::PartialPivLU<Mat> lu(A);
    Vec x = lu.solve(rhs);
    double rhs_norm = rhs.norm();
    double res = rhs_norm > 0 ? (A * x - rhs).norm() / rhs_norm : (A * x).norm();
    if (!x.allFinite() || res > residual_tol) {
        // estimate condition via |A| * |A^-1 e| on a probe vector
        Vec probe = Vec::Ones(A.rows());
        double cond = A.cwiseAbs().maxCoeff() * lu.solve(probe).norm() / probe.norm() * A.rows();
        throw SingularSystemError("linear system singular to tolerance", cond);
    }
    return x;
}

Vec null_vector_with_constraint(const Mat& M, const Vec& constraint, Complex value,
                                double kernel_tol) {
    int n = int(M.rows());
    if (M.cols() != n || constraint.size() != n)
        throw InvalidDimensionError("null_vector shape mismatch");
    Mat B = M;
    B.row(0) = constraint.adjoint();
    Vec rhs = Vec::Zero(n);
    rhs(0) = value;
    Eigen::FullPivLU<Mat> lu(B);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible())
        throw DegenerateSteadyStateError(
            "bordered system singular: kernel not one-dimensional to tolerance");
    Vec v = lu.solve(rhs);
    // residual excluding the replaced row
    Vec mv = M * v;
    mv(0) = 0;
    double m_norm = M.cwiseAbs().maxCoeff();
    if (!v.allFinite() || mv.norm() > kernel_tol * std::max(m_norm, 1.0) * v.norm() * n)
        throw DegenerateSteadyStateError("kernel not one-dimensional to tolerance");
    return v;
}

Vec null_vector_with_constraint(const SpMat& M, const Vec& constraint, Complex value,
                                double kernel_tol) {
    int n = int(M.rows());
    if (M.cols() != n || constraint.size() != n)
        throw InvalidDimensionError("null_vector shape mismatch");

    // rebuild with row 0 replaced by the constraint functional
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(M.nonZeros() + n);
    for (int k = 0; k < M.outerSize(); ++k)
        for (SpMat::InnerIterator it(M, k); it; ++it)
            if (it.row() != 0) trips.emplace_back(int(it.row()), int(it.col()), it.value());
    for (int j = 0; j < n; ++j) {
        Complex c = std::conj(constraint(j));
        if (c != Complex(0)) trips.emplace_back(0, j, c);
    }
    SpMat B(n, n);
    B.setFromTriplets(trips.begin(), trips.end());
    B.makeCompressed();

    // UMFPACK; the Liouvillian pattern is structurally near-symmetric, where
    // the symmetric strategy with nested-dissection ordering is several times
    // faster than the default
    Eigen::UmfPackLU<SpMat> lu;
    lu.umfpackControl()[UMFPACK_STRATEGY] = UMFPACK_STRATEGY_SYMMETRIC;
    lu.umfpackControl()[UMFPACK_ORDERING] = UMFPACK_ORDERING_METIS;
    lu.compute(B);
    if (lu.info() != Eigen::Success)
        throw DegenerateSteadyStateError("sparse bordered factorization failed");
    Vec rhs = Vec::Zero(n);
    rhs(0) = value;
    Vec v = lu.solve(rhs);

    Vec mv = M * v;
    mv(0) = 0;
    double m_norm = 0;
    for (int k = 0; k < M.outerSize(); ++k)
        for (SpMat::InnerIterator it(M, k); it; ++it)
            m_norm = std::max(m_norm, std::abs(it.value()));
    if (!v.allFinite() || mv.norm() > kernel_tol * std::max(m_norm, 1.0) * v.norm() * n)
        throw DegenerateSteadyStateError("kernel not one-dimensional to tolerance");
    return v;
}

double eigen_min_hermitian(const Mat& H, double herm_tol) {
    if (H.rows() != H.cols()) throw InvalidDimensionError("eigen_min_hermitian needs square input");
    double dev = (H - H.adjoint()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if (dev > herm_tol * scale)
        throw InvalidDimensionError("input not Hermitian to tolerance");
    Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace upb
