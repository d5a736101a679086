#include "upb/master.hpp"

#include <Eigen/SparseLU>

namespace upb {

namespace {

SpMat sparse_kron(const SpMat& A, const SpMat& B) {
    SpMat out(A.rows() * B.rows(), A.cols() * B.cols());
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(A.nonZeros() * B.nonZeros());
    for (int ka = 0; ka < A.outerSize(); ++ka)
        for (SpMat::InnerIterator ia(A, ka); ia; ++ia)
            for (int kb = 0; kb < B.outerSize(); ++kb)
                for (SpMat::InnerIterator ib(B, kb); ib; ++ib)
                    trips.emplace_back(int(ia.row() * B.rows() + ib.row()),
                                       int(ia.col() * B.cols() + ib.col()),
                                       ia.value() * ib.value());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SpMat sparse_identity(int n) {
    SpMat id(n, n);
    id.setIdentity();
    return id;
}

}  // namespace

std::vector<CollapseChannel> standard_channels(const ReducedParams& rp,
                                               const std::vector<int>& dims) {
    TensorOperator aL = embed(fock_destroy(dims[0]), 0, dims);
    TensorOperator aR = embed(fock_destroy(dims[1]), 1, dims);
    TensorOperator b = embed(fock_destroy(dims[2]), 2, dims);
    std::vector<CollapseChannel> ch;
    ch.push_back({aL, rp.kappa_L});
    ch.push_back({aR, rp.kappa_R});
    ch.push_back({b, rp.gamma_m * (rp.nbar_m + 1.0)});
    if (rp.nbar_m > 0) ch.push_back({b.adjoint(), rp.gamma_m * rp.nbar_m});
    return ch;
}

SpMat build_liouvillian(const TensorOperator& H, const std::vector<CollapseChannel>& channels) {
    const int N = H.hilbert_dim();
    const SpMat id = sparse_identity(N);
    const Complex I(0, 1);

    // column-major vectorization: vec(A X B) = (B^T kron A) vec(X)
    SpMat Ht = SpMat(H.data.transpose());
    SpMat L = -I * (sparse_kron(id, H.data) - sparse_kron(Ht, id));

    for (const auto& ch : channels) {
        if (ch.rate < 0) throw InvalidDimensionError("collapse rate must be non-negative");
        if (ch.rate == 0) continue;
        if (ch.op.hilbert_dim() != N) throw InvalidDimensionError("channel dimension mismatch");
        const SpMat& o = ch.op.data;
        SpMat oc = o.conjugate();
        SpMat odo = SpMat(o.adjoint() * o);
        SpMat odoT = SpMat(odo.transpose());
        L += Complex(ch.rate / 2.0) *
             SpMat(Complex(2.0) * sparse_kron(oc, o) - sparse_kron(id, odo) - sparse_kron(odoT, id));
    }
    L.makeCompressed();
    return L;
}

DensityMatrix solve_steady(const SpMat& L, const std::vector<int>& dims) {
    int N = 1;
    for (int d : dims) N *= d;
    if (L.rows() != Eigen::Index(N) * N) throw InvalidDimensionError("Liouvillian size mismatch");

    Vec trace_functional = Vec::Zero(Eigen::Index(N) * N);
    for (int i = 0; i < N; ++i) trace_functional(Eigen::Index(i) * N + i) = 1.0;

    Vec v;
    if (Eigen::Index(N) * N > kDenseSolveLimit)
        v = null_vector_with_constraint(L, trace_functional, Complex(1.0));
    else
        v = null_vector_with_constraint(Mat(L), trace_functional, Complex(1.0));

    DensityMatrix rho;
    rho.dims = dims;
    rho.data = Eigen::Map<const Mat>(v.data(), N, N);
    double herm = rho.hermiticity_residual();
    rho.normalize();
    if (herm > 1e-8)
        throw NumericalError("steady state drifted from Hermiticity: residual " +
                             std::to_string(herm));
    return rho;
}

double mode_occupation(const DensityMatrix& rho, int mode) {
    TensorOperator n = embed(fock_number(rho.dims[mode]), mode, rho.dims);
    return (n.data * rho.data).eval().trace().real();
}

double g_n(const DensityMatrix& rho, int mode, int n) {
    if (rho.dims[mode] <= n) throw InvalidDimensionError("mode truncation too small for g_n");
    Mat a = fock_destroy(rho.dims[mode]);
    Mat an = Mat::Identity(a.rows(), a.cols());
    for (int k = 0; k < n; ++k) an = a * an;
    TensorOperator top = embed(Mat(an.adjoint() * an), mode, rho.dims);
    double num = (top.data * rho.data).eval().trace().real();
    double occ = mode_occupation(rho, mode);
    if (std::pow(std::abs(occ), n) < 1e-300)
        throw NumericalError("correlation undefined: mode occupation vanishes");
    return num / std::pow(occ, n);
}

SteadyStateResult solve_point(const ReducedParams& rp, const std::vector<int>& dims,
                              HamiltonianKind kind, bool want_g3) {
    TensorOperator H = build_hamiltonian(kind, rp, dims);
    SpMat L = build_liouvillian(H, standard_channels(rp, dims));
    SteadyStateResult res;
    res.rho = solve_steady(L, dims);
    res.truncation = dims;
    res.photon_number_L = mode_occupation(res.rho, 0);
    res.g2_L = g_n(res.rho, 0, 2);
    if (want_g3 && dims[0] > 3) {
        res.g3_L = g_n(res.rho, 0, 3);
        res.has_g3 = true;
    }
    Eigen::Map<const Vec> v(res.rho.data.data(), res.rho.data.size());
    Vec lv = L * v;
    double l_norm = 0;
    for (int k = 0; k < L.outerSize(); ++k)
        for (SpMat::InnerIterator it(L, k); it; ++it) l_norm = std::max(l_norm, std::abs(it.value()));
    res.residual = l_norm > 0 ? lv.norm() / l_norm : lv.norm();
    return res;
}

SteadyStateResult converged_g2(const ReducedParams& rp,
                               const std::vector<std::vector<int>>& ladder, double rel_tol,
                               bool want_g3) {
    if (ladder.size() < 2) throw InvalidDimensionError("truncation ladder needs >= 2 rungs");
    SteadyStateResult prev, cur;
    bool have_prev = false;
    for (const auto& dims : ladder) {
        cur = solve_point(rp, dims, HamiltonianKind::FullOM, want_g3);
        if (have_prev && cur.g2_L != 0 &&
            std::abs(cur.g2_L - prev.g2_L) / std::abs(cur.g2_L) < rel_tol) {
            cur.converged = true;
            return cur;
        }
        prev = cur;
        have_prev = true;
    }
    cur.converged = false;
    return cur;
}

}  // namespace upb
