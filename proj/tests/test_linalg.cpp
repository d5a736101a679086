#include <doctest.h>

#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "upb/linalg.hpp"
#include "upb/master.hpp"

using namespace upb;

TEST_CASE("fock_destroy smallest space") {
    Mat a = fock_destroy(2);
    CHECK(a(0, 0) == Complex(0));
    CHECK(a(0, 1) == Complex(1));
    CHECK(a(1, 0) == Complex(0));
    CHECK(a(1, 1) == Complex(0));
}

TEST_CASE("fock_destroy rejects dim < 2") {
    CHECK_THROWS_AS(fock_destroy(1), InvalidDimensionError);
    CHECK_THROWS_AS(fock_destroy(0), InvalidDimensionError);
}

TEST_CASE("number operator diagonal") {
    Mat n = fock_number(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(n(i, j) == (i == j ? Complex(i) : Complex(0)));
}

TEST_CASE("truncated commutator [a, adag]") {
    const int N = 7;
    Mat a = fock_destroy(N);
    Mat comm = a * a.adjoint() - a.adjoint() * a;
    // identity except the bottom-right entry, which is 1 - N
    for (int i = 0; i < N; ++i) {
        double expected = (i == N - 1) ? 1.0 - N : 1.0;
        CHECK(std::abs(comm(i, i) - expected) < 1e-14);
    }
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (i != j) CHECK(std::abs(comm(i, j)) < 1e-14);
}

TEST_CASE("embed annihilates the first mode of |1,1>") {
    std::vector<int> dims{2, 2};
    TensorOperator aL = embed(fock_destroy(2), 0, dims);
    Vec state = Vec::Zero(4);
    state(1 * 2 + 1) = 1.0;  // |1,1> in row-major (mode0-major) Kronecker order
    Vec out = aL.dense() * state;
    // expect |0,1>, amplitude 1
    CHECK(std::abs(out(0 * 2 + 1) - 1.0) < 1e-14);
    CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("embedded operators on disjoint modes commute exactly") {
    std::vector<int> dims{3, 2, 4};
    TensorOperator a = embed(fock_destroy(3), 0, dims);
    TensorOperator b = embed(fock_destroy(4), 2, dims);
    Mat diff = (a * b - b * a).dense();
    CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("embed matches brute-force Kronecker product") {
    std::vector<int> dims{3, 3, 3};
    Mat n = fock_number(3);
    Mat id = Mat::Identity(3, 3);
    Mat expected = Eigen::kroneckerProduct(id, Eigen::kroneckerProduct(n, id).eval()).eval();
    Mat got = embed(n, 1, dims).dense();
    CHECK((got - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kron associativity is bit-for-bit") {
    Mat A = fock_destroy(2), B = fock_number(3), C = fock_destroy(4).adjoint();
    Mat left = Eigen::kroneckerProduct(Eigen::kroneckerProduct(A, B).eval(), C).eval();
    Mat right = Eigen::kroneckerProduct(A, Eigen::kroneckerProduct(B, C).eval()).eval();
    for (int i = 0; i < left.rows(); ++i)
        for (int j = 0; j < left.cols(); ++j)
            CHECK(left(i, j) == right(i, j));
}

TEST_CASE("solve_linear identity and diagonal systems") {
    Mat I2 = Mat::Identity(2, 2);
    Vec rhs(2);
    rhs << Complex(3, 1), Complex(-2, 0);
    Vec x = solve_linear(I2, rhs);
    CHECK((x - rhs).norm() < 1e-14);

    Mat D = Mat::Zero(2, 2);
    D(0, 0) = 2.0;
    D(1, 1) = 4.0;
    Vec rhs2(2);
    rhs2 << 2.0, 4.0;
    Vec y = solve_linear(D, rhs2);
    CHECK(std::abs(y(0) - 1.0) < 1e-14);
    CHECK(std::abs(y(1) - 1.0) < 1e-14);
}

TEST_CASE("solve_linear agrees with explicit inverse on random 50x50") {
    std::mt19937 rng(42);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 50;
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = Complex(gauss(rng), gauss(rng));
    A += 10.0 * Mat::Identity(n, n);  // keep it well conditioned
    Vec rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = Complex(gauss(rng), gauss(rng));
    Vec x = solve_linear(A, rhs);
    Vec x_inv = A.inverse() * rhs;
    CHECK((x - x_inv).norm() / x_inv.norm() < 1e-9);
    CHECK((A * x - rhs).norm() / rhs.norm() < 1e-10);
}

TEST_CASE("solve_linear reports singular systems with a condition estimate") {
    Mat A = Mat::Zero(3, 3);
    A(0, 0) = 1.0;
    A(1, 1) = 1.0;  // rank 2
    Vec rhs = Vec::Ones(3);
    CHECK_THROWS_AS(solve_linear(A, rhs), SingularSystemError);
}

TEST_CASE("null vector of diag(0,1,2) with first-component constraint") {
    Mat M = Mat::Zero(3, 3);
    M(1, 1) = 1.0;
    M(2, 2) = 2.0;
    Vec constraint = Vec::Zero(3);
    constraint(0) = 1.0;
    Vec v = null_vector_with_constraint(M, constraint, 1.0);
    CHECK(std::abs(v(0) - 1.0) < 1e-12);
    CHECK(std::abs(v(1)) < 1e-12);
    CHECK(std::abs(v(2)) < 1e-12);
}

TEST_CASE("null vector with degenerate kernel is rejected") {
    Mat M = Mat::Zero(3, 3);
    M(2, 2) = 1.0;  // two-dimensional kernel
    Vec constraint = Vec::Zero(3);
    constraint(0) = 1.0;
    CHECK_THROWS_AS(null_vector_with_constraint(M, constraint, 1.0),
                    DegenerateSteadyStateError);
}

// Steady state of a single decaying cavity: kernel of the Liouvillian with
// the trace constraint must be the vacuum projector.
TEST_CASE("decaying cavity kernel is the vacuum state") {
    std::vector<int> dims{4};
    TensorOperator H(dims, SpMat(4, 4));  // H = 0
    TensorOperator a = embed(fock_destroy(4), 0, dims);
    SpMat L = build_liouvillian(H, {{a, 1.0}});
    DensityMatrix rho = solve_steady(L, dims);
    CHECK(std::abs(rho.data(0, 0) - 1.0) < 1e-10);
    CHECK(rho.data.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-9));
}

// Driven linear cavity: steady state is the coherent state with
// alpha = eps / (kappa/2 + i Delta); check occupation and coherence.
TEST_CASE("driven cavity kernel matches the coherent-state solution") {
    const double kappa = 1.0, Delta = 0.3, eps = 0.05;
    std::vector<int> dims{8};
    Mat a1 = fock_destroy(8);
    Mat Hd = Delta * fock_number(8) + Complex(0, 1) * eps * (a1.adjoint() - a1);
    TensorOperator H(dims, Hd.sparseView());
    TensorOperator a = embed(a1, 0, dims);
    SpMat L = build_liouvillian(H, {{a, kappa}});
    DensityMatrix rho = solve_steady(L, dims);
    Complex alpha = eps / Complex(kappa / 2.0, Delta);
    Complex a_mean = (a.dense() * rho.data).trace();
    CHECK(std::abs(a_mean - alpha) < 1e-8);
    CHECK(mode_occupation(rho, 0) == doctest::Approx(std::norm(alpha)).epsilon(1e-8));
}

TEST_CASE("eigen_min_hermitian basic spectra") {
    CHECK(eigen_min_hermitian(Mat::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-12));
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = -1.0;
    D(1, 1) = 3.0;
    CHECK(eigen_min_hermitian(D) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("eigen_min_hermitian matches characteristic-polynomial roots on 3x3") {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat A(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = Complex(gauss(rng), gauss(rng));
    Mat H = (A + A.adjoint()) / 2.0;
    // char poly x^3 + c2 x^2 + c1 x + c0 from invariants
    double tr = H.trace().real();
    double tr2 = (H * H).trace().real();
    double det = H.determinant().real();
    double c2 = -tr, c1 = (tr * tr - tr2) / 2.0, c0 = -det;
    // trigonometric solution of the depressed cubic
    double p = c1 - c2 * c2 / 3.0;
    double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    double m = 2.0 * std::sqrt(-p / 3.0);
    double phi = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
    double lam_min = 1e300;
    for (int k = 0; k < 3; ++k)
        lam_min = std::min(lam_min,
                           m * std::cos(phi - 2.0 * M_PI * k / 3.0) - c2 / 3.0);
    CHECK(eigen_min_hermitian(H) == doctest::Approx(lam_min).epsilon(1e-9));
}

TEST_CASE("eigen_min_hermitian rejects non-Hermitian input") {
    Mat A = Mat::Zero(2, 2);
    A(0, 1) = 1.0;  // not Hermitian
    CHECK_THROWS(eigen_min_hermitian(A));
}

TEST_CASE("embedded commutator equals embedded single-mode commutator") {
    std::vector<int> dims{3, 4};
    Mat a1 = fock_destroy(4);
    Mat comm1 = a1 * a1.adjoint() - a1.adjoint() * a1;
    TensorOperator a = embed(a1, 1, dims);
    Mat commE = (a * a.adjoint() - a.adjoint() * a).dense();
    Mat expected = embed(comm1, 1, dims).dense();
    CHECK((commE - expected).cwiseAbs().maxCoeff() == 0.0);
}
