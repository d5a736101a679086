#pragma once

#include "upb/model.hpp"

namespace upb {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CollapseChannel {
    TensorOperator op;
    double rate;  // rad/s, >= 0
};

struct SteadyStateResult {
    DensityMatrix rho;
    double photon_number_L = 0;
    double g2_L = 0;
    double g3_L = 0;
    bool has_g3 = false;
    double residual = 0;
    std::vector<int> truncation;
    bool converged = false;
};

/// The paper's dissipator set: photon decay on both cavities plus thermal
/// phonon channels at occupation nbar_m.
std::vector<CollapseChannel> standard_channels(const ReducedParams& rp,
                                               const std::vector<int>& dims);

/// Vectorized (column-major) Liouvillian of the Lindblad master equation,
/// rates entering as (rate/2)(2 o rho o^dag - o^dag o rho - rho o^dag o).
SpMat build_liouvillian(const TensorOperator& H, const std::vector<CollapseChannel>& channels);

/// Kernel of L under the trace constraint, via the bordered solve; dense
/// below the size threshold, sparse above.
DensityMatrix solve_steady(const SpMat& L, const std::vector<int>& dims);

/// Normalized n-th order zero-delay correlation <a^dag^n a^n>/<a^dag a>^n
/// for the given mode.
double g_n(const DensityMatrix& rho, int mode, int n);

double mode_occupation(const DensityMatrix& rho, int mode);

/// One full solve at a fixed truncation.
SteadyStateResult solve_point(const ReducedParams& rp, const std::vector<int>& dims,
                              HamiltonianKind kind = HamiltonianKind::FullOM,
                              bool want_g3 = false);

inline const std::vector<std::vector<int>> kDefaultLadder = {{3, 3, 4}, {4, 4, 5}, {5, 5, 6}};

/// Runs the truncation ladder; converged when successive g2 values agree to
/// rel_tol. Returns the finest result, stopping early once converged.
SteadyStateResult converged_g2(const ReducedParams& rp,
                               const std::vector<std::vector<int>>& ladder = kDefaultLadder,
                               double rel_tol = 1e-3, bool want_g3 = false);

}  // namespace upb
