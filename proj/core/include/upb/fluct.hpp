#pragma once

#include "upb/master.hpp"

namespace upb {

/// Semiclassical steady state of the nonlinear Langevin equations.
struct MeanFieldPoint {
    Complex alpha;  // left cavity
    Complex beta;   // right cavity
    double q_s = 0;
    double p_s = 0;  // zero at steady state
    std::vector<Complex> cubic_roots;
    int selected_root_index = -1;
    int real_root_count = 0;
};

struct CubicCoefficients {
    double b0, b1, b2, b3;
};

/// Frequency-domain solution coefficients of the linearized fluctuation
/// equations at one frequency; both the main-text (A1..A5) construction and
/// the chain-elimination construction are kept and cross-checked.
struct SpectralCoefficients {
    Complex E, F, G, H, Q;
    // main-text auxiliaries
    Complex chi, DeltaR2, V1p, V1m, V2p, V2m, A1, A2, A3, A4, A5;
    // chain-form intermediates
    Complex M, N, T, V, U, FL;
    double cross_check_rel = 0;  // disagreement between the two constructions
};

CubicCoefficients cubic_coefficients(const ReducedParams& rp);

MeanFieldPoint mean_field(const ReducedParams& rp);

SpectralCoefficients spectral_coeffs(double omega, const ReducedParams& rp,
                                     const MeanFieldPoint& mf, double cross_tol = 1e-9);

/// Mechanical Brownian noise spectrum, (omega gamma_m / 2 omega_m)
/// [1 + coth(hbar omega / 2 k_B T)]; T = 0 handled as the one-sided limit.
double brownian_spectrum(double omega, const ReducedParams& rp);

struct Correlators {
    double R1;
    Complex R2;
};

/// R1 = <da^dag da>, R2 = <da da> by frequency-domain integration of the
/// noise-propagated spectra. Window expands until the tail is negligible.
Correlators correlators(const ReducedParams& rp, const MeanFieldPoint& mf,
                        double rel_tol = 1e-6, double tail_tol = 1e-8);

enum class R3Form {
    Wick,    // 2 R1^2 + |R2|^2
    Literal  // 2 R1 + |R2|^2, as printed
};

double g2_semiclassical(const ReducedParams& rp, R3Form form = R3Form::Wick);

}  // namespace upb
