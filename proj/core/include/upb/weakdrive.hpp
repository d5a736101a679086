#pragma once

#include "upb/master.hpp"

namespace upb {

struct WeakDriveAmplitudes {
    Complex C00{1.0}, C10, C01, C20, C11, C02;
    double g2 = 0;
    bool hierarchy_ok = true;  // |C2| << |C1| << |C00| at weak drive
};

struct QuarticProblem {
    // a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0, coefficients in the detuning
    double a0, a1, a2, a3, a4;
    double Delta_F, J, kappa;
};

QuarticProblem quartic_problem(double J, double kappa, double Delta_F);

struct ClosedFormAux {
    double A, B, C, D, E, F;
    Complex z1, z2, z3;
    Complex lambda1, lambda2;
    double lambda3 = 0, lambda4 = 0;
    int sgnE = 0;
    bool branch_ambiguous = false;  // complex intermediates left the real axis
};

struct ClosedFormReport {
    ClosedFormAux aux;
    double Delta_opt = 0;
    double g_opt = 0;
    bool g_opt_valid = false;
    double quartic_residual = 0;       // |sum a_i D^i| relative
    // the printed a1 carries a dangling "+3"; both readings are evaluated
    // against the defining optimality system and the better one reported
    double residual_literal_a1 = 0;
    double residual_consistent_a1 = 0;
};

struct OptimalResult {
    double Delta_opt = 0;
    double g_opt = 0;
    double g2_at_opt = 0;
    double c20_over_c10sq = 0;
    bool local_min_confirmed = false;
    std::vector<double> quartic_real_roots;
    std::vector<double> rejected_roots;  // real roots with delta <= 0
    ClosedFormReport closed_form;
};

/// Steady-state ansatz amplitudes under the non-Hermitian Hamiltonian with
/// C00 = 1; g2 = 2|C20|^2 / |C10|^4.
WeakDriveAmplitudes amplitudes(const ReducedParams& rp);

double g2_weakdrive(const ReducedParams& rp);

/// Kerr shift delta implied by a candidate optimum Delta through the second
/// optimality equation.
double delta_from_optimality(double Delta, double kappa, double Delta_F);

/// Numeric quartic path (authoritative) plus the paper's closed-form radical
/// path (reported alongside). rp supplies omega_m, eps_d and the fixed J,
/// kappa, Delta_F.
OptimalResult optimal_params(const ReducedParams& rp);

ClosedFormReport closed_form_optima(const QuarticProblem& q, double omega_m);

struct G3Point {
    double Delta, g, g2, g3;
    bool ok = false;
    std::string error;
};

/// Master-route (g2, g3) table over a (Delta, g) grid; truncation keeps at
/// least 5 left-cavity photons.
std::vector<G3Point> g3_scan(const ReducedParams& rp, const std::vector<double>& Deltas,
                             const std::vector<double>& gs,
                             const std::vector<int>& dims = {5, 4, 4});

}  // namespace upb
