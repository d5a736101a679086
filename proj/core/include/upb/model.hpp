#pragma once

#include <optional>
#include <string>

#include "upb/linalg.hpp"

namespace upb {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace constants {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_B = 1.380649e-23;      // J/K
inline constexpr double c0 = 299792458.0;        // m/s
}  // namespace constants

enum class DriveDirection {
    FromLeft,   // ccw drive, Delta_F < 0
    FromRight,  // cw drive, Delta_F > 0
};

DriveDirection opposite(DriveDirection d);
std::string to_string(DriveDirection d);

/// Raw laboratory quantities.
struct PhysicalParams {
    double wavelength = 1550e-9;   // m
    double Q_L = 3e7;
    double Q_R = 3e7;
    double Q_M = 1e4;
    double radius = 0.3e-3;        // m
    double refractive_index = 1.44;
    double dn_dlambda = 0.0;       // 1/m
    double mass = 10e-9;           // kg
    double input_power = 2e-17;    // W
    double omega_spin = 0.0;       // rad/s
    double temperature = 1e-4;     // K
    DriveDirection direction = DriveDirection::FromLeft;

    void validate() const;  // throws ConfigError
};

/// Dimensionless specification in units of kappa, mirroring the paper's
/// case tables. A complete set overrides the physically derived values.
struct DimensionlessOverrides {
    std::optional<double> g_over_kappa;
    std::optional<double> omega_m_over_kappa;
    std::optional<double> j_over_kappa;
    std::optional<double> drive_over_kappa;
    std::optional<double> delta_over_kappa;    // detuning sweep variable
    std::optional<double> gamma_m_over_kappa;  // else omega_m/Q_M

    bool any() const;
    bool complete() const;  // the required quadruple g, omega_m, J, drive
};

/// Model quantities, all rates in rad/s.
struct ReducedParams {
    double kappa_L = 0, kappa_R = 0;
    double Delta_L = 0, Delta_R = 0;  // Delta_L = Delta_R - delta = Delta
    double Delta_F = 0;               // signed by drive direction
    double J = 0;
    double g = 0;
    double omega_m = 0;
    double gamma_m = 0;
    double eps_d = 0;
    double nbar_m = 0;
    double delta = 0;  // g^2/omega_m
    double temperature = 0;  // K, kept for the fluctuation route

    double kappa() const { return kappa_L; }
    double Delta() const { return Delta_L; }
    ReducedParams with_Delta(double Delta_new) const;
    ReducedParams with_direction_flipped() const;
};

/// Fizeau drag coefficient eta in Delta_F = +/- eta * Omega (Eq. for the
/// rotation-induced shift of counter-propagating modes).
double fizeau_eta(const PhysicalParams& p);

/// Signed Fizeau shift in rad/s; FromLeft drive maps to negative shift.
double fizeau_shift(const PhysicalParams& p);

double thermal_occupation(double omega_m, double temperature);

ReducedParams reduce(const PhysicalParams& p, const DimensionlessOverrides& ov = {});

double kerr_energy_shift(const ReducedParams& rp);

enum class HamiltonianKind { FullOM, EffectiveKerr, NonHermitian };

/// Hamiltonian in units of hbar, frequencies as passed in rp (use a
/// kappa-scaled ReducedParams for dimensionless work). FullOM and
/// EffectiveKerr include the drive; NonHermitian adds -i*kappa/2 and
/// -i*gamma_m/2 diagonal loss terms.
TensorOperator build_hamiltonian(HamiltonianKind kind, const ReducedParams& rp,
                                 const std::vector<int>& dims);

/// ReducedParams rescaled so kappa_L = 1 (dimensionless working set).
ReducedParams in_kappa_units(const ReducedParams& rp);

}  // namespace upb
