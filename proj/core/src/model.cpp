#include "upb/model.hpp"

#include <cmath>

namespace upb {

DriveDirection opposite(DriveDirection d) {
    return d == DriveDirection::FromLeft ? DriveDirection::FromRight : DriveDirection::FromLeft;
}

std::string to_string(DriveDirection d) {
    return d == DriveDirection::FromLeft ? "ccw-drive" : "cw-drive";
}

void PhysicalParams::validate() const {
    auto chk = [](double v, const char* name) {
        if (!(v > 0)) throw ConfigError(std::string("parameter must be positive: ") + name);
    };
    chk(wavelength, "wavelength_m");
    chk(Q_L, "q_factor_left");
    chk(Q_R, "q_factor_right");
    chk(Q_M, "q_factor_mech");
    chk(radius, "radius_m");
    chk(refractive_index, "refractive_index");
    chk(mass, "mass_kg");
    chk(input_power, "input_power_w");
    chk(temperature, "temperature_k");
    if (omega_spin < 0) throw ConfigError("omega_spin must be >= 0");
    if (refractive_index <= 1.0) throw ConfigError("refractive_index must exceed 1");
}

bool DimensionlessOverrides::any() const {
    return g_over_kappa || omega_m_over_kappa || j_over_kappa || drive_over_kappa ||
           delta_over_kappa || gamma_m_over_kappa;
}

bool DimensionlessOverrides::complete() const {
    // drive is optional: absent, eps_d falls back to the input-power formula
    return g_over_kappa && omega_m_over_kappa && j_over_kappa;
}

double fizeau_eta(const PhysicalParams& p) {
    double omega_R = 2.0 * M_PI * constants::c0 / p.wavelength;
    double n = p.refractive_index;
    return (n * p.radius * omega_R / constants::c0) *
           (1.0 - 1.0 / (n * n) - (p.wavelength / n) * p.dn_dlambda);
}

double fizeau_shift(const PhysicalParams& p) {
    double mag = fizeau_eta(p) * p.omega_spin;
    return p.direction == DriveDirection::FromLeft ? -mag : mag;
}

double thermal_occupation(double omega_m, double temperature) {
    if (temperature <= 0) return 0.0;
    double x = constants::hbar * omega_m / (constants::k_B * temperature);
    if (x > 700) return 0.0;
    return 1.0 / std::expm1(x);
}

ReducedParams ReducedParams::with_Delta(double Delta_new) const {
    ReducedParams r = *this;
    r.Delta_R = Delta_new + delta;
    r.Delta_L = Delta_new;
    return r;
}

ReducedParams ReducedParams::with_direction_flipped() const {
    ReducedParams r = *this;
    r.Delta_F = -Delta_F;
    return r;
}

ReducedParams reduce(const PhysicalParams& p, const DimensionlessOverrides& ov) {
    p.validate();
    if (!ov.complete()) {
        std::string missing;
        if (!ov.g_over_kappa) missing += " g_over_kappa";
        if (!ov.omega_m_over_kappa) missing += " omega_m_over_kappa";
        if (!ov.j_over_kappa) missing += " j_over_kappa";
        throw ConfigError(
            "incomplete dimensionless override set (the model is specified dimensionlessly); "
            "missing:" + missing);
    }

    ReducedParams rp;
    double omega_L = 2.0 * M_PI * constants::c0 / p.wavelength;
    rp.kappa_L = omega_L / p.Q_L;
    rp.kappa_R = omega_L / p.Q_R;
    double kappa = rp.kappa_L;
    rp.Delta_F = fizeau_shift(p);
    rp.temperature = p.temperature;

    rp.g = *ov.g_over_kappa * kappa;
    rp.omega_m = *ov.omega_m_over_kappa * kappa;
    rp.J = *ov.j_over_kappa * kappa;
    rp.gamma_m = ov.gamma_m_over_kappa ? *ov.gamma_m_over_kappa * kappa : rp.omega_m / p.Q_M;
    if (ov.drive_over_kappa) {
        rp.eps_d = *ov.drive_over_kappa * kappa;
    } else {
        rp.eps_d = std::sqrt(rp.kappa_L * p.input_power / (constants::hbar * omega_L));
    }

    rp.delta = rp.g * rp.g / rp.omega_m;
    double Delta = ov.delta_over_kappa ? *ov.delta_over_kappa * kappa : 0.0;
    rp.Delta_L = Delta;
    rp.Delta_R = Delta + rp.delta;
    rp.nbar_m = thermal_occupation(rp.omega_m, p.temperature);
    return rp;
}

double kerr_energy_shift(const ReducedParams& rp) {
    if (!(rp.omega_m > 0)) throw ConfigError("omega_m must be positive");
    return rp.g * rp.g / rp.omega_m;
}

ReducedParams in_kappa_units(const ReducedParams& rp) {
    ReducedParams r = rp;
    double k = rp.kappa_L;
    r.kappa_L /= k;
    r.kappa_R /= k;
    r.Delta_L /= k;
    r.Delta_R /= k;
    r.Delta_F /= k;
    r.J /= k;
    r.g /= k;
    r.omega_m /= k;
    r.gamma_m /= k;
    r.eps_d /= k;
    r.delta /= k;
    return r;
}

TensorOperator build_hamiltonian(HamiltonianKind kind, const ReducedParams& rp,
                                 const std::vector<int>& dims) {
    if (dims.size() != 3) throw InvalidDimensionError("expected three modes (L, R, phonon)");
    for (int d : dims)
        if (d < 2) throw InvalidDimensionError("every mode needs dimension >= 2 to carry the drive");

    const Complex I(0, 1);
    TensorOperator aL = embed(fock_destroy(dims[0]), 0, dims);
    TensorOperator aR = embed(fock_destroy(dims[1]), 1, dims);
    TensorOperator nL = embed(fock_number(dims[0]), 0, dims);
    TensorOperator nR = embed(fock_number(dims[1]), 1, dims);
    double DRp = rp.Delta_R + rp.Delta_F;

    TensorOperator hop = Complex(rp.J) * (aL.adjoint() * aR + aR.adjoint() * aL);
    TensorOperator drive = I * Complex(rp.eps_d) * (aL.adjoint() - aL);

    switch (kind) {
        case HamiltonianKind::FullOM: {
            TensorOperator b = embed(fock_destroy(dims[2]), 2, dims);
            TensorOperator nb = embed(fock_number(dims[2]), 2, dims);
            return Complex(rp.Delta_L) * nL + Complex(DRp) * nR + Complex(rp.omega_m) * nb +
                   hop + Complex(rp.g) * (nR * (b + b.adjoint())) + drive;
        }
        case HamiltonianKind::EffectiveKerr: {
            TensorOperator nb = embed(fock_number(dims[2]), 2, dims);
            return Complex(rp.Delta_L) * nL + Complex(DRp) * nR + Complex(rp.omega_m) * nb +
                   hop - Complex(rp.delta) * (nR * nR) + drive;
        }
        case HamiltonianKind::NonHermitian: {
            TensorOperator nb = embed(fock_number(dims[2]), 2, dims);
            const Complex half(0.5);
            return (Complex(rp.Delta_L) - I * half * Complex(rp.kappa_L)) * nL +
                   (Complex(DRp) - I * half * Complex(rp.kappa_R)) * nR +
                   (Complex(rp.omega_m) - I * half * Complex(rp.gamma_m)) * nb + hop -
                   Complex(rp.delta) * (nR * nR) + drive;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace upb
