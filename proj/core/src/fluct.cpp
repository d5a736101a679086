#include "upb/fluct.hpp"

#include <Eigen/Eigenvalues>

#include "upb/quad.hpp"

namespace upb {

namespace {

// g_b = sqrt(2) g is the coupling in the (q, p) quadrature convention of the
// Langevin equations.
double g_b(const ReducedParams& rp) { return std::sqrt(2.0) * rp.g; }

std::vector<Complex> cubic_roots_real_coeffs(double c3, double c2, double c1, double c0) {
    if (c3 == 0) {
        if (c2 == 0) {
            if (c1 == 0) return {};
            return {Complex(-c0 / c1)};
        }
        double disc = c1 * c1 - 4 * c2 * c0;
        Complex s = std::sqrt(Complex(disc));
        return {(-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)};
    }
    Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
    comp(0, 2) = -c0 / c3;
    comp(1, 2) = -c1 / c3;
    comp(2, 2) = -c2 / c3;
    comp(1, 0) = 1;
    comp(2, 1) = 1;
    Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
    std::vector<Complex> roots;
    for (int i = 0; i < 3; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

}  // namespace

CubicCoefficients cubic_coefficients(const ReducedParams& rp) {
    double k = rp.kappa_L, J = rp.J, wm = rp.omega_m, eps = rp.eps_d, gb = g_b(rp);
    double DL = rp.Delta_L, DRp = rp.Delta_R + rp.Delta_F;
    double X = k * k / 4 + J * J;
    CubicCoefficients c;
    c.b3 = wm * gb * gb * (k * k / 4 + DL * DL);
    c.b2 = 2 * wm * gb * (k * k * DRp / 4 + DL * (DL * DRp - J * J));
    c.b1 = wm * (std::pow(X - DL * DRp, 2) + std::pow(k * DRp / 2 + k * DL / 2, 2));
    c.b0 = gb * J * J * eps * eps;
    return c;
}

MeanFieldPoint mean_field(const ReducedParams& rp) {
    MeanFieldPoint mf;
    if (rp.eps_d == 0) return mf;

    double k = rp.kappa_L, J = rp.J;
    double DL = rp.Delta_L, DRp = rp.Delta_R + rp.Delta_F;
    double gb = g_b(rp);
    const Complex I(0, 1);

    double qs = 0;
    if (rp.g != 0) {
        CubicCoefficients c = cubic_coefficients(rp);
        mf.cubic_roots = cubic_roots_real_coeffs(c.b3, c.b2, c.b1, c.b0);
        double best = 0;
        bool found = false;
        for (size_t i = 0; i < mf.cubic_roots.size(); ++i) {
            Complex r = mf.cubic_roots[i];
            if (std::abs(r.imag()) > 1e-10 * std::max(1.0, std::abs(r))) continue;
            ++mf.real_root_count;
            // continuously connected to q_s = 0 as eps_d -> 0
            if (!found || std::abs(r.real()) < std::abs(best)) {
                best = r.real();
                mf.selected_root_index = int(i);
                found = true;
            }
        }
        if (!found) throw NumericalError("mean-field cubic produced no real root");
        qs = best;
    }

    Complex Dt = DRp + gb * qs;
    Complex den = (k / 2 + I * DL) * (k / 2 + I * Dt) + J * J;
    mf.alpha = rp.eps_d * (k / 2 + I * Dt) / den;
    mf.beta = -I * J * mf.alpha / (k / 2 + I * Dt);
    mf.q_s = qs;
    mf.p_s = 0;

    // residual of the original nonlinear steady-state system
    Complex r1 = -(k / 2 + I * DL) * mf.alpha - I * J * mf.beta + rp.eps_d;
    Complex r2 = -(k / 2 + I * Dt) * mf.beta - I * J * mf.alpha;
    double r3 = rp.omega_m * qs + gb * std::norm(mf.beta);
    double scale = std::max(rp.eps_d, 1e-300);
    double scale3 = std::max({rp.eps_d, rp.omega_m * std::abs(qs), gb * std::norm(mf.beta)});
    if (std::abs(r1) > 1e-10 * scale || std::abs(r2) > 1e-10 * scale ||
        std::abs(r3) > 1e-8 * scale3)
        throw NumericalError("mean-field residual exceeds tolerance");
    return mf;
}

SpectralCoefficients spectral_coeffs(double w, const ReducedParams& rp, const MeanFieldPoint& mf,
                                     double cross_tol) {
    double k = rp.kappa_L, J = rp.J, wm = rp.omega_m, gm = rp.gamma_m, gb = g_b(rp);
    double DL = rp.Delta_L, DRp = rp.Delta_R + rp.Delta_F;
    Complex beta = mf.beta;
    double qs = mf.q_s;
    const Complex I(0, 1);
    double sk = std::sqrt(k);
    double b2 = std::norm(beta);

    SpectralCoefficients sc;
    sc.chi = wm / (wm * wm - w * w + I * w * gm / 2.0);

    // chain-elimination form (solving the linear Fourier system directly)
    double DR3 = DRp + gb * qs;
    sc.M = k / 2 + I * w + I * DR3 - I * b2 * gb * gb * sc.chi;
    sc.N = k / 2 + I * w - I * DR3 + I * b2 * gb * gb * sc.chi;
    sc.V = k / 2 + I * w - I * DL;
    Complex V1 = k / 2 + I * w + I * DL;
    sc.T = sc.N * sc.V + J * J;
    sc.U = std::pow(gb, 4) * b2 * b2 * sc.chi * sc.chi * sc.V;
    sc.FL = (sc.M * sc.T - sc.U) * V1 + J * J * sc.T;
    Complex E1 = sk * (sc.M * sc.T - sc.U) / sc.FL;
    Complex F1 = I * J * J * gb * gb * beta * beta * sc.chi * sk / sc.FL;
    Complex G1 = -I * J * sk * sc.T / sc.FL;
    Complex H1 = J * gb * gb * beta * beta * sc.chi * sk * sc.V / sc.FL;
    Complex Q1 = -J * gb * beta * sc.chi * sc.T / sc.FL +
                 I * J * std::pow(gb, 3) * beta * b2 * sc.chi * sc.chi * sc.V / sc.FL;

    // main-text A-form
    sc.DeltaR2 = DRp + gb * qs - gb * gb * b2 * sc.chi;
    sc.V1m = k / 2 + I * w - I * DL;
    sc.V1p = k / 2 + I * w + I * DL;
    sc.V2m = k / 2 + I * w - I * sc.DeltaR2;
    sc.V2p = k / 2 + I * w + I * sc.DeltaR2;
    sc.A1 = (std::pow(k / 2 + I * w, 2) + sc.DeltaR2 * sc.DeltaR2) * sc.V1m -
            std::pow(gb, 4) * b2 * b2 * sc.chi * sc.chi * sc.V1m + J * J * sc.V2p;
    sc.A2 = -I * J * J * gb * gb * beta * beta * sc.chi;
    sc.A3 = -I * J * sc.V1m * sc.V2m - I * J * J * J;
    sc.A4 = -J * gb * gb * beta * beta * sc.chi * sc.V1m;
    sc.A5 = sc.V1p * sc.A1 + I * J * sc.A3;
    if (sc.A5 == Complex(0)) throw NumericalError("spectral denominator vanished on the real axis");
    sc.E = sk * sc.A1 / sc.A5;
    sc.F = -sk * sc.A2 / sc.A5;
    sc.G = sk * sc.A3 / sc.A5;
    sc.H = -sk * sc.A4 / sc.A5;
    sc.Q = -I * gb * sc.chi * (beta * sc.A3 + std::conj(beta) * sc.A4) / sc.A5;

    double worst = 0;
    const Complex pairs[5][2] = {{sc.E, E1}, {sc.F, F1}, {sc.G, G1}, {sc.H, H1}, {sc.Q, Q1}};
    for (auto& p : pairs) {
        double m = std::max(std::abs(p[0]), std::abs(p[1]));
        if (m > 0) worst = std::max(worst, std::abs(p[0] - p[1]) / m);
    }
    sc.cross_check_rel = worst;
    if (worst > cross_tol)
        throw NumericalError("spectral coefficient constructions disagree: rel " +
                             std::to_string(worst));
    return sc;
}

double brownian_spectrum(double w, const ReducedParams& rp) {
    double gm = rp.gamma_m, wm = rp.omega_m;
    if (w == 0) return 0.0;
    if (rp.temperature <= 0) return w > 0 ? w * gm / wm : 0.0;
    double x = constants::hbar * w / (2.0 * constants::k_B * rp.temperature);
    double coth;
    if (std::abs(x) > 350)
        coth = x > 0 ? 1.0 : -1.0;
    else
        coth = 1.0 / std::tanh(x);
    return (w * gm / (2.0 * wm)) * (1.0 + coth);
}

Correlators correlators(const ReducedParams& rp, const MeanFieldPoint& mf, double rel_tol,
                        double tail_tol) {
    if (rp.g == 0) return {0.0, Complex(0)};
    double k = rp.kappa_L, wm = rp.omega_m;

    auto x_dag = [&](double w) {
        SpectralCoefficients m = spectral_coeffs(-w, rp, mf);
        return std::norm(m.Q) * brownian_spectrum(-w, rp) + std::norm(m.F) + std::norm(m.H);
    };
    auto x_aa = [&](double w) {
        SpectralCoefficients p = spectral_coeffs(w, rp, mf);
        SpectralCoefficients m = spectral_coeffs(-w, rp, mf);
        return p.Q * m.Q * brownian_spectrum(-w, rp) + p.E * m.F + p.G * m.H;
    };

    std::vector<double> brk = {-wm, 0.0, wm};
    double W = 20.0 * std::max(k, wm);
    double R1 = 0, R2r = 0, R2i = 0;
    for (int iter = 0;; ++iter) {
        R1 = integrate_adaptive(x_dag, -W, W, brk, rel_tol);
        R2r = integrate_adaptive([&](double w) { return x_aa(w).real(); }, -W, W, brk, rel_tol);
        R2i = integrate_adaptive([&](double w) { return x_aa(w).imag(); }, -W, W, brk, rel_tol);
        double tail1 = integrate_adaptive(x_dag, W, 2 * W, {}, rel_tol, 0.0, 2000) +
                       integrate_adaptive(x_dag, -2 * W, -W, {}, rel_tol, 0.0, 2000);
        if (std::abs(tail1) <= tail_tol * std::max(std::abs(R1), 1e-300)) break;
        W *= 2;
        if (iter >= 12)
            throw IntegrationFailure("correlator window expansion did not converge", R1, tail1);
    }
    return {R1 / (2 * M_PI), Complex(R2r, R2i) / (2 * M_PI)};
}

double g2_semiclassical(const ReducedParams& rp, R3Form form) {
    MeanFieldPoint mf = mean_field(rp);
    Correlators c = correlators(rp, mf);
    double a2 = std::norm(mf.alpha);
    if (a2 + c.R1 == 0) throw NumericalError("g2 undefined: zero total occupation");
    double R3 = form == R3Form::Wick ? 2 * c.R1 * c.R1 + std::norm(c.R2)
                                     : 2 * c.R1 + std::norm(c.R2);
    double num = a2 * a2 + 4 * a2 * c.R1 +
                 2 * (std::conj(mf.alpha) * std::conj(mf.alpha) * c.R2).real() + R3;
    return num / std::pow(a2 + c.R1, 2);
}

}  // namespace upb
