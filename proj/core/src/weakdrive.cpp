#include "upb/weakdrive.hpp"

#include <limits>

#include <Eigen/Eigenvalues>

namespace upb {

namespace {

std::vector<double> real_quartic_roots(double a4, double a3, double a2, double a1, double a0) {
    if (a4 == 0) throw NumericalError("degenerate quartic: leading coefficient zero");
    Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
    comp(0, 3) = -a0 / a4;
    comp(1, 3) = -a1 / a4;
    comp(2, 3) = -a2 / a4;
    comp(3, 3) = -a3 / a4;
    comp(1, 0) = comp(2, 1) = comp(3, 2) = 1;
    Eigen::EigenSolver<Eigen::Matrix4d> es(comp);
    std::vector<double> roots;
    for (int i = 0; i < 4; ++i) {
        Complex r = es.eigenvalues()(i);
        if (std::abs(r.imag()) <= 1e-9 * std::max(1.0, std::abs(r))) roots.push_back(r.real());
    }
    return roots;
}

Complex cbrt_c(Complex z) {
    if (z.imag() == 0) return Complex(std::cbrt(z.real()), 0);
    return std::pow(z, 1.0 / 3.0);
}

ReducedParams at_candidate(const ReducedParams& rp, double Delta, double g) {
    ReducedParams r = rp;
    r.g = g;
    r.delta = g * g / rp.omega_m;
    r.Delta_L = Delta;
    r.Delta_R = Delta + r.delta;
    return r;
}

}  // namespace

WeakDriveAmplitudes amplitudes(const ReducedParams& rp) {
    const Complex I(0, 1);
    double k = rp.kappa_L, J = rp.J, eps = rp.eps_d, d = rp.delta;
    Complex dL = rp.Delta_L - I * rp.kappa_L / 2.0;
    Complex dR = (rp.Delta_R + rp.Delta_F) - I * rp.kappa_R / 2.0;
    (void)k;

    WeakDriveAmplitudes amp;
    // one-excitation block
    Eigen::Matrix2cd M1;
    M1 << dL, J, J, dR - d;
    Eigen::Vector2cd r1;
    r1 << -I * eps, 0.0;
    Eigen::Vector2cd c1 = M1.fullPivLu().solve(r1);
    if (!c1.allFinite() || std::abs(M1.determinant()) < 1e-14 * std::norm(dL))
        throw NumericalError("one-excitation block singular (degenerate detuning)");
    amp.C10 = c1(0);
    amp.C01 = c1(1);

    // two-excitation block
    const double s2 = std::sqrt(2.0);
    Eigen::Matrix3cd M2;
    M2 << 2.0 * dL, s2 * J, 0.0,
          s2 * J, dL + dR - d, s2 * J,
          0.0, s2 * J, 2.0 * dR - 4.0 * d;
    Eigen::Vector3cd r2;
    r2 << -I * s2 * eps * amp.C10, -I * eps * amp.C01, 0.0;
    Eigen::Vector3cd c2 = M2.fullPivLu().solve(r2);
    if (!c2.allFinite()) throw NumericalError("two-excitation block singular");
    amp.C20 = c2(0);
    amp.C11 = c2(1);
    amp.C02 = c2(2);

    double one = std::max(std::abs(amp.C10), std::abs(amp.C01));
    double two = std::max({std::abs(amp.C20), std::abs(amp.C11), std::abs(amp.C02)});
    amp.hierarchy_ok = two < one && one < std::abs(amp.C00);

    double c10_2 = std::norm(amp.C10);
    if (std::abs(amp.C10) < 1e-12 * std::max(1.0, eps / std::max(rp.kappa_L, 1e-300)))
        throw NumericalError("g2 undefined: |C10| vanishes");
    amp.g2 = 2.0 * std::norm(amp.C20) / (c10_2 * c10_2);
    return amp;
}

double g2_weakdrive(const ReducedParams& rp) { return amplitudes(rp).g2; }

QuarticProblem quartic_problem(double J, double kappa, double Delta_F) {
    double k = kappa, DF = Delta_F;
    QuarticProblem q;
    q.J = J;
    q.kappa = k;
    q.Delta_F = DF;
    q.a4 = -32.0 * k;
    q.a3 = -96.0 * DF * k;
    q.a2 = -8.0 * k * (2 * k * k + 6 * J * J + 13 * DF * DF);
    // printed form carries a dangling "+3"; the eliminant of the optimality
    // system fixes it as +3 k^3
    q.a1 = -8.0 * DF * (6 * DF * DF * k + 10 * J * J * k + 3 * k * k * k);
    q.a0 = k * (4 * J * J - 10 * DF * DF) * (k * k - 8 * DF * DF) -
           2 * k * (std::pow(k, 4) + 44 * std::pow(DF, 4));
    return q;
}

double delta_from_optimality(double Delta, double kappa, double Delta_F) {
    double k = kappa, DF = Delta_F, D = Delta;
    double den = 8 * D + 6 * DF;
    if (den == 0) return -1.0;
    return (12 * D * D - k * k + DF * (20 * D + 8 * DF)) / den;
}

ClosedFormReport closed_form_optima(const QuarticProblem& q, double omega_m) {
    ClosedFormReport rep;
    auto eval = [&](double a1_val, ClosedFormAux* aux_out) -> double {
        double a0 = q.a0, a1 = a1_val, a2 = q.a2, a3 = q.a3, a4 = q.a4;
        ClosedFormAux x;
        x.D = 3 * a3 * a3 - 8 * a4 * a2;
        x.E = -std::pow(a3, 3) + 4 * a4 * a3 * a2 - 8 * a4 * a4 * a1;
        x.F = 3 * std::pow(a3, 4) + 16 * a4 * a4 * a2 * a2 - 16 * a4 * a3 * a3 * a2 +
              16 * a4 * a4 * a3 * a1 - 64 * std::pow(a4, 3) * a0;
        if (x.E == 0.0 && a3 == 0.0 && a1 == 0.0) {
            // symmetric (Delta_F = 0) case: the radical expression degenerates
            // together with sgn(E); the quartic is biquadratic and solved as such
            double disc2 = a2 * a2 - 4 * a4 * a0;
            if (aux_out) *aux_out = x;
            if (disc2 < 0) return std::numeric_limits<double>::quiet_NaN();
            for (double sgn_inner : {1.0, -1.0}) {
                double x2 = (-a2 + sgn_inner * std::sqrt(disc2)) / (2 * a4);
                if (x2 < 0) continue;
                double xr = std::sqrt(x2);
                // prefer the sign whose implied Kerr shift is positive
                for (double root : {-xr, xr})
                    if (delta_from_optimality(root, q.kappa, q.Delta_F) > 0) return root;
                return xr;
            }
            return std::numeric_limits<double>::quiet_NaN();
        }
        x.A = x.D * x.D - 3 * x.F;
        x.B = x.D * x.F - 9 * x.E * x.E;
        x.C = x.F * x.F - 3 * x.D * x.E * x.E;
        Complex disc = std::sqrt(Complex(x.B * x.B - 4 * x.A * x.C));
        x.z1 = x.A * x.D + 3.0 * (-x.B + disc) / 2.0;
        x.z2 = x.A * x.D + 3.0 * (-x.B - disc) / 2.0;
        Complex s = cbrt_c(x.z1) + cbrt_c(x.z2);
        x.z3 = x.D * x.D - x.D * s + s * s - 3 * x.A;
        x.lambda1 = (x.D + s) / 3.0;
        x.lambda2 = (2.0 * x.D - s + cbrt_c(x.z3)) / 3.0;
        x.sgnE = x.E > 0 ? 1 : (x.E < 0 ? -1 : 0);
        Complex Dopt =
            (-a3 + double(x.sgnE) * std::sqrt(x.lambda1) - std::sqrt(x.lambda2)) / (4 * a4);
        double scale = std::max({std::abs(x.lambda1), std::abs(x.lambda2), 1.0});
        if (std::abs(x.lambda1.imag()) > 1e-8 * scale ||
            std::abs(x.lambda2.imag()) > 1e-8 * scale || std::abs(Dopt.imag()) > 1e-8)
            x.branch_ambiguous = true;
        if (aux_out) *aux_out = x;
        return Dopt.real();
    };

    // literal reading: the dangling "+3" as a bare 3
    double a1_literal = -8.0 * q.Delta_F * (6 * q.Delta_F * q.Delta_F * q.kappa +
                                            10 * q.J * q.J * q.kappa + 3.0);
    double d_lit = eval(a1_literal, nullptr);
    double d_con = eval(q.a1, &rep.aux);

    auto quartic_res = [&](double D) {
        double terms[5] = {q.a0, q.a1 * D, q.a2 * D * D, q.a3 * D * D * D,
                           q.a4 * D * D * D * D};
        double num = 0, den = 0;
        for (double t : terms) {
            num += t;
            den = std::max(den, std::abs(t));
        }
        return den > 0 ? std::abs(num) / den : 0.0;
    };
    rep.residual_literal_a1 = quartic_res(d_lit);
    rep.residual_consistent_a1 = quartic_res(d_con);
    rep.Delta_opt = d_con;
    rep.quartic_residual = rep.residual_consistent_a1;

    double D = rep.Delta_opt, DF = q.Delta_F, k = q.kappa, J = q.J;
    rep.aux.lambda3 = 20 * D * D - 8 * D * DF - 4 * DF * DF + 5 * k * k;
    rep.aux.lambda4 = 10 * D * D + 3 * D + 2 * DF;  // as printed (mixed dimension)
    double radicand = -omega_m * (D * (4 * D * D + 5 * k * k) + DF * rep.aux.lambda3) /
                      (2 * (2 * J * J - k * k) + 2 * DF * rep.aux.lambda4);
    if (radicand >= 0) {
        rep.g_opt = std::sqrt(radicand);
        rep.g_opt_valid = true;
    }
    return rep;
}

OptimalResult optimal_params(const ReducedParams& rp_in) {
    if (!(rp_in.kappa_L > 0) || !(rp_in.J > 0))
        throw ConfigError("optimal_params requires kappa > 0 and J > 0");
    // work in kappa units: the quartic coefficients span kappa^5 and lose all
    // precision in absolute rates
    const double scale = rp_in.kappa_L;
    ReducedParams rp = in_kappa_units(rp_in);
    QuarticProblem q = quartic_problem(rp.J, rp.kappa_L, rp.Delta_F);
    OptimalResult out;
    out.quartic_real_roots = real_quartic_roots(q.a4, q.a3, q.a2, q.a1, q.a0);

    bool found = false;
    double best_g2 = 0;
    for (double D : out.quartic_real_roots) {
        double d = delta_from_optimality(D, rp.kappa_L, rp.Delta_F);
        if (d <= 0) {
            out.rejected_roots.push_back(D);
            continue;
        }
        double g = std::sqrt(d * rp.omega_m);
        double g2 = g2_weakdrive(at_candidate(rp, D, g));
        if (!found || g2 < best_g2) {
            best_g2 = g2;
            out.Delta_opt = D;
            out.g_opt = g;
            found = true;
        }
    }
    if (!found)
        throw NumericalError("no admissible quartic root: every candidate implies delta <= 0");

    out.g2_at_opt = best_g2;
    WeakDriveAmplitudes amp = amplitudes(at_candidate(rp, out.Delta_opt, out.g_opt));
    out.c20_over_c10sq = std::abs(amp.C20) / std::norm(amp.C10);

    double h = 0.01 * rp.kappa_L;
    out.local_min_confirmed = true;
    for (double off : {-h, -h / 2, h / 2, h}) {
        double g2 = g2_weakdrive(at_candidate(rp, out.Delta_opt + off, out.g_opt));
        if (!(g2 > best_g2)) out.local_min_confirmed = false;
    }

    out.closed_form = closed_form_optima(q, rp.omega_m);

    out.Delta_opt *= scale;
    out.g_opt *= scale;
    out.closed_form.Delta_opt *= scale;
    out.closed_form.g_opt *= scale;
    for (double& r : out.quartic_real_roots) r *= scale;
    for (double& r : out.rejected_roots) r *= scale;
    return out;
}

std::vector<G3Point> g3_scan(const ReducedParams& rp, const std::vector<double>& Deltas,
                             const std::vector<double>& gs, const std::vector<int>& dims) {
    if (dims[0] < 5) throw InvalidDimensionError("g3 scan needs >= 5 left-cavity photons");
    std::vector<G3Point> table;
    for (double D : Deltas)
        for (double g : gs) {
            G3Point p;
            p.Delta = D;
            p.g = g;
            try {
                SteadyStateResult r =
                    solve_point(at_candidate(rp, D, g), dims, HamiltonianKind::FullOM, true);
                p.g2 = r.g2_L;
                p.g3 = r.g3_L;
                p.ok = true;
            } catch (const std::exception& e) {
                p.error = e.what();
            }
            table.push_back(p);
        }
    return table;
}

}  // namespace upb
