#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace upb {

struct IntegrationFailure : std::runtime_error {
    double best_estimate;
    double error_estimate;
    IntegrationFailure(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of a real integrand over
/// [a, b], subdividing the interval with the largest error estimate first.
/// `breakpoints` seeds initial subdivisions (use it for narrow resonances
/// the 15-point rule would otherwise step over).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const std::vector<double>& breakpoints = {}, double rel_tol = 1e-6,
                          double abs_tol = 0.0, int max_intervals = 20000);

}  // namespace upb
