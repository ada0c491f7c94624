#pragma once

#include <functional>
#include <vector>

namespace sbrg {

struct Quad1D {
    std::vector<double> x, w;
};

/// Gauss-Legendre rule with n nodes on [a, b].
Quad1D gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre over geometric (octave-split) panels of [a, b], a > 0.
/// Integrates smooth integrands with endpoint 1/x-type variation accurately.
Quad1D log_panel_rule(double a, double b, int per_panel, double panel_ratio = 2.0);

/// Nested 1D adaptive Simpson; tol is absolute.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_depth = 40);

} // namespace sbrg
