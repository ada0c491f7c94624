#pragma once

#include <string>
#include <vector>

namespace sbrg {

enum class GridScheme { Midpoint, GaussLegendre, LogSpaced };

GridScheme grid_scheme_from_string(const std::string& s);
std::string to_string(GridScheme s);

/// Radial quadrature grid for boson momenta on [sigma, k_max].
///
/// Weights approximate the measure d^3k/(4pi)^2 after radial reduction: each node
/// carries |k|^2 * d|k| * (4pi)/(4pi)^2, i.e. one solid-angle factor 4pi against the
/// (4pi)^2 normalization (angular_factor records the 1/(4pi)).  Sums over nodes with
/// these weights replace integrals \int d^3k/(4pi)^2 g(|k|).
struct ModeGrid {
    std::vector<double> nodes;   // strictly increasing, inside [sigma, k_max]
    std::vector<double> weights; // positive
    double sigma = 0.0;
    double k_max = 1.0;
    GridScheme scheme = GridScheme::Midpoint;
    double angular_factor = 0.0; // 4pi/(4pi)^2, fixed once here

    int size() const { return static_cast<int>(nodes.size()); }

    /// sum_i w_i g(k_i) ~ \int_{sigma<=|k|<=k_max} d^3k/(4pi)^2 g(|k|)
    template <class F> double integrate(F&& g) const {
        double s = 0.0;
        for (int i = 0; i < size(); ++i) s += weights[i] * g(nodes[i]);
        return s;
    }

    void validate() const; // throws std::invalid_argument on broken invariants
};

/// Discretizes the radial momentum integrals. Preconditions: 0 <= sigma < k_max, n_modes >= 1.
ModeGrid build_mode_grid(double sigma, double k_max, int n_modes, GridScheme scheme);

} // namespace sbrg
