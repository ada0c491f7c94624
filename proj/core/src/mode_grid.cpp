#include "sbrg/mode_grid.hpp"

#include "sbrg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sbrg {

GridScheme grid_scheme_from_string(const std::string& s) {
    if (s == "midpoint") return GridScheme::Midpoint;
    if (s == "gauss-legendre") return GridScheme::GaussLegendre;
    if (s == "log-spaced") return GridScheme::LogSpaced;
    throw std::invalid_argument("unknown grid scheme: " + s);
}

std::string to_string(GridScheme s) {
    switch (s) {
        case GridScheme::Midpoint: return "midpoint";
        case GridScheme::GaussLegendre: return "gauss-legendre";
        case GridScheme::LogSpaced: return "log-spaced";
    }
    return "?";
}

void ModeGrid::validate() const {
    if (nodes.empty() || nodes.size() != weights.size())
        throw std::invalid_argument("ModeGrid: empty or mismatched arrays");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] < sigma - 1e-15 || nodes[i] > k_max + 1e-15)
            throw std::invalid_argument("ModeGrid: node outside [sigma, k_max]");
        if (weights[i] <= 0.0) throw std::invalid_argument("ModeGrid: nonpositive weight");
        if (i > 0 && nodes[i] <= nodes[i - 1])
            throw std::invalid_argument("ModeGrid: nodes not strictly increasing");
    }
}

ModeGrid build_mode_grid(double sigma, double k_max, int n_modes, GridScheme scheme) {
    if (!(sigma >= 0.0) || !(sigma < k_max))
        throw std::invalid_argument("build_mode_grid: need 0 <= sigma < k_max");
    if (n_modes < 1) throw std::invalid_argument("build_mode_grid: n_modes >= 1 required");

    const double four_pi = 4.0 * M_PI;
    ModeGrid g;
    g.sigma = sigma;
    g.k_max = k_max;
    g.scheme = scheme;
    g.angular_factor = 1.0 / four_pi;
    g.nodes.reserve(n_modes);
    g.weights.reserve(n_modes);

    switch (scheme) {
        case GridScheme::Midpoint: {
            double h = (k_max - sigma) / n_modes;
            for (int i = 0; i < n_modes; ++i) {
                double k = sigma + (i + 0.5) * h;
                g.nodes.push_back(k);
                g.weights.push_back(k * k * h * g.angular_factor);
            }
            break;
        }
        case GridScheme::GaussLegendre: {
            Quad1D q = gauss_legendre(n_modes, sigma, k_max);
            for (int i = 0; i < n_modes; ++i) {
                g.nodes.push_back(q.x[i]);
                g.weights.push_back(q.x[i] * q.x[i] * q.w[i] * g.angular_factor);
            }
            break;
        }
        case GridScheme::LogSpaced: {
            // Geometric cells; sigma = 0 gets a floor at k_max * r^n.
            double lo = sigma > 0.0 ? sigma : k_max * std::pow(1e-4, 1.0);
            if (sigma == 0.0) lo = k_max * std::pow(10.0, -4);
            double ratio = std::pow(k_max / lo, 1.0 / n_modes);
            double a = lo;
            for (int i = 0; i < n_modes; ++i) {
                double b = (i + 1 == n_modes) ? k_max : a * ratio;
                double k = std::sqrt(a * b);
                g.nodes.push_back(k);
                g.weights.push_back(k * k * (b - a) * g.angular_factor);
                a = b;
            }
            break;
        }
    }
    g.validate();
    return g;
}

} // namespace sbrg
