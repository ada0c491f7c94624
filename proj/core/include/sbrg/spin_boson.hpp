#pragma once

#include "sbrg/fock_ops.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sbrg {

/// Radial coupling profile f(|k|), dimensionless, with a sharp infrared mask
/// chi_{|k| >= sigma}.  Profiles must be bounded and square integrable on the grid.
struct Coupling {
    std::string profile = "uv_unit_ball"; // f = 1 on |k| <= 1, 0 beyond
    double sigma = 0.0;
    double uv_cutoff = 1.0;

    double value(double k) const; // includes the sigma mask
    double bare(double k) const;  // profile without the mask
    Eigen::VectorXd samples(const ModeGrid& grid) const;

    static Coupling unit_ball(double sigma, double uv = 1.0) {
        return Coupling{"uv_unit_ball", sigma, uv};
    }
    static Coupling scaled(double c, double sigma, double uv = 1.0);
    double scale = 1.0;
};

/// H = tau x 1 + 1 x H_f + lambda sigma_x x phi(f_sigma) on a spinful space.
SparseOperator assemble_hamiltonian(const FockSpace& space, cplx lambda, const Coupling& coupling);

/// H_0 = tau x 1 + 1 x H_f.
SparseOperator free_hamiltonian(const FockSpace& space);

struct GroundStateResult {
    double energy = 0.0;
    Eigen::VectorXcd vector;
    double gap = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool degenerate_flag = false; // gap < 1e-8 observed; recorded, not asserted
};

struct GroundStateOptions {
    double tol = 1e-12;
    int dense_threshold = 1400; // dense solve at or below this dimension
    int max_iterations = 600;
    std::uint64_t seed = 1234;
};

/// Lowest eigenpair of a hermitian operator; dense below threshold, Lanczos above.
GroundStateResult ground_state(const SparseOperator& h, const GroundStateOptions& opt = {});

struct EnergyCurveRow {
    double lambda, energy, gap, residual;
};

std::vector<EnergyCurveRow> energy_curve(const FockSpace& space, const Coupling& coupling,
                                         const std::vector<double>& lambdas,
                                         const GroundStateOptions& opt = {});

} // namespace sbrg
