#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace sbrg {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Measured data for the pair conditions (a'), (b'), (c').
struct PairDiagnostics {
    double comm_chi_chibar = 0.0;  // ||[chi, chibar]||
    double partition_defect = 0.0; // ||chi^2 + chibar^2 - 1||
    double comm_chi_t = 0.0;       // ||[chi, T]||
    double t_inverse_norm = 0.0;   // ||(T|Ran chibar)^-1||
    double t_condition = 0.0;
    double neumann_q_left = 0.0;  // ||T^-1 chibar W chibar||
    double neumann_q_right = 0.0; // ||chibar W T^-1 chibar||
    std::vector<std::string> failed; // names of violated conditions
    bool valid() const { return failed.empty(); }
    std::string summary() const;
};

/// Validated bundle (H, T, chi, chibar) with the restricted inverse of
/// H_chibar = T + chibar W chibar on Ran(chibar) cached.
struct FeshbachPair {
    Mat h, t, chi, chibar;
    Mat w;                  // H - T
    Mat chibar_hinv_chibar; // chibar H_chibar^-1 chibar as a full-space operator
    Mat ran_chibar_basis;   // orthonormal columns spanning Ran(chibar)
    PairDiagnostics diag;
};

/// chibar = sqrt(1 - chi^2) by spectral calculus of a hermitian chi in [0, 1].
Mat complement_cutoff(const Mat& chi);

/// Validates (a'), (b'), (c'); returns the pair or the diagnostics of the rejection.
/// No exception on condition failure: rejection is a value.
struct PairResult {
    std::optional<FeshbachPair> pair;
    PairDiagnostics diag;
    bool valid() const { return pair.has_value(); }
};
PairResult make_feshbach_pair(const Mat& h, const Mat& t, const Mat& chi,
                              double invert_threshold = 1e-8);

/// F_chi(H, T) = H_chi - chi W chibar H_chibar^-1 chibar W chi.
Mat feshbach_map(const FeshbachPair& p);

/// Q_chi = chi - chibar H_chibar^-1 chibar W chi and its sharp partner.
std::pair<Mat, Mat> q_operators(const FeshbachPair& p);

struct IsospectralityReport {
    bool h_invertible = false;
    bool f_invertible = false;
    double inverse_formula_residual_h = 0.0; // ||H^-1 - (Q F^-1 Q# + chibar Hinv chibar)||
    double inverse_formula_residual_f = 0.0; // ||F^-1 - (chi H^-1 chi + chibar T^-1 chibar)||
    int dim_ker_h = 0;
    int dim_ker_f = 0;
    double kernel_map_residual = 0.0;    // ||F chi u||, ||H Q v|| over kernel bases
    double kernel_roundtrip_residual = 0.0; // chi Qv - v and Q chi u - u on kernels
    double hq_identity_residual = 0.0;   // ||H Q_chi - chi F||
    bool consistent = true;
};

/// Exercises Theorem isospectrality on V = full space (T-invariant by construction).
IsospectralityReport isospectrality_check(const FeshbachPair& p, double sv_threshold = 1e-8);

/// chibar H_chibar^-1 chibar via a truncated Neumann series in T^-1 chibar W chibar.
Mat neumann_inverse(const FeshbachPair& p, int terms);

} // namespace sbrg
