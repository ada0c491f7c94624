#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sbrg {

/// Uniform r-grid on [0, r_max]; index 0 is r = 0 and the grid always contains r = 1
/// exactly when r_max >= 1 (enforced at construction).
struct RGrid {
    double r_max = 1.0;
    int n = 33;

    double h() const { return r_max / (n - 1); }
    double point(int i) const { return i * h(); }
    static RGrid over_unit(int points_on_unit, double r_max);
};

struct KernelPoint {
    double v = 0.0;
    double dv = 0.0; // d/dr
};

/// Sampled integral kernel w_{m,n}(r, k^(m), ktilde^(n)) with value and r-derivative
/// channels.  Values vanish off the support Q_{m,n} = { r <= 1 - max(Sum_c, Sum_a) }
/// when masked.  Evaluation is cubic Hermite in r and linear (with extrapolation at
/// the edges) in each momentum argument.
struct Kernel {
    int m = 0, n = 0;
    RGrid rgrid;
    std::vector<double> knodes;   // sample momenta inside B_1, increasing
    std::vector<double> kweights; // d^3k/(4pi)^2 cell weights of the sample grid
    std::vector<double> val, dr;  // shape [nr][nk^m][nk^n], row-major
    bool masked = true;

    int nk() const { return static_cast<int>(knodes.size()); }
    std::size_t ktuples() const;
    std::size_t size() const { return static_cast<std::size_t>(rgrid.n) * ktuples(); }
    std::size_t flat(int ir, std::size_t kc, std::size_t ka) const;

    static Kernel zeros(int m, int n, const RGrid& rg, std::vector<double> knodes,
                        std::vector<double> kweights, bool masked = true);

    KernelPoint eval(double r, std::span<const double> kc, std::span<const double> ka) const;
    /// Fast path when every momentum argument sits exactly on a sample node.
    KernelPoint eval_at_nodes(double r, std::span<const int> kc_idx,
                              std::span<const int> ka_idx) const;

    bool in_support(double r, double sum_create, double sum_annih) const;

    double sup_norm() const;         // max over samples of |value|
    double dr_sup_norm() const;      // max over samples of |d/dr|
    double sharp_norm() const;       // sup + dr_sup
    double l2_norm() const;          // [ sum_K prod(l_i) max_r |w|^2 ]^(1/2)
    /// Discrete counterpart of \int_S dK/|K|^2 over the kernel's own support.
    double support_measure() const;

    void apply_mask();
    Kernel symmetrized() const;
    double max_symmetry_defect() const;
};

/// Sequence w = (w_{m,n}) truncated at m + n <= max_degree.
struct KernelSequence {
    int max_degree = 4;
    double xi = 0.25;
    bool even_only = true;
    std::map<std::pair<int, int>, Kernel> entries;

    const Kernel* find(int m, int n) const;
    Kernel& at(int m, int n);
    const Kernel& at(int m, int n) const;
    bool has(int m, int n) const { return find(m, n) != nullptr; }

    double xi_norm_tail(int min_degree) const; // || w_{>= min_degree} ||_xi^#
    double xi_norm() const { return xi_norm_tail(0); }

    /// Ball parameters: alpha = ||d_r w00 - 1||, beta = |w00(0)|, gamma = ||w_{>=1}||_xi^#.
    struct BallParams {
        double alpha, beta, gamma;
    };
    BallParams ball_params() const;

    /// The free kernel w*(z): w00(r) = r - z, all interaction entries zero.
    static KernelSequence free_kernel(double z, const RGrid& rg, std::vector<double> knodes,
                                      std::vector<double> kweights, int max_degree, double xi);
};

/// z-indexed family on Chebyshev-Gauss-Lobatto nodes of a real interval; kernels are
/// interpolated in z barycentrically (entries must be analytic across the family).
struct ParamKernelSequence {
    std::vector<double> zgrid;
    std::vector<KernelSequence> per_z;
    bool symmetric = false; // w_{m,n}(z) = conj(w_{n,m}(z)) at real z

    int nz() const { return static_cast<int>(zgrid.size()); }
    KernelSequence interpolate(double z) const;
    /// sup over the z-family of the ball parameters (beta measured as |w00(z,0) + z|).
    struct FamilyBall {
        double alpha, beta, gamma;
    };
    FamilyBall family_ball() const;
    double max_symmetry_defect() const;
};

std::vector<double> chebyshev_lobatto(int n, double a, double b);
std::vector<double> barycentric_weights(const std::vector<double>& x);
double barycentric_eval(const std::vector<double>& x, const std::vector<double>& w,
                        const std::vector<double>& f, double xq);

/// Tabulates a closed-form kernel (with exact r-derivative) onto the sample grids.
Kernel sample_kernel(
    int m, int n, const RGrid& rg, std::vector<double> knodes, std::vector<double> kweights,
    const std::function<double(double, std::span<const double>, std::span<const double>)>& f,
    const std::function<double(double, std::span<const double>, std::span<const double>)>& dfdr,
    bool masked = true);

// Snapshot serialization: JSON shape header + '\0' + raw little-endian doubles.
// Round-trips bit-exactly.
void save_kernel_sequence(const KernelSequence& seq, const std::string& path);
KernelSequence load_kernel_sequence(const std::string& path);
void save_param_sequence(const ParamKernelSequence& seq, const std::string& path);
ParamKernelSequence load_param_sequence(const std::string& path);

} // namespace sbrg
