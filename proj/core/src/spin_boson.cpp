#include "sbrg/spin_boson.hpp"

#include "sbrg/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <stdexcept>

namespace sbrg {

int& worker_count() {
    static int workers = 1;
    return workers;
}

double Coupling::bare(double k) const {
    if (profile == "uv_unit_ball") return k <= uv_cutoff ? scale : 0.0;
    if (profile == "sqrt_uv_ball") return k <= uv_cutoff ? scale * std::sqrt(k) : 0.0;
    throw std::invalid_argument("unknown coupling profile: " + profile);
}

double Coupling::value(double k) const { return k >= sigma ? bare(k) : 0.0; }

Eigen::VectorXd Coupling::samples(const ModeGrid& grid) const {
    Eigen::VectorXd f(grid.size());
    for (int i = 0; i < grid.size(); ++i) f[i] = value(grid.nodes[i]);
    return f;
}

Coupling Coupling::scaled(double c, double sigma, double uv) {
    Coupling f{"uv_unit_ball", sigma, uv};
    f.scale = c;
    return f;
}

SparseOperator free_hamiltonian(const FockSpace& space) {
    if (!space.with_spin) throw std::invalid_argument("free_hamiltonian: spinful space required");
    const int nb = space.boson_dim();
    std::vector<Triplet> trips;
    trips.reserve(space.dim());
    for (int b = 0; b < nb; ++b) {
        // tau = sigma_z + 1 = diag(2, 0) in the (up, down) basis
        trips.emplace_back(b, b, cplx(2.0 + space.energies[b], 0.0));
        double e = space.energies[b];
        if (e != 0.0) trips.emplace_back(nb + b, nb + b, cplx(e, 0.0));
    }
    SparseOperator h(space.dim(), trips);
    h.set_hermitian();
    return h;
}

SparseOperator assemble_hamiltonian(const FockSpace& space, cplx lambda, const Coupling& coupling) {
    if (!space.with_spin)
        throw std::invalid_argument("assemble_hamiltonian: spinful space required");
    SparseOperator h0 = free_hamiltonian(space);
    Eigen::VectorXd f = coupling.samples(space.grid);
    // boson-sector phi(f_sigma)
    FockSpace boson = space;
    boson.with_spin = false;
    SparseOperator phi = field_op(boson, f.cast<cplx>());
    // sigma_x tensor phi: off-diagonal spin blocks
    const int nb = space.boson_dim();
    std::vector<Triplet> trips;
    const SpMat& p = phi.matrix();
    for (int k = 0; k < p.outerSize(); ++k)
        for (SpMat::InnerIterator it(p, k); it; ++it) {
            trips.emplace_back(it.row(), it.col() + nb, lambda * it.value());
            trips.emplace_back(it.row() + nb, it.col(), lambda * it.value());
        }
    SparseOperator v(space.dim(), trips);
    SparseOperator h = h0 + v;
    if (lambda.imag() == 0.0) h.set_hermitian();
    return h;
}

namespace {

GroundStateResult dense_ground_state(const SparseOperator& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
    GroundStateResult r;
    r.energy = es.eigenvalues()(0);
    r.vector = es.eigenvectors().col(0);
    r.gap = h.dim() > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0) : 0.0;
    r.iterations = 0;
    r.residual = (h.matrix() * r.vector - r.energy * r.vector).norm();
    r.degenerate_flag = r.gap < 1e-8;
    return r;
}

GroundStateResult lanczos_ground_state(const SparseOperator& h, const GroundStateOptions& opt) {
    const int n = h.dim();
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(gauss(rng), gauss(rng));
    v.normalize();

    const int m_max = std::min(opt.max_iterations, n);
    std::vector<Eigen::VectorXcd> basis;
    basis.reserve(m_max);
    std::vector<double> alpha, beta;
    Eigen::VectorXcd w;
    GroundStateResult r;
    double prev = 0.0;

    for (int j = 0; j < m_max; ++j) {
        basis.push_back(v);
        w = h.matrix() * v;
        double a = std::real(v.dot(w));
        alpha.push_back(a);
        w -= a * v;
        if (j > 0) w -= beta.back() * basis[j - 1];
        for (const auto& q : basis) w -= q.dot(w) * q; // full reorthogonalization
        double b = w.norm();

        if (j >= 2 || b < 1e-14) {
            int m = j + 1;
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                t(i, i) = alpha[i];
                if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
            double e0 = es.eigenvalues()(0);
            if (std::abs(e0 - prev) < opt.tol * std::max(1.0, std::abs(e0)) || b < 1e-14 ||
                j + 1 == m_max) {
                Eigen::VectorXcd gs = Eigen::VectorXcd::Zero(n);
                for (int i = 0; i < m; ++i) gs += es.eigenvectors()(i, 0) * basis[i];
                gs.normalize();
                r.energy = e0;
                r.vector = gs;
                r.gap = m > 1 ? es.eigenvalues()(1) - e0 : 0.0;
                r.iterations = m;
                r.residual = (h.matrix() * gs - e0 * gs).norm();
                r.degenerate_flag = r.gap < 1e-8;
                if (r.residual > std::sqrt(opt.tol) && j + 1 == m_max && b >= 1e-14)
                    throw std::runtime_error("lanczos: no convergence, best residual " +
                                             std::to_string(r.residual));
                if (b < 1e-14 || std::abs(e0 - prev) < opt.tol * std::max(1.0, std::abs(e0)))
                    return r;
            }
            prev = e0;
        }
        beta.push_back(b);
        if (b < 1e-14) break;
        v = w / b;
    }
    return r;
}

} // namespace

GroundStateResult ground_state(const SparseOperator& h, const GroundStateOptions& opt) {
    if (!h.hermitian()) {
        SparseOperator copy = h;
        copy.set_hermitian(); // throws when genuinely non-hermitian
        return ground_state(copy, opt);
    }
    if (h.dim() <= opt.dense_threshold) return dense_ground_state(h);
    return lanczos_ground_state(h, opt);
}

std::vector<EnergyCurveRow> energy_curve(const FockSpace& space, const Coupling& coupling,
                                         const std::vector<double>& lambdas,
                                         const GroundStateOptions& opt) {
    std::vector<EnergyCurveRow> rows(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t i) {
        SparseOperator h = assemble_hamiltonian(space, lambdas[i], coupling);
        GroundStateResult g = ground_state(h, opt);
        rows[i] = EnergyCurveRow{lambdas[i], g.energy, g.gap, g.residual};
    });
    return rows;
}

} // namespace sbrg
