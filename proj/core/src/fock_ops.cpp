#include "sbrg/fock_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace sbrg {

namespace {
void check_coeffs(const FockSpace& space, const Eigen::VectorXcd& g) {
    if (g.size() != space.grid.size())
        throw std::invalid_argument("mode-coefficient vector size does not match grid");
}

// Replicates a boson-sector triplet list across spin blocks when needed.
SparseOperator lift(const FockSpace& space, std::vector<Triplet> trips) {
    if (!space.with_spin) return SparseOperator(space.dim(), trips);
    const int nb = space.boson_dim();
    std::vector<Triplet> full;
    full.reserve(2 * trips.size());
    for (const auto& t : trips) {
        full.emplace_back(t.row(), t.col(), t.value());
        full.emplace_back(t.row() + nb, t.col() + nb, t.value());
    }
    return SparseOperator(space.dim(), full);
}
} // namespace

SparseOperator creation_op(const FockSpace& space, const Eigen::VectorXcd& g) {
    check_coeffs(space, g);
    std::vector<Triplet> trips;
    const int m = space.grid.size();
    Occ tmp;
    for (int b = 0; b < space.boson_dim(); ++b) {
        if (space.total_occ[b] + 1 > space.max_total_occupation) continue;
        for (int i = 0; i < m; ++i) {
            if (g[i] == cplx(0.0)) continue;
            tmp = space.basis[b];
            tmp[i]++;
            int dst = space.index_of(tmp);
            if (dst < 0) continue;
            double amp = std::sqrt(double(tmp[i])) * std::sqrt(space.grid.weights[i]);
            trips.emplace_back(dst, b, g[i] * amp);
        }
    }
    return lift(space, std::move(trips));
}

SparseOperator annihilation_op(const FockSpace& space, const Eigen::VectorXcd& g) {
    SparseOperator a = creation_op(space, g);
    return a.adjoint();
}

SparseOperator field_op(const FockSpace& space, const Eigen::VectorXcd& f) {
    check_coeffs(space, f);
    Eigen::VectorXcd scaled(f.size());
    for (int i = 0; i < f.size(); ++i) scaled[i] = f[i] / std::sqrt(space.grid.nodes[i]);
    SparseOperator op = creation_op(space, scaled) + annihilation_op(space, scaled);
    bool real = true;
    for (int i = 0; i < f.size(); ++i) real = real && f[i].imag() == 0.0;
    if (real) op.set_hermitian();
    return op;
}

SparseOperator function_of_hf(const FockSpace& space, const std::function<double(double)>& F) {
    std::vector<Triplet> trips;
    trips.reserve(space.boson_dim());
    for (int b = 0; b < space.boson_dim(); ++b) {
        double v = F(space.energies[b]);
        if (v != 0.0) trips.emplace_back(b, b, cplx(v, 0.0));
    }
    SparseOperator op = lift(space, std::move(trips));
    op.set_hermitian();
    return op;
}

SparseOperator free_field_op(const FockSpace& space) {
    return function_of_hf(space, [](double e) { return e; });
}

SparseOperator parity_op(const FockSpace& space) {
    std::vector<Triplet> trips;
    trips.reserve(space.boson_dim());
    for (int b = 0; b < space.boson_dim(); ++b)
        trips.emplace_back(b, b, cplx(space.total_occ[b] % 2 == 0 ? 1.0 : -1.0, 0.0));
    SparseOperator op = lift(space, std::move(trips));
    op.set_hermitian();
    return op;
}

SparseOperator number_op(const FockSpace& space) {
    std::vector<Triplet> trips;
    trips.reserve(space.boson_dim());
    for (int b = 0; b < space.boson_dim(); ++b)
        if (space.total_occ[b] > 0) trips.emplace_back(b, b, cplx(double(space.total_occ[b]), 0.0));
    SparseOperator op = lift(space, std::move(trips));
    op.set_hermitian();
    return op;
}

SparseOperator occupation_cap_projector(const FockSpace& space, int cap) {
    std::vector<Triplet> trips;
    for (int b = 0; b < space.boson_dim(); ++b)
        if (space.total_occ[b] <= cap) trips.emplace_back(b, b, cplx(1.0, 0.0));
    SparseOperator op = lift(space, std::move(trips));
    op.set_hermitian();
    return op;
}

} // namespace sbrg
