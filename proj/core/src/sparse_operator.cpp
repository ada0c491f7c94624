#include "sbrg/sparse_operator.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <stdexcept>

namespace sbrg {

SparseOperator::SparseOperator(int dim, const std::vector<Triplet>& entries) : mat_(dim, dim) {
    mat_.setFromTriplets(entries.begin(), entries.end());
    mat_.prune([](int, int, const cplx& v) { return std::abs(v) > 0.0; });
}

double SparseOperator::hermiticity_defect() const {
    SpMat d = SpMat(mat_.adjoint()) - mat_;
    double m = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

void SparseOperator::set_hermitian() {
    double scale = 1.0;
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat_, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    if (hermiticity_defect() > 1e-13 * scale)
        throw std::runtime_error("SparseOperator: hermitian tag rejected, defect too large");
    hermitian_ = true;
}

SparseOperator SparseOperator::adjoint() const {
    SparseOperator a(dim());
    a.mat_ = SpMat(mat_.adjoint());
    a.hermitian_ = hermitian_;
    return a;
}

double SparseOperator::operator_norm() const {
    if (dim() == 0) return 0.0;
    if (dim() <= 1500) return sbrg::operator_norm(dense());
    // power iteration on A^dag A for the rare large case
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(dim());
    v.normalize();
    double s = 0.0;
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXcd w = mat_.adjoint() * (mat_ * v);
        double ns = std::sqrt(w.norm());
        if (w.norm() == 0.0) return 0.0;
        v = w / w.norm();
        if (std::abs(ns - s) < 1e-12 * std::max(1.0, ns)) return ns;
        s = ns;
    }
    return s;
}

double SparseOperator::min_singular_value() const {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense());
    return svd.singularValues().tail(1)(0);
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& o) {
    mat_ += o.mat_;
    hermitian_ = hermitian_ && o.hermitian_;
    return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& o) {
    mat_ -= o.mat_;
    hermitian_ = hermitian_ && o.hermitian_;
    return *this;
}

SparseOperator& SparseOperator::operator*=(cplx c) {
    mat_ *= c;
    hermitian_ = hermitian_ && c.imag() == 0.0;
    return *this;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    SparseOperator r(a.dim());
    r.mat_ = a.mat_ * b.mat_;
    return r;
}

SparseOperator SparseOperator::identity(int dim) {
    SparseOperator i(dim);
    i.mat_.setIdentity();
    i.hermitian_ = true;
    return i;
}

double operator_norm(const Eigen::MatrixXcd& a) {
    if (a.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
    double top = es.eigenvalues().tail(1)(0);
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

} // namespace sbrg
