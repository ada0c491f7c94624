#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <vector>

namespace sbrg {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

/// Sparse operator on a finite-dimensional space, with an optional hermitian tag.
/// The tag is an assertion: set_hermitian() verifies max|A - A^dag| <= 1e-13 * scale.
class SparseOperator {
  public:
    SparseOperator() = default;
    explicit SparseOperator(int dim) : mat_(dim, dim) {}
    SparseOperator(int dim, const std::vector<Triplet>& entries);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const SpMat& matrix() const { return mat_; }
    SpMat& matrix() { return mat_; }
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat_); }

    bool hermitian() const { return hermitian_; }
    void set_hermitian(); // verifies, throws on failure
    double hermiticity_defect() const;

    SparseOperator adjoint() const;
    double operator_norm() const;      // largest singular value
    double min_singular_value() const; // dense SVD path

    SparseOperator& operator+=(const SparseOperator& o);
    SparseOperator& operator-=(const SparseOperator& o);
    SparseOperator& operator*=(cplx c);
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
    friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return mat_ * v; }

    static SparseOperator identity(int dim);

  private:
    SpMat mat_;
    bool hermitian_ = false;
};

double operator_norm(const Eigen::MatrixXcd& a);

} // namespace sbrg
