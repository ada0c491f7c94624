#pragma once

#include "sbrg/fock_space.hpp"
#include "sbrg/sparse_operator.hpp"

#include <functional>

namespace sbrg {

/// Creation operator a*(g) with one coefficient per grid node.  Mode operators
/// absorb sqrt(w_i), so continuum formulas hold verbatim with sums replacing
/// integrals: <n + e_i| a*(g) |n> = sqrt(n_i + 1) g_i sqrt(w_i).  States that
/// would exceed the occupation cap are projected out.
SparseOperator creation_op(const FockSpace& space, const Eigen::VectorXcd& g);
SparseOperator annihilation_op(const FockSpace& space, const Eigen::VectorXcd& g);

/// Field operator phi(f) = a*(f/sqrt(omega)) + a(f/sqrt(omega)) under the grid
/// measure with the 1/(4pi) convention; hermitian for real samples f.
SparseOperator field_op(const FockSpace& space, const Eigen::VectorXcd& f);

/// dGamma(omega): diagonal with eigenvalue sum_i n_i |k_i|.
SparseOperator free_field_op(const FockSpace& space);

/// Diagonal F(H_f) for a scalar function F.
SparseOperator function_of_hf(const FockSpace& space, const std::function<double(double)>& F);

/// (-1)^N by total occupation parity; an involution.
SparseOperator parity_op(const FockSpace& space);

/// Boson-sector number operator (spin-blind when with_spin).
SparseOperator number_op(const FockSpace& space);

/// Projection onto states with total occupation <= cap (interior grading helper).
SparseOperator occupation_cap_projector(const FockSpace& space, int cap);

} // namespace sbrg
