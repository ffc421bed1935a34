#pragma once

#include <complex>

#include "fmb/la/matrix.hpp"

namespace fmb::la {

// In-place lower Cholesky A = L L^T. Upper triangle is zeroed on success.
// Returns false when a non-positive pivot is hit (matrix not PD).
bool cholesky_in_place(Matrix& a);

// Cholesky with escalating diagonal regularization: tries shifts
// 0, shift0, 10*shift0, ... up to max_tries. Returns the shift used,
// or a negative value on failure.
double cholesky_regularized(Matrix& a, double shift0, int max_tries = 12);

// Solve L x = b (forward) and L^T x = b (backward) for lower-triangular L.
void solve_lower(const Matrix& l, Vector& x);
void solve_lower_t(const Matrix& l, Vector& x);
// Multi-RHS: solves L X = B and then L^T X = B column by column in place.
void solve_cholesky(const Matrix& l, Vector& x);
void solve_cholesky_multi(const Matrix& l, Matrix& b);

// Symmetric eigendecomposition via cyclic Jacobi.
// values sorted descending; vectors stored as columns of `vectors`.
struct SymEig {
  Vector values;
  Matrix vectors;
};
SymEig sym_eig(const Matrix& a);

// Thin SVD via one-sided Jacobi: a = u * diag(sigma) * v^T with
// u (m x n), sigma descending, v (n x n). Requires m >= n; zero singular
// values get deterministically completed u columns.
struct Svd {
  Matrix u;
  Vector sigma;
  Matrix v;
};
Svd svd(const Matrix& a);

// Singular values only (symmetric input shortcut used by rank checks).
Vector singular_values_sym(const Matrix& a);

// Real Schur form a = z t z^T with t quasi-upper-triangular; 2x2 diagonal
// blocks carry complex conjugate eigenvalue pairs (real-eigenvalue 2x2
// blocks are split). Francis double-shift QR on the Hessenberg form.
struct RealSchur {
  Matrix t;
  Matrix z;
  bool converged = false;
};
RealSchur real_schur(const Matrix& a, bool want_z = true);

std::vector<std::complex<double>> schur_eigenvalues(const Matrix& t);

// Solve a x = b by LU with partial pivoting (a copied). Returns false when
// the matrix is numerically singular.
bool lu_solve(Matrix a, Vector& x);

}  // namespace fmb::la
