#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

namespace paley {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Eigenvalues of a real symmetric matrix, ascending (LAPACK dsyevd).
VectorXd sym_eigenvalues(const MatrixXd& a);

/// Full eigendecomposition of a real symmetric matrix, ascending.
void sym_eigendecomposition(const MatrixXd& a, VectorXd& evals, MatrixXd& evecs);

/// Eigenvalues of a complex Hermitian matrix, ascending (LAPACK zheevd).
VectorXd herm_eigenvalues(const MatrixXcd& a);

void herm_eigendecomposition(const MatrixXcd& a, VectorXd& evals, MatrixXcd& evecs);

/// Eigenpairs with eigenvalue < vu of a real symmetric matrix (dsyevr).
/// Returns the count; evals/evecs hold only those pairs.
int sym_eigenpairs_below(const MatrixXd& a, double vu, VectorXd& evals, MatrixXd& evecs);

/// Smallest k eigenpairs of a real symmetric matrix (dsyevr, index range).
void sym_smallest_eigenpairs(const MatrixXd& a, int k, VectorXd& evals, MatrixXd& evecs);

/// Projection of a symmetric matrix onto the PSD cone (clip negative eigenvalues).
MatrixXd psd_projection(const MatrixXd& a);

struct LanczosResult {
    VectorXd ritz_values;   // ascending, bottom end of the spectrum
    MatrixXd ritz_vectors;  // matching columns
    bool converged = false;
    int iterations = 0;
};

/// Bottom-of-spectrum Lanczos with full reorthogonalization for a symmetric
/// operator given only as a matvec.  Finds the `want` smallest eigenpairs to
/// relative tolerance `tol` (against the spectral-range estimate).
LanczosResult lanczos_smallest(const std::function<void(const VectorXd&, VectorXd&)>& matvec,
                               int dim, int want, double tol, int max_iter, uint64_t seed);

struct PowerIterResult {
    double sigma = 0.0;  // largest singular value estimate
    bool converged = false;
    int iterations = 0;
};

/// Largest singular value of a linear operator via power iteration on A^T A.
/// Deterministic start vector from `seed`; one re-seed on stagnation.
PowerIterResult power_iteration_norm(const std::function<void(const VectorXd&, VectorXd&)>& apply,
                                     const std::function<void(const VectorXd&, VectorXd&)>& apply_t,
                                     int rows, int cols, double tol, int max_iter, uint64_t seed);

/// Seed used for power-iteration start vectors; PALEY_SOS_SEED overrides.
uint64_t default_seed();

}  // namespace paley
