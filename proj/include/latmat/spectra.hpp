#pragma once

// Symmetric eigenvalues by cyclic Jacobi rotations, plus the spectral functionals built on
// them. Sweeps visit (p, q) pairs in row order, so results are bit-reproducible.

#include <cstddef>
#include <span>
#include <vector>

#include "latmat/matrix.hpp"

namespace latmat {

inline constexpr int kMaxJacobiSweeps = 50;
inline constexpr double kDefaultEigenTolerance = 1e-12;

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  int sweeps = 0;
  double offdiag_residual = 0.0;
};

/// In-place kernel on a row-major n x n symmetric buffer. On return the diagonal of `a` holds the
/// (unsorted) eigenvalues. Returns the number of sweeps; throws NumericalError after
/// kMaxJacobiSweeps without reaching residual <= tol * ||a||_F.
int jacobi_diagonalize(std::span<double> a, std::size_t n, double tol = kDefaultEigenTolerance,
                       double* residual = nullptr);

/// Throws ValidationError for non-square input or asymmetry beyond 1e-12 relative.
Spectrum eigen_symmetric(const DenseMatrix& m, double tol = kDefaultEigenTolerance);

/// Smallest |eigenvalue|.
double kappa(const DenseMatrix& m);
/// Largest |eigenvalue|.
double spectral_radius(const DenseMatrix& m);
double frobenius_norm(const DenseMatrix& m);
/// sqrt(largest eigenvalue of A^T A); any shape.
double spectral_norm(const DenseMatrix& m);
/// Smallest eigenvalue > tol.
bool is_positive_definite(const DenseMatrix& m, double tol = 1e-12);
/// LU with partial pivoting.
double determinant(const DenseMatrix& m);

}  // namespace latmat
