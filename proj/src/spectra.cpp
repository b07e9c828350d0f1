#include "latmat/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "latmat/error.hpp"

namespace latmat {

namespace {

double offdiag_norm(std::span<const double> a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

}  // namespace

int jacobi_diagonalize(std::span<double> a, std::size_t n, double tol, double* residual) {
  double total = 0.0;
  for (std::size_t k = 0; k < n * n; ++k) total += a[k] * a[k];
  const double target = tol * std::sqrt(total);

  for (int sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
    const double off = offdiag_norm(a, n);
    if (off <= target) {
      if (residual) *residual = off;
      return sweep;
    }
    if (sweep == kMaxJacobiSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        // Rotation angle phi with cot(2 phi) = theta zeroes a_pq; t = tan(phi), smaller root.
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = a[q * n + p] = 0.0;
      }
  }
  throw NumericalError("Jacobi iteration did not converge in " + std::to_string(kMaxJacobiSweeps) + " sweeps");
}

Spectrum eigen_symmetric(const DenseMatrix& m, double tol) {
  if (!m.is_square()) throw ValidationError("eigenvalues need a square matrix");
  if (m.rows() == 0) throw ValidationError("eigenvalues of an empty matrix");
  if (!m.is_symmetric(1e-12)) throw ValidationError("eigen_symmetric needs a symmetric matrix");
  if (!m.all_finite()) throw ValidationError("matrix has non-finite entries");
  const std::size_t n = m.rows();
  std::vector<double> work(m.data().begin(), m.data().end());
  Spectrum out;
  out.sweeps = jacobi_diagonalize(work, n, tol, &out.offdiag_residual);
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = work[i * n + i];
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

double kappa(const DenseMatrix& m) {
  const auto s = eigen_symmetric(m);
  double k = std::abs(s.eigenvalues.front());
  for (double v : s.eigenvalues) k = std::min(k, std::abs(v));
  return k;
}

double spectral_radius(const DenseMatrix& m) {
  const auto s = eigen_symmetric(m);
  return std::max(std::abs(s.eigenvalues.front()), std::abs(s.eigenvalues.back()));
}

double frobenius_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double spectral_norm(const DenseMatrix& m) {
  const auto gram = m.transpose() * m;
  // A^T A is symmetric up to rounding in the product; symmetrize before solving.
  DenseMatrix sym = gram;
  for (std::size_t i = 0; i < sym.rows(); ++i)
    for (std::size_t j = i + 1; j < sym.cols(); ++j) sym(i, j) = sym(j, i) = 0.5 * (gram(i, j) + gram(j, i));
  const auto s = eigen_symmetric(sym);
  return std::sqrt(std::max(0.0, s.eigenvalues.back()));
}

bool is_positive_definite(const DenseMatrix& m, double tol) {
  return eigen_symmetric(m).eigenvalues.front() > tol;
}

double determinant(const DenseMatrix& m) {
  if (!m.is_square()) throw ValidationError("determinant needs a square matrix");
  const std::size_t n = m.rows();
  DenseMatrix lu = m;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (lu(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu(i, k) / lu(k, k);
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= factor * lu(k, j);
    }
  }
  return det;
}

}  // namespace latmat
