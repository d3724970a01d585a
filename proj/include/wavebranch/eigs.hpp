#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

namespace wavebranch::eigs {

struct Pairs {
  std::vector<double> values;            // ascending real parts
  std::vector<Eigen::VectorXd> vectors;  // unit 2-norm
  std::vector<double> residuals;         // |A x - mu B x| / (|A| |x|) estimate
  double max_imag = 0.0;                 // largest |Im mu| among returned values
  bool converged = true;
};

/// Eigenvalues of A x = mu B x closest to sigma, B diagonal (zero entries give
/// infinite eigenvalues, which are discarded), by shift-invert Arnoldi with full
/// reorthogonalisation over a sparse LU factor of A - sigma B.
Pairs nearest(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& B, int k,
              double sigma, double tol = 1e-10);

/// Lowest k eigenvalues (by real part) of a problem whose spectrum is real and
/// bounded below: repeats `nearest` with the shift moved below the lowest value found.
Pairs lowest(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& B, int k,
             double sigma0 = -1.0, double tol = 1e-10);

/// Number of negative eigenvalues of a symmetric matrix, from the LDL^T inertia.
int negative_inertia(const Eigen::SparseMatrix<double>& A);

}  // namespace wavebranch::eigs
