#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fwcone/rational.hpp"
#include "fwcone/sym_matrix.hpp"

namespace fwcone {

/// Eigenvalues ascending; column i of `eigenvectors` belongs to eigenvalue i.
struct EigenResult {
  std::vector<double> eigenvalues;
  SquareMatrix<double> eigenvectors;
  int sweeps = 0;
};

class EigenNotConverged : public std::runtime_error {
 public:
  EigenNotConverged(double off_norm, int sweeps)
      : std::runtime_error("Jacobi iteration did not converge after " + std::to_string(sweeps) +
                           " sweeps (off-diagonal norm " + std::to_string(off_norm) + ")"),
        off_norm_(off_norm) {}
  double off_norm() const { return off_norm_; }

 private:
  double off_norm_;
};

inline constexpr int kMaxJacobiSweeps = 100;
inline constexpr double kDefaultPsdTolerance = 1e-9;

/// Cyclic Jacobi eigen-decomposition. Stops once the off-diagonal Frobenius
/// norm drops below 1e-12 * (1 + ||A||_F); throws EigenNotConverged otherwise.
EigenResult eigen_sym(const SymMatrix<double>& a);

/// Smallest eigenvalue only (same Jacobi kernel).
double min_eigenvalue(const SymMatrix<double>& a);

enum class PsdMethod { kEigenvalue, kExactPivot };

struct PsdReport {
  bool is_psd = false;
  /// For kExactPivot this is the floating estimate, clamped so its sign agrees
  /// with the exact verdict.
  double min_eigenvalue = 0.0;
  double tolerance_used = 0.0;
  PsdMethod method = PsdMethod::kEigenvalue;
};

/// psd iff lambda_min >= -tol * (1 + max|a_ij|).
PsdReport is_psd(const SymMatrix<double>& a, double tol = kDefaultPsdTolerance);

/// With tol == 0 the verdict is exact (signed pivots of a symmetric
/// elimination); with tol > 0 this defers to the floating path.
PsdReport is_psd(const SymMatrix<Rational>& a, double tol = 0.0);

/// Exact psd test by symmetric elimination with diagonal pivoting.
bool is_psd_exact(const SymMatrix<Rational>& a);

/// Nearest psd matrix in Frobenius norm: V diag(max(lambda, 0)) V^T.
SymMatrix<double> project_psd(const SymMatrix<double>& a);

/// Number of eigenvalues above rel_tol * max|a_ij|.
std::size_t numerical_rank(const SymMatrix<double>& a, double rel_tol = 1e-8);

/// Determinant by Gaussian elimination with partial pivoting (exact for Rational).
template <class T>
T determinant(const SymMatrix<T>& a);

}  // namespace fwcone
