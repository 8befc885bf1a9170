#pragma once

#include <cstddef>
#include <vector>

#include "fwcone/factor_width.hpp"
#include "fwcone/poly_forms.hpp"
#include "fwcone/rational.hpp"
#include "fwcone/spectral.hpp"
#include "fwcone/sym_matrix.hpp"

namespace fwcone {

/// p_n^a = (sum x_i)^2 + (a - 1) sum x_i^2.
struct PnaSpec {
  std::size_t n = 1;
  Rational a{1};
};

/// Gram matrix with a on the diagonal and 1 off it.
QuadraticForm pna_form(const PnaSpec& spec);

/// det of the m x m matrix with b on the diagonal and c elsewhere:
/// (b - c + c m) (b - c)^(m - 1).
template <class T>
T rank_one_perturb_det(const T& b, const T& c, std::size_t m) {
  if (m < 1) throw std::invalid_argument("rank_one_perturb_det needs m >= 1");
  T det = b - c + c * T(static_cast<long long>(m));
  for (std::size_t i = 1; i < m; ++i) det *= (b - c);
  return det;
}

/// (n - 1) / (k - 1): the smallest a for which the uniform witness below works.
Rational pna_threshold(std::size_t n, std::size_t k);

/// Uniform decomposition of the p_n^a Gram: every k-subset carries
/// C(n-2, k-2)^{-1} times the k x k matrix with (k-1)a/(n-1) on the diagonal
/// and 1 elsewhere. Throws std::domain_error below the threshold.
ExactBlockDecomposition pna_witness_decomposition(std::size_t n, std::size_t k, const Rational& a);

/// Comparison matrix: diagonal kept, off-diagonal entries -|q_ij|.
template <class T>
SymMatrix<T> comparison_matrix(const SymMatrix<T>& q) {
  SymMatrix<T> out = q;
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = i + 1; j < q.dim(); ++j) out(i, j) = q(i, j) < T(0) ? q(i, j) : T(-q(i, j));
  return out;
}

struct SobsVerdict {
  bool sobs = false;
  PsdReport report;
};

/// Sum-of-binomial-squares test for quadratics: sobs iff the comparison
/// matrix is psd.
SobsVerdict sobs_comparison(const SymMatrix<double>& q, double tol = kDefaultPsdTolerance);
SobsVerdict sobs_comparison(const SymMatrix<Rational>& q);

/// The quinary example: M is not of factor width 4 (A separates it), while
/// Qprime is a Gram matrix of (x_1^2 + ... + x_5^2) q_M that decomposes on
/// 27 supports of size 4.
struct Fixtures {
  SymMatrix<Rational> M;
  SymMatrix<Rational> A;
  SymMatrix<Rational> Qprime;
  /// Monomial order indexing Qprime: x1^2, x1x2, x2^2, x1x3, x2x3, x3^2, ...
  MonomialBasis qprime_basis;
  /// 0-based supports into Qprime.
  std::vector<Support> supports27;
};

/// Embedded constants, validated (symmetry, checksums, <A, M> = -1) on every call.
Fixtures example_m_fixtures();

}  // namespace fwcone
