#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fwcone/rational.hpp"
#include "fwcone/sym_matrix.hpp"

namespace fwcone {

/// A matrix B in the dual cone (all k x k principal submatrices psd) with
/// <B, Q> < 0, which proves that Q has factor width greater than k.
struct DualCertificate {
  SymMatrix<double> B;
  std::size_t k = 0;
  double value = 0.0;               // <B, Q>
  double worst_minor_margin = 0.0;  // min over k-supports K of lambda_min(B_K)
  double normalization = 0.0;       // ||B||_F
  double target_norm = 0.0;         // ||Q||_F

  /// <B, Q> / (||B||_F ||Q||_F).
  double normalized_value() const {
    const double denom = normalization * target_norm;
    return denom > 0.0 ? value / denom : 0.0;
  }
};

struct DualMembershipReport {
  bool member = false;
  double worst_margin = 0.0;
  Support worst_support{0};
  std::size_t supports_checked = 0;
  bool exact = false;
};

inline constexpr double kCertificateTolerance = 1e-9;
inline constexpr double kCertificateValueMargin = 1e-8;

/// Checks every k x k principal submatrix for psd-ness. The margin reported is
/// the smallest eigenvalue over all of them; membership uses
/// lambda_min >= -tol * (1 + max|B_ij|).
DualMembershipReport dual_membership(const SymMatrix<double>& b, std::size_t k,
                                     double tol = kCertificateTolerance);

/// Exact (pivot-based) verdict when tol == 0.
DualMembershipReport dual_membership(const SymMatrix<Rational>& b, std::size_t k, double tol = 0.0);

/// Dual of the cone generated by an explicit support list: only those
/// principal submatrices need to be psd.
DualMembershipReport dual_membership(const SymMatrix<double>& b, const std::vector<Support>& supports,
                                     double tol = kCertificateTolerance);

/// Independent re-check of a candidate: dual membership at `tol` and
/// <B, Q> < -kCertificateValueMargin * ||Q||_F * ||B||_F.
std::optional<DualCertificate> verify_dual_certificate(const SymMatrix<double>& b,
                                                       const SymMatrix<double>& q, std::size_t k,
                                                       double tol = kCertificateTolerance);
std::optional<DualCertificate> verify_dual_certificate(const SymMatrix<double>& b,
                                                       const SymMatrix<double>& q, std::size_t k,
                                                       const std::vector<Support>& supports,
                                                       double tol = kCertificateTolerance);

/// Shifts B by t * I with t just large enough that every k x k principal
/// submatrix becomes psd. Returns B unchanged when it already is.
SymMatrix<double> shift_into_dual_cone(const SymMatrix<double>& b, std::size_t k);
SymMatrix<double> shift_into_dual_cone(const SymMatrix<double>& b, const std::vector<Support>& supports);

/// The 4 x 4 matrix with first row (1, cos a, cos(a-c), cos c) spanning a
/// non-psd extreme ray of the dual of FW_3^4.
SymMatrix<double> cos_ray(double a, double c);

/// One member of the cosine family after permutation and diagonal scaling:
/// D P cos_ray(a, c) P^T D with (P X P^T)_ij = X_{perm[i], perm[j]}.
struct CosExtremeRay {
  double a = 0.0;
  double c = 0.0;
  std::array<std::size_t, 4> permutation{0, 1, 2, 3};
  std::array<double, 4> diag_scale{1.0, 1.0, 1.0, 1.0};

  SymMatrix<double> matrix() const;
};

struct CosSearchOptions {
  int grid = 64;
  int refine_iterations = 200;
};

struct CosSearchResult {
  std::optional<DualCertificate> certificate;
  CosExtremeRay best;
  double best_normalized_value = 0.0;  // <X, Q> / ||X||_F at the best point
};

/// Grid search over the cosine family (all permutations and sign patterns),
/// then coordinate-descent refinement. A certificate is returned only when the
/// minimum is below -1e-8 and it re-verifies at k = 3.
CosSearchResult cos_certificate_search(const SymMatrix<double>& q, const CosSearchOptions& opts = {});

struct DykstraOptions {
  int max_cycles = 20000;
  double tol = kCertificateTolerance;
  /// Restrict to these supports instead of all k-subsets.
  std::optional<std::vector<Support>> support_list;
};

/// Dykstra's cyclic projections onto {B : B_K psd} for every k-support,
/// started at -Q/||Q||_F. Returns the first verified separating iterate.
std::optional<DualCertificate> dykstra_dual_certificate(const SymMatrix<double>& q, std::size_t k,
                                                        const DykstraOptions& opts = {});

struct ExtremeRayReport {
  bool is_psd = false;
  std::size_t rank = 0;
  bool rank_one = false;
  /// Non-psd branch: B lies in the dual of FW_{n-1}^n.
  bool in_dual_cone = false;
  /// Non-psd branch: numerical ranks of the (n-1) x (n-1) principal submatrices.
  std::vector<std::size_t> minor_ranks;
  bool extreme = false;
  std::string reason;
};

inline constexpr double kRankTolerance = 1e-8;

/// Applies the extreme-ray dichotomy for the dual of FW_{n-1}^n: a psd matrix
/// is extreme iff it has rank one; a non-psd member is extreme iff every
/// (n-1) x (n-1) principal submatrix has rank n - 2.
ExtremeRayReport check_extreme_candidate(const SymMatrix<double>& b);

/// Matrix over the degree-(r+1) monomials in n variables (descending lex):
/// k - 1 where the two exponent tuples sum to an all-even tuple, -1 elsewhere.
SymMatrix<Rational> bnr_certificate(std::size_t n, int r, std::size_t k);

/// Lifts a unit-diagonal 4 x 4 dual element to the degree-(r+1) monomial
/// basis in 4 variables. Entry (i, j) depends on the parity of i + j: 1 if
/// all even, b_kl if odd exactly at k != l, 0 for one or three odd entries,
/// omega if all odd.
template <class T>
SymMatrix<T> lift_quaternary_certificate(const SymMatrix<T>& b4, int r, const T& omega = T(1));

}  // namespace fwcone
