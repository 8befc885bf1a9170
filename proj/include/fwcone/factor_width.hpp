#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fwcone/dual_cone.hpp"
#include "fwcone/rational.hpp"
#include "fwcone/spectral.hpp"
#include "fwcone/sym_matrix.hpp"

namespace fwcone {

template <class T>
struct Block {
  Support support;
  SymMatrix<T> matrix;
};

/// A witness of factor width <= k: psd blocks on supports of size <= k whose
/// embedded sum reproduces the target. The residual is always recomputed here.
template <class T>
class BasicBlockDecomposition {
 public:
  /// Throws std::invalid_argument if a support is too large or a block is not
  /// psd (exactly for Rational, at 1e-8 relative for double).
  BasicBlockDecomposition(std::size_t ambient_n, std::size_t k, std::vector<Block<T>> blocks,
                          const SymMatrix<T>& target);

  std::size_t ambient_n() const { return n_; }
  std::size_t k() const { return k_; }
  const std::vector<Block<T>>& blocks() const { return blocks_; }
  /// max_ij |A - sum iota_K(B_K)|.
  T residual() const { return residual_; }

  SymMatrix<T> reconstruct() const;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<Block<T>> blocks_;
  T residual_;
};

using BlockDecomposition = BasicBlockDecomposition<double>;
using ExactBlockDecomposition = BasicBlockDecomposition<Rational>;

inline constexpr double kBlockPsdTolerance = 1e-8;

struct SolverOptions {
  double rho = 1.0;
  double feas_tol = 1e-7;
  int max_iter = 20000;
  std::optional<std::vector<Support>> support_list;
  /// Worker threads for the per-block projections (1 = serial).
  int threads = 1;
  /// Over-relaxation of the psd iterate before the affine step, in (0, 2).
  double relaxation = 1.8;

  void validate() const;
};

/// Outcome of the splitting solver. On failure `decomposition` is empty and
/// `dual_direction` holds the limiting multiplier increment, which points
/// towards a separating dual element when the problem is infeasible.
struct DecomposeResult {
  std::optional<BlockDecomposition> decomposition;
  int iterations = 0;
  double final_residual = 0.0;
  /// feas_tol * (1 + max|A_ij|).
  double residual_threshold = 0.0;
  std::vector<double> residual_history;  // one sample every 100 iterations
  std::optional<SymMatrix<double>> dual_direction;

  bool converged() const { return decomposition.has_value(); }
};

/// Alternating-direction splitting over the blocks {B_K}: project each block
/// onto the psd cone, correct with the consensus residual spread over each
/// entry's coverage count, then update the scaled multipliers.
DecomposeResult fw_decompose(const SymMatrix<double>& a, std::size_t k, const SolverOptions& opts = {});

enum class Membership { kMember, kNonMember, kInconclusive };

std::string to_string(Membership m);

struct MembershipDiagnostics {
  int iterations = 0;
  double primal_residual = 0.0;
  /// Best normalized <B, A> among candidates tried (0 when none were built).
  double best_dual_value = 0.0;
  std::string certificate_source;
};

struct MembershipVerdict {
  Membership status = Membership::kInconclusive;
  std::optional<BlockDecomposition> decomposition;
  std::optional<DualCertificate> certificate;
  MembershipDiagnostics diagnostics;
};

/// Runs fw_decompose and, if it fails, searches for a verified dual
/// certificate. Non-membership is only ever reported with a certificate.
MembershipVerdict fw_membership(const SymMatrix<double>& a, std::size_t k, const SolverOptions& opts = {});

/// Columns sqrt(lambda) * v for each block eigenpair (eigenvalues below
/// 1e-10 relative dropped); A ~ V V^T with at most k nonzeros per column.
/// Returned as n rows of equal length.
std::vector<std::vector<double>> extract_factors(const BlockDecomposition& d);

}  // namespace fwcone
