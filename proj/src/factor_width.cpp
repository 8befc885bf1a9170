#include "fwcone/factor_width.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace fwcone {

namespace {

template <class T>
T abs_value(const T& v) {
  return v < T(0) ? T(-v) : v;
}

template <class T>
bool block_is_psd(const SymMatrix<T>& block) {
  if constexpr (std::is_same_v<T, Rational>) {
    return is_psd_exact(block);
  } else {
    return is_psd(block, kBlockPsdTolerance).is_psd;
  }
}

std::vector<Support> resolve_supports(std::size_t n, std::size_t k, const SolverOptions& opts) {
  if (!opts.support_list) return enumerate_supports(n, k);
  const auto& list = *opts.support_list;
  if (list.empty()) throw std::invalid_argument("support_list must not be empty");
  for (const auto& s : list) {
    s.check_within(n);
    if (s.size() > k)
      throw std::invalid_argument("support of size " + std::to_string(s.size()) +
                                  " exceeds width k=" + std::to_string(k));
  }
  return list;
}

// Runs fn(i) for i in [0, count), split into contiguous chunks across threads.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
}

double max_abs_difference(const SymMatrix<double>& a, const SymMatrix<double>& b) {
  double m = 0.0;
  const auto& pa = a.packed();
  const auto& pb = b.packed();
  for (std::size_t p = 0; p < pa.size(); ++p) m = std::max(m, std::abs(pa[p] - pb[p]));
  return m;
}

}  // namespace

template <class T>
BasicBlockDecomposition<T>::BasicBlockDecomposition(std::size_t ambient_n, std::size_t k,
                                                    std::vector<Block<T>> blocks,
                                                    const SymMatrix<T>& target)
    : n_(ambient_n), k_(k), blocks_(std::move(blocks)), residual_(0) {
  if (target.dim() != n_) throw std::invalid_argument("decomposition target has wrong dimension");
  for (const auto& b : blocks_) {
    b.support.check_within(n_);
    if (b.support.size() > k_) throw std::invalid_argument("block support larger than k");
    if (b.matrix.dim() != b.support.size())
      throw std::invalid_argument("block size does not match its support");
    if (!block_is_psd(b.matrix)) throw std::invalid_argument("decomposition block is not psd");
  }
  const SymMatrix<T> diff = target - reconstruct();
  for (const auto& v : diff.packed()) residual_ = std::max(residual_, abs_value(v));
}

template <class T>
SymMatrix<T> BasicBlockDecomposition<T>::reconstruct() const {
  SymMatrix<T> sum(n_);
  for (const auto& b : blocks_) accumulate_embedded(sum, b.matrix, b.support);
  return sum;
}

template class BasicBlockDecomposition<double>;
template class BasicBlockDecomposition<Rational>;

void SolverOptions::validate() const {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(feas_tol > 0.0)) throw std::invalid_argument("feas_tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (!(relaxation > 0.0 && relaxation < 2.0)) throw std::invalid_argument("relaxation must lie in (0, 2)");
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::kMember:
      return "member";
    case Membership::kNonMember:
      return "non_member";
    case Membership::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

DecomposeResult fw_decompose(const SymMatrix<double>& a, std::size_t k, const SolverOptions& opts) {
  opts.validate();
  const std::size_t n = a.dim();
  if (k < 1 || k > n) throw std::invalid_argument("fw_decompose: need 1 <= k <= n");
  const std::vector<Support> supports = resolve_supports(n, k, opts);
  const std::size_t m = supports.size();

  DecomposeResult result;
  result.residual_threshold = opts.feas_tol * (1.0 + a.max_abs());

  // Entry (i, j) appears in cover(i, j) blocks; for the full support list this
  // is C(n-1, k-1) on the diagonal and C(n-2, k-2) off it.
  SymMatrix<double> cover(n);
  for (const auto& s : supports) accumulate_embedded(cover, SymMatrix<double>::uniform(s.size(), 1.0, 1.0), s);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (cover(i, j) == 0.0 && a(i, j) != 0.0) {
        // No block can reach this entry; the single-entry matrix separates.
        SymMatrix<double> direction(n);
        direction(i, j) = a(i, j) > 0.0 ? -1.0 : 1.0;
        result.dual_direction = direction;
        result.final_residual = std::abs(a(i, j));
        return result;
      }
    }
  }

  SymMatrix<double> inv_cover(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) inv_cover(i, j) = cover(i, j) > 0.0 ? 1.0 / cover(i, j) : 0.0;

  auto spread = [&](const SymMatrix<double>& r, const Support& s) {
    SymMatrix<double> out(s.size());
    for (std::size_t p = 0; p < s.size(); ++p)
      for (std::size_t q = p; q < s.size(); ++q) out(p, q) = r(s[p], s[q]) * inv_cover(s[p], s[q]);
    return out;
  };

  std::vector<SymMatrix<double>> x, z, u, u_step;
  x.reserve(m);
  z.reserve(m);
  u.reserve(m);
  u_step.reserve(m);
  for (const auto& s : supports) {
    x.push_back(spread(a, s));
    z.push_back(SymMatrix<double>(s.size()));
    u.push_back(SymMatrix<double>(s.size()));
    u_step.push_back(SymMatrix<double>(s.size()));
  }

  double residual = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    parallel_for(m, opts.threads, [&](std::size_t b) { z[b] = project_psd(x[b] + u[b]); });

    SymMatrix<double> z_sum(n);
    SymMatrix<double> u_sum(n);
    for (std::size_t b = 0; b < m; ++b) {
      accumulate_embedded(z_sum, z[b], supports[b]);
      accumulate_embedded(u_sum, u[b], supports[b]);
    }
    residual = max_abs_difference(a, z_sum);
    result.iterations = it;
    if (it % 100 == 1) result.residual_history.push_back(residual);
    if (residual <= result.residual_threshold) {
      std::vector<Block<double>> blocks;
      blocks.reserve(m);
      for (std::size_t b = 0; b < m; ++b) blocks.push_back({supports[b], z[b]});
      result.final_residual = residual;
      result.decomposition.emplace(n, k, std::move(blocks), a);
      return result;
    }

    // Affine step on the relaxed point H = alpha Z + (1 - alpha) X: project
    // H - U onto {sum iota_K(X_K) = A}.
    SymMatrix<double> h_sum(n);
    for (std::size_t b = 0; b < m; ++b) {
      z[b] *= opts.relaxation;
      z[b] += x[b] * (1.0 - opts.relaxation);
      accumulate_embedded(h_sum, z[b], supports[b]);
    }
    const SymMatrix<double> gap = a - (h_sum - u_sum);
    for (std::size_t b = 0; b < m; ++b) {
      SymMatrix<double> x_new = z[b] - u[b] + spread(gap, supports[b]);
      u_step[b] = x_new - z[b];
      u[b] += u_step[b];
      x[b] = std::move(x_new);
    }
  }
  result.final_residual = residual;

  // The multiplier increments settle on the gap between the affine set and
  // the psd blocks; averaging them back to an n x n matrix and negating gives
  // a candidate separating element.
  SymMatrix<double> direction(n);
  for (std::size_t b = 0; b < m; ++b) accumulate_embedded(direction, u_step[b], supports[b]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) direction(i, j) *= -inv_cover(i, j) * opts.rho;
  result.dual_direction = direction;
  return result;
}

MembershipVerdict fw_membership(const SymMatrix<double>& a, std::size_t k, const SolverOptions& opts) {
  MembershipVerdict verdict;
  DecomposeResult solved = fw_decompose(a, k, opts);
  verdict.diagnostics.iterations = solved.iterations;
  verdict.diagnostics.primal_residual = solved.final_residual;
  if (solved.converged()) {
    verdict.status = Membership::kMember;
    verdict.decomposition = std::move(solved.decomposition);
    return verdict;
  }

  // With an explicit support list the relevant dual only constrains those blocks.
  const std::vector<Support> supports = resolve_supports(a.dim(), k, opts);
  auto consider = [&](const SymMatrix<double>& candidate, const char* source) {
    const SymMatrix<double> repaired = shift_into_dual_cone(candidate, supports);
    const double norm = repaired.frobenius_norm() * a.frobenius_norm();
    if (norm > 0.0) {
      const double normalized = frobenius_inner(repaired, a) / norm;
      verdict.diagnostics.best_dual_value = std::min(verdict.diagnostics.best_dual_value, normalized);
    }
    if (auto cert = verify_dual_certificate(repaired, a, k, supports)) {
      verdict.status = Membership::kNonMember;
      verdict.certificate = std::move(cert);
      verdict.diagnostics.certificate_source = source;
      return true;
    }
    return false;
  };

  if (solved.dual_direction && consider(*solved.dual_direction, "splitting_multipliers")) return verdict;

  const EigenResult eig = eigen_sym(a);
  if (eig.eigenvalues.front() < 0.0) {
    SymMatrix<double> vvt(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = i; j < a.dim(); ++j)
        vvt(i, j) = eig.eigenvectors(i, 0) * eig.eigenvectors(j, 0);
    if (consider(vvt, "negative_eigenvector")) return verdict;
  }

  if (a.dim() == 4 && k == 3) {
    CosSearchResult cos = cos_certificate_search(a);
    if (cos.certificate && consider(cos.certificate->B, "cosine_family")) return verdict;
  }

  DykstraOptions dykstra;
  dykstra.support_list = opts.support_list;
  if (auto cert = dykstra_dual_certificate(a, k, dykstra)) {
    if (consider(cert->B, "dykstra")) return verdict;
  }
  return verdict;
}

std::vector<std::vector<double>> extract_factors(const BlockDecomposition& d) {
  const std::size_t n = d.ambient_n();
  std::vector<std::vector<double>> columns;
  for (const auto& block : d.blocks()) {
    const EigenResult eig = eigen_sym(block.matrix);
    const double cutoff = 1e-10 * std::max(1.0, block.matrix.max_abs());
    for (std::size_t c = 0; c < eig.eigenvalues.size(); ++c) {
      const double lambda = eig.eigenvalues[c];
      if (lambda <= cutoff) continue;
      std::vector<double> col(n, 0.0);
      const double root = std::sqrt(lambda);
      for (std::size_t p = 0; p < block.support.size(); ++p)
        col[block.support[p]] = root * eig.eigenvectors(p, c);
      columns.push_back(std::move(col));
    }
  }
  std::vector<std::vector<double>> v(n, std::vector<double>(columns.size(), 0.0));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) v[i][c] = columns[c][i];
  return v;
}

}  // namespace fwcone
