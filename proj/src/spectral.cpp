#include "fwcone/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fwcone {

namespace {

double off_diagonal_norm(const std::vector<double>& m, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * m[i * n + j] * m[i * n + j];
  return std::sqrt(s);
}

// Full-storage cyclic Jacobi. `m` is overwritten; `v` accumulates rotations.
int jacobi_sweeps(std::vector<double>& m, std::vector<double>* v, std::size_t n, double threshold) {
  for (int sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
    const double off = off_diagonal_norm(m, n);
    if (off <= threshold) return sweep;
    if (sweep == kMaxJacobiSweeps) throw EigenNotConverged(off, sweep);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (apq == 0.0) continue;
        const double app = m[p * n + p];
        const double aqq = m[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k * n + p];
          const double mkq = m[k * n + q];
          m[k * n + p] = c * mkp - s * mkq;
          m[k * n + q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p * n + k];
          const double mqk = m[q * n + k];
          m[p * n + k] = c * mpk - s * mqk;
          m[q * n + k] = s * mpk + c * mqk;
        }
        // Exact zero for the annihilated pair keeps the off-norm honest.
        m[p * n + q] = 0.0;
        m[q * n + p] = 0.0;
        if (v) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = (*v)[k * n + p];
            const double vkq = (*v)[k * n + q];
            (*v)[k * n + p] = c * vkp - s * vkq;
            (*v)[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  return kMaxJacobiSweeps;
}

std::vector<double> full_storage(const SymMatrix<double>& a) {
  const std::size_t n = a.dim();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = a(i, j);
      if (!std::isfinite(x)) throw std::invalid_argument("eigen_sym: non-finite entry");
      m[i * n + j] = x;
    }
  return m;
}

}  // namespace

EigenResult eigen_sym(const SymMatrix<double>& a) {
  const std::size_t n = a.dim();
  std::vector<double> m = full_storage(a);
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  const double threshold = 1e-12 * (1.0 + a.frobenius_norm());
  const int sweeps = jacobi_sweeps(m, &v, n, threshold);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return m[x * n + x] < m[y * n + y]; });

  EigenResult out{std::vector<double>(n), SquareMatrix<double>(n), sweeps};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = m[order[c] * n + order[c]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v[r * n + order[c]];
  }
  return out;
}

double min_eigenvalue(const SymMatrix<double>& a) {
  const std::size_t n = a.dim();
  if (n == 1) return a(0, 0);
  if (n == 2) {
    const double mean = 0.5 * (a(0, 0) + a(1, 1));
    const double half_diff = 0.5 * (a(0, 0) - a(1, 1));
    return mean - std::hypot(half_diff, a(0, 1));
  }
  std::vector<double> m = full_storage(a);
  jacobi_sweeps(m, nullptr, n, 1e-12 * (1.0 + a.frobenius_norm()));
  double lo = m[0];
  for (std::size_t i = 1; i < n; ++i) lo = std::min(lo, m[i * n + i]);
  return lo;
}

PsdReport is_psd(const SymMatrix<double>& a, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_psd: tolerance must be nonnegative");
  PsdReport report;
  report.min_eigenvalue = min_eigenvalue(a);
  report.tolerance_used = tol * (1.0 + a.max_abs());
  report.is_psd = report.min_eigenvalue >= -report.tolerance_used;
  report.method = PsdMethod::kEigenvalue;
  return report;
}

bool is_psd_exact(const SymMatrix<Rational>& a) {
  // Work on the active trailing block; eliminate one positive pivot at a time.
  std::size_t n = a.dim();
  std::vector<Rational> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(i, j);
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);

  while (!active.empty()) {
    std::size_t pivot_pos = active.size();
    for (std::size_t pos = 0; pos < active.size(); ++pos) {
      const Rational& d = m[active[pos] * n + active[pos]];
      if (d < 0) return false;
      if (d > 0 && pivot_pos == active.size()) pivot_pos = pos;
    }
    // Zero diagonal entries need a zero row in a psd matrix; drop them.
    std::vector<std::size_t> kept;
    for (std::size_t pos = 0; pos < active.size(); ++pos) {
      const std::size_t i = active[pos];
      if (m[i * n + i] != 0) {
        kept.push_back(i);
        continue;
      }
      for (std::size_t j : active)
        if (m[i * n + j] != 0) return false;
    }
    if (kept.empty()) return true;
    active = std::move(kept);

    const std::size_t p = active.front();
    const Rational pivot = m[p * n + p];
    std::vector<std::size_t> rest(active.begin() + 1, active.end());
    for (std::size_t i : rest) {
      const Rational factor = m[i * n + p] / pivot;
      if (factor == 0) continue;
      for (std::size_t j : rest) m[i * n + j] -= factor * m[p * n + j];
    }
    active = std::move(rest);
  }
  return true;
}

PsdReport is_psd(const SymMatrix<Rational>& a, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_psd: tolerance must be nonnegative");
  if (tol > 0.0) return is_psd(a.cast<double>(), tol);
  PsdReport report;
  report.method = PsdMethod::kExactPivot;
  report.tolerance_used = 0.0;
  report.is_psd = is_psd_exact(a);
  const double estimate = min_eigenvalue(a.cast<double>());
  report.min_eigenvalue = report.is_psd ? std::max(estimate, 0.0)
                                        : std::min(estimate, -std::numeric_limits<double>::denorm_min());
  return report;
}

SymMatrix<double> project_psd(const SymMatrix<double>& a) {
  const std::size_t n = a.dim();
  if (n == 1) return SymMatrix<double>::diagonal({std::max(a(0, 0), 0.0)});
  const EigenResult eig = eigen_sym(a);
  SymMatrix<double> out(n);
  for (std::size_t c = 0; c < n; ++c) {
    const double lambda = eig.eigenvalues[c];
    if (lambda <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = lambda * eig.eigenvectors(i, c);
      for (std::size_t j = i; j < n; ++j) out(i, j) += vi * eig.eigenvectors(j, c);
    }
  }
  return out;
}

std::size_t numerical_rank(const SymMatrix<double>& a, double rel_tol) {
  const EigenResult eig = eigen_sym(a);
  const double cutoff = rel_tol * a.max_abs();
  return static_cast<std::size_t>(std::count_if(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                                                [&](double l) { return l > cutoff; }));
}

template <class T>
T determinant(const SymMatrix<T>& a) {
  const std::size_t n = a.dim();
  std::vector<std::vector<T>> m = a.rows();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if constexpr (std::is_same_v<T, double>) {
        if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
      } else {
        if (m[pivot][col] == 0 && m[r][col] != 0) pivot = r;
      }
    }
    if (m[pivot][col] == T(0)) return T(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const T factor = m[r][col] / m[col][col];
      if (factor == T(0)) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

template double determinant<double>(const SymMatrix<double>&);
template Rational determinant<Rational>(const SymMatrix<Rational>&);

}  // namespace fwcone
