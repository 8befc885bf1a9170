#include "fwcone/dual_cone.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fwcone/poly_forms.hpp"
#include "fwcone/spectral.hpp"

namespace fwcone {

namespace {

std::optional<DualCertificate> make_certificate(const SymMatrix<double>& b, const SymMatrix<double>& q,
                                                std::size_t k, const DualMembershipReport& report) {
  DualCertificate cert{b, k};
  cert.value = frobenius_inner(b, q);
  cert.worst_minor_margin = report.worst_margin;
  cert.normalization = b.frobenius_norm();
  cert.target_norm = q.frobenius_norm();
  return cert;
}

}  // namespace

DualMembershipReport dual_membership(const SymMatrix<double>& b, const std::vector<Support>& supports,
                                     double tol) {
  if (supports.empty()) throw std::invalid_argument("dual_membership: empty support list");
  DualMembershipReport report;
  bool first = true;
  for (const Support& s : supports) {
    const double lo = min_eigenvalue(principal_submatrix(b, s));
    if (first || lo < report.worst_margin) {
      report.worst_margin = lo;
      report.worst_support = s;
      first = false;
    }
    ++report.supports_checked;
  }
  report.member = report.worst_margin >= -tol * (1.0 + b.max_abs());
  return report;
}

DualMembershipReport dual_membership(const SymMatrix<double>& b, std::size_t k, double tol) {
  if (k < 1 || k > b.dim()) throw std::invalid_argument("dual_membership: need 1 <= k <= n");
  return dual_membership(b, enumerate_supports(b.dim(), k), tol);
}

DualMembershipReport dual_membership(const SymMatrix<Rational>& b, std::size_t k, double tol) {
  if (tol > 0.0) return dual_membership(b.cast<double>(), k, tol);
  const std::size_t n = b.dim();
  if (k < 1 || k > n) throw std::invalid_argument("dual_membership: need 1 <= k <= n");
  DualMembershipReport report;
  report.exact = true;
  report.member = true;
  bool first = true;
  for (const Support& s : enumerate_supports(n, k)) {
    const SymMatrix<Rational> sub = principal_submatrix(b, s);
    const bool psd = is_psd_exact(sub);
    double lo = min_eigenvalue(sub.cast<double>());
    // Keep the reported margin consistent with the exact verdict.
    lo = psd ? std::max(lo, 0.0) : std::min(lo, -std::numeric_limits<double>::denorm_min());
    if (!psd) report.member = false;
    if (first || lo < report.worst_margin) {
      report.worst_margin = lo;
      report.worst_support = s;
      first = false;
    }
    ++report.supports_checked;
  }
  return report;
}

std::optional<DualCertificate> verify_dual_certificate(const SymMatrix<double>& b,
                                                       const SymMatrix<double>& q, std::size_t k,
                                                       const std::vector<Support>& supports, double tol) {
  if (b.dim() != q.dim()) throw std::invalid_argument("certificate dimension mismatch");
  const double value = frobenius_inner(b, q);
  const double bound = -kCertificateValueMargin * q.frobenius_norm() * b.frobenius_norm();
  if (!(value < bound)) return std::nullopt;
  const DualMembershipReport report = dual_membership(b, supports, tol);
  if (!report.member) return std::nullopt;
  return make_certificate(b, q, k, report);
}

std::optional<DualCertificate> verify_dual_certificate(const SymMatrix<double>& b,
                                                       const SymMatrix<double>& q, std::size_t k,
                                                       double tol) {
  if (k < 1 || k > b.dim()) throw std::invalid_argument("verify_dual_certificate: need 1 <= k <= n");
  return verify_dual_certificate(b, q, k, enumerate_supports(b.dim(), k), tol);
}

SymMatrix<double> shift_into_dual_cone(const SymMatrix<double>& b, const std::vector<Support>& supports) {
  const DualMembershipReport report = dual_membership(b, supports, 0.0);
  if (report.worst_margin >= 0.0) return b;
  const double shift = -report.worst_margin * (1.0 + 1e-12) + 1e-14 * (1.0 + b.max_abs());
  SymMatrix<double> out = b;
  for (std::size_t i = 0; i < out.dim(); ++i) out(i, i) += shift;
  return out;
}

SymMatrix<double> shift_into_dual_cone(const SymMatrix<double>& b, std::size_t k) {
  return shift_into_dual_cone(b, enumerate_supports(b.dim(), k));
}

SymMatrix<double> cos_ray(double a, double c) {
  const double ca = std::cos(a);
  const double cc = std::cos(c);
  const double cac = std::cos(a - c);
  return SymMatrix<double>::from_rows({{1.0, ca, cac, cc},
                                       {ca, 1.0, cc, cac},
                                       {cac, cc, 1.0, ca},
                                       {cc, cac, ca, 1.0}});
}

SymMatrix<double> CosExtremeRay::matrix() const {
  const SymMatrix<double> base = cos_ray(a, c);
  SymMatrix<double> out(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      out(i, j) = diag_scale[i] * diag_scale[j] * base(permutation[i], permutation[j]);
  return out;
}

CosSearchResult cos_certificate_search(const SymMatrix<double>& q, const CosSearchOptions& opts) {
  if (q.dim() != 4) throw std::invalid_argument("cos_certificate_search needs a 4 x 4 matrix");
  if (opts.grid < 1 || opts.refine_iterations < 0)
    throw std::invalid_argument("cos_certificate_search: bad options");

  std::vector<std::array<std::size_t, 4>> perms;
  std::array<std::size_t, 4> p{0, 1, 2, 3};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  double qf[4][4];
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) qf[i][j] = q(i, j);

  const int g = opts.grid;
  const double step = 2.0 * std::numbers::pi / g;
  auto angle = [&](int idx) { return -std::numbers::pi + (idx + 0.5) * step; };

  // Objective for a fixed (permutation, signs) on the raw cosine matrix; the
  // Frobenius norm is invariant under both.
  CosExtremeRay best;
  double best_value = std::numeric_limits<double>::infinity();
  for (int ia = 0; ia < g; ++ia) {
    for (int ic = 0; ic < g; ++ic) {
      const SymMatrix<double> x = cos_ray(angle(ia), angle(ic));
      const double norm = x.frobenius_norm();
      for (const auto& perm : perms) {
        double xp[4][4];
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) xp[i][j] = x(perm[i], perm[j]) * qf[i][j];
        for (unsigned mask = 0; mask < 16; ++mask) {
          double s[4];
          for (std::size_t i = 0; i < 4; ++i) s[i] = (mask >> i) & 1u ? -1.0 : 1.0;
          double v = 0.0;
          for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) v += s[i] * s[j] * xp[i][j];
          v /= norm;
          if (v < best_value) {
            best_value = v;
            best.a = angle(ia);
            best.c = angle(ic);
            best.permutation = perm;
            for (std::size_t i = 0; i < 4; ++i) best.diag_scale[i] = s[i];
          }
        }
      }
    }
  }

  // Coordinate descent on (a, c) and multiplicative steps on the scales.
  auto objective = [&](const CosExtremeRay& ray) {
    const SymMatrix<double> m = ray.matrix();
    return frobenius_inner(m, q) / m.frobenius_norm();
  };
  double angle_step = step;
  double scale_step = 0.5;
  for (int it = 0; it < opts.refine_iterations; ++it) {
    bool improved = false;
    for (int coord = 0; coord < 6; ++coord) {
      for (double dir : {1.0, -1.0}) {
        CosExtremeRay trial = best;
        if (coord == 0) trial.a += dir * angle_step;
        else if (coord == 1) trial.c += dir * angle_step;
        else trial.diag_scale[coord - 2] *= std::exp(dir * scale_step);
        const double v = objective(trial);
        if (v < best_value) {
          best_value = v;
          best = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      angle_step *= 0.5;
      scale_step *= 0.5;
    }
  }

  CosSearchResult result;
  result.best = best;
  result.best_normalized_value = best_value;
  if (best_value < -1e-8) {
    const SymMatrix<double> b = best.matrix();
    const DualMembershipReport report = dual_membership(b, 3, kCertificateTolerance);
    if (report.member && frobenius_inner(b, q) < 0.0) result.certificate = make_certificate(b, q, 3, report);
  }
  return result;
}

std::optional<DualCertificate> dykstra_dual_certificate(const SymMatrix<double>& q, std::size_t k,
                                                        const DykstraOptions& opts) {
  const std::size_t n = q.dim();
  if (k < 1 || k > n) throw std::invalid_argument("dykstra_dual_certificate: need 1 <= k <= n");
  const double qn = q.frobenius_norm();
  if (qn == 0.0) return std::nullopt;

  const std::vector<Support> supports = opts.support_list ? *opts.support_list : enumerate_supports(n, k);
  for (const auto& s : supports) {
    s.check_within(n);
    if (s.size() > k) throw std::invalid_argument("dykstra_dual_certificate: support larger than k");
  }
  SymMatrix<double> b = q * (-1.0 / qn);
  std::vector<SymMatrix<double>> increments;
  increments.reserve(supports.size());
  for (const auto& s : supports) increments.emplace_back(s.size());

  for (int cycle = 0; cycle < opts.max_cycles; ++cycle) {
    for (std::size_t idx = 0; idx < supports.size(); ++idx) {
      const Support& s = supports[idx];
      const SymMatrix<double> y = principal_submatrix(b, s) + increments[idx];
      const SymMatrix<double> projected = project_psd(y);
      increments[idx] = y - projected;
      for (std::size_t p = 0; p < s.size(); ++p)
        for (std::size_t r = p; r < s.size(); ++r) b(s[p], s[r]) = projected(p, r);
    }
    if (auto cert = verify_dual_certificate(b, q, k, supports, opts.tol)) return cert;
    if (auto cert = verify_dual_certificate(shift_into_dual_cone(b, supports), q, k, supports, opts.tol))
      return cert;
  }
  return std::nullopt;
}

ExtremeRayReport check_extreme_candidate(const SymMatrix<double>& b) {
  const std::size_t n = b.dim();
  if (n < 2) throw std::invalid_argument("check_extreme_candidate needs n >= 2");
  ExtremeRayReport report;
  report.is_psd = is_psd(b).is_psd;
  report.rank = numerical_rank(b, kRankTolerance);
  if (report.is_psd) {
    report.rank_one = report.rank == 1;
    report.extreme = report.rank_one;
    report.reason = report.rank_one ? "psd of rank one" : "psd of rank " + std::to_string(report.rank);
    return report;
  }
  report.in_dual_cone = dual_membership(b, n - 1).member;
  bool all_deficient = true;
  for (const Support& s : enumerate_supports(n, n - 1)) {
    const std::size_t r = numerical_rank(principal_submatrix(b, s), kRankTolerance);
    report.minor_ranks.push_back(r);
    if (r != n - 2) all_deficient = false;
  }
  report.extreme = report.in_dual_cone && all_deficient;
  if (!report.in_dual_cone)
    report.reason = "not psd and outside the dual cone";
  else if (!all_deficient)
    report.reason = "not psd; some (n-1)-minor has rank other than n-2";
  else
    report.reason = "not psd; every (n-1)-minor has rank n-2";
  return report;
}

SymMatrix<Rational> bnr_certificate(std::size_t n, int r, std::size_t k) {
  if (n < 1 || r < 0 || k < 2) throw std::invalid_argument("bnr_certificate: need n >= 1, r >= 0, k >= 2");
  const MonomialBasis basis = monomial_basis(n, r + 1);
  const Rational on_even(static_cast<long long>(k) - 1);
  SymMatrix<Rational> out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j)
      out(i, j) = (basis[i] + basis[j]).parity_mask() == 0 ? on_even : Rational(-1);
  return out;
}

template <class T>
SymMatrix<T> lift_quaternary_certificate(const SymMatrix<T>& b4, int r, const T& omega) {
  if (b4.dim() != 4) throw std::invalid_argument("lift needs a 4 x 4 base matrix");
  if (r < 0) throw std::invalid_argument("lift needs r >= 0");
  for (std::size_t i = 0; i < 4; ++i) {
    bool unit;
    if constexpr (std::is_same_v<T, double>) unit = std::abs(b4(i, i) - 1.0) <= 1e-12;
    else unit = b4(i, i) == T(1);
    if (!unit) throw std::invalid_argument("lift needs a unit-diagonal base matrix");
  }
  const MonomialBasis basis = monomial_basis(4, r + 1);
  SymMatrix<T> out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const std::uint32_t mask = (basis[i] + basis[j]).parity_mask();
      switch (std::popcount(mask)) {
        case 0:
          out(i, j) = T(1);
          break;
        case 2: {
          const auto lo = static_cast<std::size_t>(std::countr_zero(mask));
          const auto hi = static_cast<std::size_t>(31 - std::countl_zero(mask));
          out(i, j) = b4(lo, hi);
          break;
        }
        case 4:
          out(i, j) = omega;
          break;
        default:
          out(i, j) = T(0);
      }
    }
  }
  return out;
}

template SymMatrix<double> lift_quaternary_certificate<double>(const SymMatrix<double>&, int, const double&);
template SymMatrix<Rational> lift_quaternary_certificate<Rational>(const SymMatrix<Rational>&, int,
                                                                   const Rational&);

}  // namespace fwcone
