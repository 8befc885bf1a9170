#include "fwcone/poly_forms.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

namespace fwcone {

std::vector<ExponentTuple> exponents_of_degree(std::size_t n, int d) {
  if (n < 1 || d < 0) throw std::invalid_argument("exponents_of_degree: need n >= 1, d >= 0");
  std::vector<ExponentTuple> out;
  std::vector<int> current(n, 0);
  std::function<void(std::size_t, int)> fill = [&](std::size_t pos, int remaining) {
    if (pos + 1 == n) {
      current[pos] = remaining;
      out.emplace_back(current);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      current[pos] = e;
      fill(pos + 1, remaining - e);
    }
  };
  fill(0, d);
  return out;
}

MonomialBasis::MonomialBasis(std::size_t n, int d, std::vector<ExponentTuple> tuples)
    : n_(n), d_(d), tuples_(std::move(tuples)) {
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    if (!index_.emplace(tuples_[i], i).second) throw std::invalid_argument("duplicate monomial in basis");
  }
}

MonomialBasis MonomialBasis::standard(std::size_t n, int d) {
  std::vector<ExponentTuple> tuples = exponents_of_degree(n, d);
  std::sort(tuples.begin(), tuples.end(), std::greater<>());
  return MonomialBasis(n, d, std::move(tuples));
}

MonomialBasis MonomialBasis::from_tuples(std::vector<ExponentTuple> tuples) {
  if (tuples.empty()) throw std::invalid_argument("basis must be nonempty");
  const std::size_t n = tuples.front().size();
  const int d = tuples.front().degree();
  for (const auto& t : tuples)
    if (t.size() != n || t.degree() != d) throw std::invalid_argument("basis tuples must share length and degree");
  if (tuples.size() != binomial(n + static_cast<std::size_t>(d) - 1, static_cast<std::size_t>(d)))
    throw std::invalid_argument("basis must list every monomial of its degree");
  return MonomialBasis(n, d, std::move(tuples));
}

std::size_t MonomialBasis::index_of(const ExponentTuple& t) const {
  auto it = index_.find(t);
  return it == index_.end() ? tuples_.size() : it->second;
}

HomogeneousPoly::HomogeneousPoly(std::size_t n, int degree) : n_(n), degree_(degree) {
  if (n < 1 || degree < 0) throw std::invalid_argument("HomogeneousPoly: need n >= 1, degree >= 0");
}

Rational HomogeneousPoly::coefficient(const ExponentTuple& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomogeneousPoly::add_term(const ExponentTuple& e, const Rational& c) {
  if (e.size() != n_) throw std::invalid_argument("monomial has wrong number of variables");
  if (e.degree() != degree_)
    throw std::invalid_argument("monomial degree " + std::to_string(e.degree()) + " differs from " +
                                std::to_string(degree_));
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("cannot multiply polynomials in different variables");
  HomogeneousPoly out(a.n_, a.degree_ + b.degree_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

HomogeneousPoly gram_to_poly(const SymMatrix<Rational>& gram, const MonomialBasis& basis) {
  if (gram.dim() != basis.size()) throw std::invalid_argument("gram_to_poly: Gram size does not match basis");
  HomogeneousPoly p(basis.num_vars(), 2 * basis.degree());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    p.add_term(basis[i] + basis[i], gram(i, i));
    for (std::size_t j = i + 1; j < basis.size(); ++j) p.add_term(basis[i] + basis[j], 2 * gram(i, j));
  }
  return p;
}

HomogeneousPoly quadratic_poly(const QuadraticForm& q) {
  const std::size_t n = q.Q.dim();
  HomogeneousPoly p(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 2;
    p.add_term(ExponentTuple(e), q.Q(i, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<int> f(n, 0);
      f[i] = 1;
      f[j] = 1;
      p.add_term(ExponentTuple(f), 2 * q.Q(i, j));
    }
  }
  return p;
}

HomogeneousPoly multiply_weighted_power(const QuadraticForm& q, const std::vector<Rational>& lambda, int r) {
  const std::size_t n = q.Q.dim();
  if (lambda.size() != n) throw std::invalid_argument("lambda must have one entry per variable");
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  if (std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l == 0; }))
    throw std::invalid_argument("lambda must not be all zero");

  std::vector<Rational> factorial(static_cast<std::size_t>(r) + 1, Rational(1));
  for (int i = 1; i <= r; ++i) factorial[i] = factorial[i - 1] * i;

  // (sum w_i x_i^2)^r = sum over compositions c of r: r!/prod c_i! * prod w_i^c_i x^{2c}.
  HomogeneousPoly multiplier(n, 2 * r);
  for (const ExponentTuple& c : exponents_of_degree(n, r)) {
    Rational coef = factorial[r];
    std::vector<int> doubled(n);
    for (std::size_t i = 0; i < n; ++i) {
      coef /= factorial[c[i]];
      const Rational w = lambda[i] * lambda[i];
      for (int e = 0; e < c[i]; ++e) coef *= w;
      doubled[i] = 2 * c[i];
    }
    multiplier.add_term(ExponentTuple(doubled), coef);
  }
  return multiplier * quadratic_poly(q);
}

ParityAggregates parity_aggregates(const HomogeneousPoly& p) {
  if (p.degree() % 2 != 0) throw std::invalid_argument("parity_aggregates needs even degree");
  ParityAggregates agg{Rational(0), SymMatrix<Rational>(p.num_vars()), Rational(0)};
  for (const auto& [e, c] : p.terms()) {
    const std::uint32_t mask = e.parity_mask();
    const int odd = std::popcount(mask);
    if (odd == 0) {
      agg.even += c;
    } else if (odd == 2) {
      const auto i = static_cast<std::size_t>(std::countr_zero(mask));
      const auto j = static_cast<std::size_t>(31 - std::countl_zero(mask));
      agg.pairs(i, j) += c;
    } else {
      agg.other += c;
    }
  }
  return agg;
}

SymMatrix<Rational> quadratic_gram(const HomogeneousPoly& p) {
  if (p.degree() != 2) throw std::invalid_argument("quadratic_gram needs a degree-2 polynomial");
  SymMatrix<Rational> q(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int m = 0; m < e[i]; ++m) hits.push_back(i);
    if (hits[0] == hits[1]) q(hits[0], hits[0]) = c;
    else q(hits[0], hits[1]) = c / 2;
  }
  return q;
}

SymMatrix<Rational> default_gram(const HomogeneousPoly& p, const MonomialBasis& basis) {
  if (p.num_vars() != basis.num_vars() || p.degree() != 2 * basis.degree())
    throw std::invalid_argument("default_gram: basis does not match polynomial");
  SymMatrix<Rational> g(basis.size());
  for (const auto& [m, coef] : p.terms()) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<int> rest(m.size());
      bool ok = true;
      for (std::size_t v = 0; v < m.size(); ++v) {
        rest[v] = m[v] - basis[i][v];
        if (rest[v] < 0) ok = false;
      }
      if (!ok) continue;
      const std::size_t j = basis.index_of(ExponentTuple(rest));
      if (j < basis.size() && j >= i) pairs.emplace_back(i, j);
    }
    if (pairs.empty()) throw std::invalid_argument("default_gram: monomial not representable over basis");
    const Rational share = coef / static_cast<long long>(pairs.size());
    for (const auto& [i, j] : pairs) g(i, j) = (i == j) ? share : Rational(share / 2);
  }
  return g;
}

SoksVerdict soks_test(const HomogeneousPoly& p, std::size_t k, const SymMatrix<Rational>& gram,
                      const MonomialBasis& basis, const SolverOptions& opts) {
  if (p.degree() % 2 != 0) throw std::invalid_argument("soks_test needs even degree");
  if (basis.num_vars() != p.num_vars() || 2 * basis.degree() != p.degree())
    throw GramMismatch("Gram basis does not match the polynomial");
  if (gram.dim() != basis.size()) throw GramMismatch("Gram size does not match the monomial basis");
  if (!(gram_to_poly(gram, basis) == p)) throw GramMismatch("Gram matrix does not reproduce the polynomial");
  SoksVerdict out{fw_membership(gram.cast<double>(), k, opts), p.degree() > 2};
  return out;
}

SoksVerdict soks_test(const HomogeneousPoly& p, std::size_t k, const SymMatrix<Rational>& gram,
                      const SolverOptions& opts) {
  if (p.degree() % 2 != 0) throw std::invalid_argument("soks_test needs even degree");
  return soks_test(p, k, gram, monomial_basis(p.num_vars(), p.degree() / 2), opts);
}

}  // namespace fwcone
