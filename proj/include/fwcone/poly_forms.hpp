#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fwcone/exponent.hpp"
#include "fwcone/factor_width.hpp"
#include "fwcone/rational.hpp"
#include "fwcone/sym_matrix.hpp"

namespace fwcone {

/// The degree-d monomials in n variables, with a position for each.
class MonomialBasis {
 public:
  /// Descending lexicographic order on exponent vectors.
  static MonomialBasis standard(std::size_t n, int d);

  /// Caller-chosen order over the full set of degree-d monomials.
  static MonomialBasis from_tuples(std::vector<ExponentTuple> tuples);

  std::size_t num_vars() const { return n_; }
  int degree() const { return d_; }
  std::size_t size() const { return tuples_.size(); }
  const ExponentTuple& operator[](std::size_t i) const { return tuples_[i]; }
  const std::vector<ExponentTuple>& tuples() const { return tuples_; }

  /// Position of a tuple, or size() when absent.
  std::size_t index_of(const ExponentTuple& t) const;

 private:
  MonomialBasis(std::size_t n, int d, std::vector<ExponentTuple> tuples);

  std::size_t n_;
  int d_;
  std::vector<ExponentTuple> tuples_;
  std::map<ExponentTuple, std::size_t> index_;
};

inline MonomialBasis monomial_basis(std::size_t n, int d) { return MonomialBasis::standard(n, d); }

/// Homogeneous polynomial with exact coefficients; zero terms are never stored.
class HomogeneousPoly {
 public:
  HomogeneousPoly(std::size_t n, int degree);

  std::size_t num_vars() const { return n_; }
  int degree() const { return degree_; }
  const std::map<ExponentTuple, Rational>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  Rational coefficient(const ExponentTuple& e) const;
  void add_term(const ExponentTuple& e, const Rational& c);

  friend HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b);
  friend bool operator==(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_;
  int degree_;
  std::map<ExponentTuple, Rational> terms_;
};

/// q(x) = x^T Q x.
struct QuadraticForm {
  SymMatrix<Rational> Q;
};

/// Coefficient of m is the sum of Q_ij over index pairs whose tuples add to m.
HomogeneousPoly gram_to_poly(const SymMatrix<Rational>& gram, const MonomialBasis& basis);

/// (sum_i lambda_i^2 x_i^2)^r * x^T Q x, expanded with multinomial coefficients.
HomogeneousPoly multiply_weighted_power(const QuadraticForm& q, const std::vector<Rational>& lambda,
                                        int r);

HomogeneousPoly quadratic_poly(const QuadraticForm& q);

/// Sums of coefficients grouped by parity pattern: `even` for all-even
/// monomials, `pair(i, j)` for monomials odd exactly at i and j.
struct ParityAggregates {
  Rational even{0};
  SymMatrix<Rational> pairs;  // off-diagonal entries used; diagonal stays 0
  /// Sum of coefficients on any other parity pattern (zero for multiplier products).
  Rational other{0};

  const Rational& pair(std::size_t i, std::size_t j) const { return pairs(i, j); }
};

ParityAggregates parity_aggregates(const HomogeneousPoly& p);

/// Unique Gram matrix of a quadratic form.
SymMatrix<Rational> quadratic_gram(const HomogeneousPoly& p);

/// Canonical Gram matrix: each coefficient is split equally over the
/// unordered index pairs {i, j} whose tuples add to the monomial.
SymMatrix<Rational> default_gram(const HomogeneousPoly& p, const MonomialBasis& basis);

/// Raised when a Gram matrix does not reproduce its polynomial exactly.
class GramMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SoksVerdict {
  MembershipVerdict verdict;
  /// True when the verdict concerns the given Gram only (degree > 2).
  bool gram_conditional = false;
};

/// Decides whether `gram` (a Gram matrix of p) has factor width <= k.
/// Throws GramMismatch if gram does not represent p exactly.
SoksVerdict soks_test(const HomogeneousPoly& p, std::size_t k, const SymMatrix<Rational>& gram,
                      const SolverOptions& opts = {});

/// Same, with an explicit monomial basis for the Gram indexing.
SoksVerdict soks_test(const HomogeneousPoly& p, std::size_t k, const SymMatrix<Rational>& gram,
                      const MonomialBasis& basis, const SolverOptions& opts = {});

}  // namespace fwcone
