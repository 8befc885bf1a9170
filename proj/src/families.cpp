#include "fwcone/families.hpp"

#include <stdexcept>
#include <string>

namespace fwcone {

namespace {

SymMatrix<Rational> rational_matrix(const std::vector<std::vector<const char*>>& rows) {
  std::vector<std::vector<Rational>> parsed;
  parsed.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Rational> r;
    r.reserve(row.size());
    for (const char* v : row) r.push_back(parse_rational(v));
    parsed.push_back(std::move(r));
  }
  return SymMatrix<Rational>::from_rows(parsed);
}

// sum_{i <= j} (i + 1)(j + 2) X_ij
Rational checksum(const SymMatrix<Rational>& x) {
  Rational s(0);
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = i; j < x.dim(); ++j)
      s += x(i, j) * static_cast<long long>((i + 1) * (j + 2));
  return s;
}

const std::vector<std::vector<const char*>> kM = {
    {"49", "-21", "37", "-37", "-21"},
    {"-21", "17", "-21", "21", "29"},
    {"37", "-21", "41", "-25", "-33"},
    {"-37", "21", "-25", "41", "33"},
    {"-21", "29", "-33", "33", "73"},
};

const std::vector<std::vector<const char*>> kA = {
    {"3", "1", "-2", "2", "-1"},
    {"1", "3", "0", "0", "-1"},
    {"-2", "0", "2", "-1", "1"},
    {"2", "0", "-1", "2", "-1"},
    {"-1", "-1", "1", "-1", "1"},
};

// Entry (7, 14) (1-based) is -12 on both sides; see README "Fixture notes".
const std::vector<std::vector<const char*>> kQprime = {
    {"49", "-21", "0", "37", "0", "0", "-37", "0", "-5", "0", "-21", "0", "0", "0", "0"},
    {"-21", "66", "-21", "-21", "37", "-11/5", "21", "-37", "0", "-17/5", "29", "-21", "0", "0", "0"},
    {"0", "-21", "17", "0", "-21", "0", "0", "21", "0", "0", "0", "29", "0", "0", "0"},
    {"37", "-21", "0", "90", "-94/5", "37", "-20", "0", "-37", "0", "-33", "0", "-14", "0", "0"},
    {"0", "37", "-21", "-94/5", "58", "-21", "0", "-25", "21", "0", "0", "-33", "29", "0", "-4"},
    {"0", "-11/5", "0", "37", "-21", "41", "0", "0", "-25", "0", "-7", "0", "-33", "0", "0"},
    {"-37", "21", "0", "-20", "0", "0", "90", "-88/5", "37", "-37", "33", "0", "0", "-12", "0"},
    {"0", "-37", "21", "0", "-25", "0", "-88/5", "58", "-21", "21", "0", "33", "0", "29", "17/5"},
    {"-5", "0", "0", "-37", "21", "-25", "37", "-21", "82", "-25", "0", "0", "33", "-33", "-23/5"},
    {"0", "-17/5", "0", "0", "0", "0", "-37", "21", "-25", "41", "-9", "0", "0", "33", "0"},
    {"-21", "29", "0", "-33", "0", "-7", "33", "0", "0", "-9", "122", "-21", "37", "-37", "-21"},
    {"0", "-21", "29", "0", "-33", "0", "0", "33", "0", "0", "-21", "90", "-17", "88/5", "29"},
    {"0", "0", "0", "-14", "29", "-33", "0", "0", "33", "0", "37", "-17", "114", "-102/5", "-33"},
    {"0", "0", "0", "0", "0", "0", "-12", "29", "-33", "33", "-37", "88/5", "-102/5", "114", "33"},
    {"0", "0", "0", "0", "-4", "0", "0", "17/5", "-23/5", "0", "-21", "29", "-33", "33", "73"},
};

// 1-based, as listed with the example.
const std::vector<std::vector<std::size_t>> kSupports27 = {
    {1, 2, 4, 7},     {1, 2, 4, 11},    {1, 2, 7, 11},    {1, 4, 7, 9},     {2, 3, 5, 8},
    {2, 3, 5, 12},    {2, 3, 8, 12},    {2, 4, 5, 6},     {2, 5, 8, 12},    {2, 7, 8, 10},
    {3, 5, 8, 12},    {4, 5, 6, 9},     {4, 5, 6, 13},    {4, 5, 9, 13},    {4, 6, 11, 13},
    {5, 6, 9, 13},    {5, 12, 13, 15},  {7, 8, 9, 10},    {7, 8, 9, 14},    {7, 10, 11, 14},
    {8, 9, 10, 14},   {8, 12, 14, 15},  {9, 13, 14, 15},  {11, 12, 13, 14}, {11, 12, 13, 15},
    {11, 12, 14, 15}, {11, 13, 14, 15},
};

MonomialBasis graded_quadratic_basis(std::size_t n) {
  std::vector<ExponentTuple> tuples;
  for (std::size_t hi = 0; hi < n; ++hi) {
    for (std::size_t lo = 0; lo <= hi; ++lo) {
      std::vector<int> e(n, 0);
      ++e[lo];
      ++e[hi];
      tuples.emplace_back(e);
    }
  }
  return MonomialBasis::from_tuples(std::move(tuples));
}

}  // namespace

QuadraticForm pna_form(const PnaSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("p_n^a needs n >= 1");
  return QuadraticForm{SymMatrix<Rational>::uniform(spec.n, spec.a, Rational(1))};
}

Rational pna_threshold(std::size_t n, std::size_t k) {
  if (n < 2) throw std::invalid_argument("pna_threshold needs n >= 2");
  if (k < 2 || k > n) throw std::invalid_argument("pna_threshold needs 2 <= k <= n");
  return Rational(static_cast<long long>(n - 1), static_cast<long long>(k - 1));
}

ExactBlockDecomposition pna_witness_decomposition(std::size_t n, std::size_t k, const Rational& a) {
  const Rational threshold = pna_threshold(n, k);
  if (a < threshold)
    throw std::domain_error("a = " + to_string(a) + " is below the threshold " + to_string(threshold));
  const Rational inv_count(1, static_cast<long long>(binomial(n - 2, k - 2)));
  const Rational diag = inv_count * Rational(static_cast<long long>(k - 1)) * a /
                        Rational(static_cast<long long>(n - 1));
  const Rational off = inv_count;
  // Every l x l principal minor of the block is (b - c + l c)(b - c)^(l - 1).
  for (std::size_t l = 1; l <= k; ++l) {
    if (rank_one_perturb_det(diag, off, l) < 0)
      throw std::logic_error("uniform witness block has a negative principal minor");
  }
  const SymMatrix<Rational> block = SymMatrix<Rational>::uniform(k, diag, off);
  std::vector<Block<Rational>> blocks;
  for (const Support& s : enumerate_supports(n, k)) blocks.push_back({s, block});
  return ExactBlockDecomposition(n, k, std::move(blocks), pna_form({n, a}).Q);
}

SobsVerdict sobs_comparison(const SymMatrix<double>& q, double tol) {
  const PsdReport report = is_psd(comparison_matrix(q), tol);
  return SobsVerdict{report.is_psd, report};
}

SobsVerdict sobs_comparison(const SymMatrix<Rational>& q) {
  const PsdReport report = is_psd(comparison_matrix(q), 0.0);
  return SobsVerdict{report.is_psd, report};
}

Fixtures example_m_fixtures() {
  std::vector<Support> supports;
  supports.reserve(kSupports27.size());
  for (const auto& one_based : kSupports27) {
    std::vector<std::size_t> zero_based;
    for (std::size_t i : one_based) zero_based.push_back(i - 1);
    supports.emplace_back(std::move(zero_based));
  }
  Fixtures f{rational_matrix(kM), rational_matrix(kA), rational_matrix(kQprime), graded_quadratic_basis(5),
             std::move(supports)};

  if (checksum(f.M) != Rational(3689) || checksum(f.A) != Rational(84) ||
      checksum(f.Qprime) != Rational(567686, 5))
    throw std::logic_error("embedded fixture checksum mismatch");
  if (f.supports27.size() != 27) throw std::logic_error("expected 27 supports");
  for (const auto& s : f.supports27) s.check_within(f.Qprime.dim());
  if (frobenius_inner(f.A, f.M) != Rational(-1)) throw std::logic_error("<A, M> != -1");
  return f;
}

}  // namespace fwcone
