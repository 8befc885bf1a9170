#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fwcone {

/// Exponent vector of a monomial x_1^{e_1} ... x_n^{e_n}.
struct ExponentTuple {
  std::vector<int> exps;

  ExponentTuple() = default;
  explicit ExponentTuple(std::vector<int> e) : exps(std::move(e)) {
    for (int v : exps)
      if (v < 0) throw std::invalid_argument("exponents must be nonnegative");
  }

  static ExponentTuple unit(std::size_t n, std::size_t i) {
    std::vector<int> e(n, 0);
    e.at(i) = 1;
    return ExponentTuple(std::move(e));
  }

  std::size_t size() const { return exps.size(); }
  int operator[](std::size_t i) const { return exps[i]; }

  int degree() const {
    int d = 0;
    for (int v : exps) d += v;
    return d;
  }

  /// Bit i set iff exponent i is odd (the parity pattern used throughout).
  std::uint32_t parity_mask() const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] % 2 != 0) mask |= (1u << i);
    return mask;
  }

  int odd_count() const {
    int c = 0;
    for (int v : exps) c += v % 2;
    return c;
  }

  friend ExponentTuple operator+(const ExponentTuple& a, const ExponentTuple& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
    ExponentTuple out;
    out.exps.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.exps[i] = a.exps[i] + b.exps[i];
    return out;
  }

  friend bool operator==(const ExponentTuple&, const ExponentTuple&) = default;
  friend auto operator<=>(const ExponentTuple&, const ExponentTuple&) = default;
};

/// All exponent tuples of length n and total degree d.
std::vector<ExponentTuple> exponents_of_degree(std::size_t n, int d);

}  // namespace fwcone
