#include "fwcone/sym_matrix.hpp"

namespace fwcone {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::vector<Support> enumerate_supports(std::size_t n, std::size_t k) {
  if (k < 1 || k > n)
    throw std::invalid_argument("enumerate_supports: need 1 <= k <= n (got n=" +
                                std::to_string(n) + ", k=" + std::to_string(k) + ")");
  std::vector<Support> out;
  out.reserve(binomial(n, k));
  std::vector<std::size_t> idx(k);
  for (std::size_t a = 0; a < k; ++a) idx[a] = a;
  while (true) {
    out.emplace_back(idx);
    std::size_t a = k;
    while (a > 0 && idx[a - 1] == n - k + (a - 1)) --a;
    if (a == 0) break;
    ++idx[a - 1];
    for (std::size_t b = a; b < k; ++b) idx[b] = idx[b - 1] + 1;
  }
  return out;
}

}  // namespace fwcone
