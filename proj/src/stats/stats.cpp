#include "chemiq/stats.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace chemiq {

BinomialCi binomial_ci(int successes, int n) {
  if (n <= 0) throw std::invalid_argument("binomial_ci: n must be positive");
  if (successes < 0 || successes > n)
    throw std::invalid_argument("binomial_ci: successes out of range");
  BinomialCi ci;
  ci.rate = static_cast<double>(successes) / n;
  ci.half_width = 1.96 * std::sqrt(ci.rate * (1.0 - ci.rate) / n);
  return ci;
}

namespace {

// Upper tail of Binomial(n, 1/2). Small n uses exact integer binomials
// (C(62,31) still fits in 64 bits); beyond that, log-space terms.
double binomial_upper_tail(long b, long n) {
  if (b <= 0) return 1.0;
  if (b > n) return 0.0;
  if (n <= 62) {
    std::uint64_t coeff = 1;  // C(n, b) built incrementally
    for (long k = 0; k < b; ++k) coeff = coeff * (n - k) / (k + 1);
    long double sum = 0.0L;
    std::uint64_t c = coeff;
    for (long k = b; k <= n; ++k) {
      sum += static_cast<long double>(c);
      if (k < n) c = c * (n - k) / (k + 1);
    }
    return static_cast<double>(sum / std::pow(2.0L, static_cast<long double>(n)));
  }
  long double sum = 0.0L;
  for (long k = b; k <= n; ++k) {
    long double lg = std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) -
                     std::lgamma(n - k + 1.0L) - n * std::log(2.0L);
    sum += std::exp(lg);
  }
  return static_cast<double>(sum > 1.0L ? 1.0L : sum);
}

}  // namespace

double mcnemar_from_counts(long b, long c) {
  if (b < 0 || c < 0) throw std::invalid_argument("mcnemar: negative count");
  return binomial_upper_tail(b, b + c);
}

double mcnemar_one_tailed(const std::vector<std::pair<bool, bool>>& paired) {
  long b = 0, c = 0;
  for (const auto& [first_ok, second_ok] : paired) {
    if (second_ok && !first_ok) ++b;
    if (first_ok && !second_ok) ++c;
  }
  return mcnemar_from_counts(b, c);
}

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

double random_baseline(const std::string& category, int n_atoms) {
  if (category == "counting_carbon") return 1.0 / 25.0;
  if (category == "counting_ring") return 1.0 / 6.0;
  if (category == "shortest_path") return 1.0 / 18.0;
  if (category == "atom_mapping") {
    if (n_atoms <= 0) return 0.0;
    double p = 1.0;
    for (int k = 2; k <= n_atoms; ++k) p /= k;
    return p;
  }
  return 0.0;  // free-form answers: a random guess never lands
}

}  // namespace chemiq
