#include "crn/distribution.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crn/errors.h"

namespace crn {

int InverseCdf(std::span<const double> distribution, double u) {
  double total = 0.0;
  for (double p : distribution) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidDistribution("distribution has a negative or non-finite entry");
    }
    total += p;
  }
  if (!(total > 0.0)) {
    throw InvalidDistribution("distribution has no positive mass");
  }
  const double target = u * total;
  double cumulative = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < distribution.size(); ++i) {
    if (distribution[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    cumulative += distribution[i];
    if (cumulative > target) return last_positive;
  }
  // Rounding left the cumulative sum a hair below the target.
  return last_positive;
}

int PoissonInverseCdf(double mean, double u, int cap) {
  if (cap <= 0 || mean <= 0.0) return 0;
  if (!std::isfinite(mean)) throw DomainError("Poisson mean must be finite");
  if (mean > 600.0) {
    // exp(-mean) underflows; fall back to a continuity-corrected normal
    // approximation driven by the same uniform.
    const double clipped = std::min(std::max(u, 1e-300), 1.0 - 1e-16);
    // Invert the normal CDF by bisection.
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double cdf = 0.5 * std::erfc(-mid / std::numbers::sqrt2);
      (cdf < clipped ? lo : hi) = mid;
    }
    const double k = std::floor(mean + std::sqrt(mean) * 0.5 * (lo + hi) + 0.5);
    if (k <= 0.0) return 0;
    return k >= cap ? cap : static_cast<int>(k);
  }
  double pmf = std::exp(-mean);
  double cdf = pmf;
  int k = 0;
  while (cdf <= u && k < cap) {
    ++k;
    pmf *= mean / k;
    cdf += pmf;
    if (pmf == 0.0 && k > mean) break;
  }
  return k >= cap ? cap : k;
}

double BoxMuller(double u1, double u2) {
  // 1 - u1 lies in (0, 1], so the logarithm is finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  return radius * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace crn
