#ifndef CRN_DISTRIBUTION_H_
#define CRN_DISTRIBUTION_H_

#include <span>

namespace crn {

// Inverse-CDF sampling: the smallest index i with p_0 + ... + p_i > u * total,
// restricted to entries with positive mass. `u` must lie in [0, 1). Throws
// InvalidDistribution if any entry is negative or non-finite, or if the total
// mass is not positive.
int InverseCdf(std::span<const double> distribution, double u);

// Poisson(mean) by inverse CDF from a single uniform `u` in [0, 1), capped at
// `cap`. Deterministic in (mean, u, cap).
int PoissonInverseCdf(double mean, double u, int cap);

// Standard normal deviate from two uniforms by the Box-Muller cosine branch.
double BoxMuller(double u1, double u2);

}  // namespace crn

#endif  // CRN_DISTRIBUTION_H_
