#ifndef CRN_ESTIMATORS_H_
#define CRN_ESTIMATORS_H_

// Estimators of the value difference U(p1, M) - U(p2, M):
//
//   XI      p1 on M1, p2 on an independent M2.
//   XD      p1 and p2 on the same M1.
//   XDD(d)  p1 on M1, p2 on M3 = M2(1:d) . M1(d+1:H).
//
// Each can be drawn through the backward process (sample whole deterministic
// MDPs, evaluate exactly) or the forward process (seeded trajectories).

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crn/mdp.h"
#include "crn/seeding.h"

namespace crn {

class EstimatorKind {
 public:
  enum class Kind { kXI, kXD, kXDD };

  static EstimatorKind XI() { return EstimatorKind(Kind::kXI, 0); }
  static EstimatorKind XD() { return EstimatorKind(Kind::kXD, 0); }
  static EstimatorKind XDD(int depth);

  Kind kind() const { return kind_; }
  int depth() const { return depth_; }

  // XI -> Independent, XD -> Dependent, XDD(d) -> DepthDependent(d).
  SeedScheme ToScheme() const;
  std::string ToString() const;

  friend bool operator==(const EstimatorKind&, const EstimatorKind&) = default;

 private:
  EstimatorKind(Kind kind, int depth) : kind_(kind), depth_(depth) {}

  Kind kind_;
  int depth_;
};

struct EstimateSample {
  double value = 0.0;
  EstimatorKind kind = EstimatorKind::XI();
  std::uint64_t simulation_index = 0;
};

struct EstimatorStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased, n - 1 denominator
  double std_error = 0.0;
};

// Throws InsufficientData when fewer than two samples are given.
EstimatorStats CollectStats(std::span<const double> values);
EstimatorStats CollectStats(std::span<const EstimateSample> samples);

// The two deterministic MDPs behind backward draw `simulation_index`. Their
// generator seeds are DeriveSeed({run_salt, "backward", "M1" | "M2", 0, i}),
// so every estimator kind sees the same (M1, M2) for the same index.
struct BackwardPair {
  SuccessorTable m1;
  SuccessorTable m2;
};
BackwardPair SampleBackwardPair(const TabularMdp& mdp,
                                std::uint64_t simulation_index,
                                std::string_view run_salt);

// Estimator value from an already sampled pair.
double EstimateFromPair(const TabularMdp& mdp, const Policy& p1,
                        const Policy& p2, const EstimatorKind& kind,
                        const BackwardPair& pair);

// One backward-process draw. For XDD, warns (crn::log) when the policies do
// not agree after d steps.
EstimateSample DrawBackward(const TabularMdp& mdp, const Policy& p1,
                            const Policy& p2, const EstimatorKind& kind,
                            std::uint64_t simulation_index,
                            std::string_view run_salt);

// One forward-process draw: Evaluate(p1) - Evaluate(p2) under the scheme
// matching `kind`.
EstimateSample DrawForward(const TabularMdp& mdp, const Policy& p1,
                           const Policy& p2, const EstimatorKind& kind,
                           std::uint64_t simulation_index,
                           std::string_view run_salt);

enum class Process { kBackward, kForward };

// Draws for simulation indices 1..n. The agreement check (and its warning)
// runs once per batch.
std::vector<EstimateSample> DrawBatch(const TabularMdp& mdp, const Policy& p1,
                                      const Policy& p2,
                                      const EstimatorKind& kind, Process process,
                                      std::size_t n, std::string_view run_salt);

// The two-step MDP on which XD has larger variance than XI for suitable
// rewards. States: s1 = 0, s2 = 1, s3 = 2 (sink = 3); two actions; H = 2.
struct CounterexampleSetup {
  TabularMdp mdp;
  Policy pi1;  // action 0 everywhere
  Policy pi2;  // action 0 at t = 1, action 1 at t = 2
};
CounterexampleSetup CounterexampleMdp(double r0, double r1, double r2,
                                      double r3);

// cov(U(pi1, M1), U(pi2, M1)) on the counterexample: (r0 - r2)(r1 - r3) / 4.
double AnalyticCounterexampleCovariance(double r0, double r1, double r2,
                                        double r3);

// Exact first and second moments of the three estimators, obtained by
// enumerating every joint outcome of the transition entries the policies can
// read. Entries a policy never reads do not affect its utility, so the
// enumeration is exact. Intended for |S| <= 3, H <= 3; throws ConfigError
// when the joint support exceeds `max_outcomes`.
struct ExactEstimatorMoments {
  double mean_difference = 0.0;  // U(p1, M) - U(p2, M), shared by all three
  double var_xi = 0.0;
  double var_xd = 0.0;
  double var_xdd = 0.0;
  std::uint64_t outcomes_enumerated = 0;
};
ExactEstimatorMoments EnumerateEstimatorMoments(
    const TabularMdp& mdp, const Policy& p1, const Policy& p2, int depth,
    std::uint64_t max_outcomes = 50'000'000);

}  // namespace crn

#endif  // CRN_ESTIMATORS_H_
