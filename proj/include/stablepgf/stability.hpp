#pragma once

#include <cstdint>
#include <optional>

#include "stablepgf/pgf.hpp"

namespace stablepgf {

enum class StabilityStatus { stable_exact, stable_probabilistic, unstable };

struct StabilityWitness {
  std::vector<Rational> base;       ///< a: real base point of the line
  std::vector<Rational> direction;  ///< b > 0 componentwise
  std::complex<double> nonreal_root;
};

struct StabilityVerdict {
  StabilityStatus status = StabilityStatus::unstable;
  std::optional<StabilityWitness> witness;
  int trials = 0;
};

/// Bernoulli factorization of a stable univariate pgf: success
/// probabilities p_j with prod_j (1 - p_j + p_j z) equal to the pgf.
struct BernoulliDecomposition {
  std::vector<double> p;
};

struct UnivariateStableOutcome {
  std::optional<BernoulliDecomposition> decomposition;
  std::optional<NRRefutation> refutation;
  bool ok() const { return decomposition.has_value(); }
};

/// Exact univariate stability test (Sturm-backed). A valid pgf is stable
/// iff it is real-rooted; all roots are then <= 0 and each root -a_j yields
/// p_j = 1/(1 + a_j), with roots at 0 giving p_j = 1.
UnivariateStableOutcome univariate_stable(const Polynomial& pgf,
                                          double tol = kDefaultTol);

/// Exact restriction t -> f(a_1 + b_1 t, ..., a_d + b_d t) over Q.
Polynomial line_restriction(const JointPGF& f, const std::vector<Rational>& base,
                            const std::vector<Rational>& direction);

/// Randomized stability test: d = 1 delegates to the exact univariate test;
/// d >= 2 samples n_dirs lines with base in [-2,2]^d and direction in
/// (0,1]^d, and refutes on any restriction with a nonreal root (confirmed
/// by an exact Sturm count before reporting). Deterministic given seed.
StabilityVerdict test_stability(const JointPGF& f, int n_dirs = 200,
                                std::uint64_t seed = 0, double tol = kDefaultTol);

struct DiskCheck {
  double delta_bound = 0.0;   ///< sin(pi / max_j a_j); exactly 0 when max = 1
  double observed_gap = 0.0;  ///< min |root - 1| of the projection
  bool pass = false;          ///< observed_gap >= delta_bound - tol
};

/// Zero-free-disk bound for the projection f(z^{a_1}, ..., z^{a_d}) of a
/// stable pgf: its roots stay at distance >= sin(pi / max_j a_j) from 1.
DiskCheck zero_free_disk_check(const JointPGF& f, const std::vector<int>& a,
                               double tol = kDefaultTol);

}  // namespace stablepgf
