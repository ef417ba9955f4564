#pragma once

#include <map>
#include <utility>
#include <vector>

#include "stablepgf/poly.hpp"

namespace stablepgf {

/// Probability generating function of a finitely supported law on
/// Z_{>=0}^d. Terms map exponent tuples to strictly positive rational
/// probabilities whose total mass is exactly one; both properties are
/// enforced at construction.
class JointPGF {
 public:
  using Exponent = std::vector<int>;
  using Terms = std::map<Exponent, Rational>;

  JointPGF(int dim, Terms terms);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  /// Per-coordinate degree bound M_j (max exponent in the support).
  const std::vector<int>& degree_bounds() const { return degree_bounds_; }
  Rational mass() const;

  bool operator==(const JointPGF& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }

 private:
  int dim_ = 0;
  Terms terms_;
  std::vector<int> degree_bounds_;
};

/// Build a pgf from (exponent, probability) entries; duplicate exponents
/// are merged. Rejects nonpositive probabilities and mass != 1 (the error
/// message states the deficit).
JointPGF make_pgf(int dim,
                  const std::vector<std::pair<std::vector<int>, Rational>>& entries);

/// One-dimensional projection f(z^{a_1}, ..., z^{a_d}). Entries of a must
/// be nonnegative with at least one positive; zero entries marginalize the
/// corresponding coordinate.
Polynomial project(const JointPGF& f, const std::vector<int>& a);

/// Group coordinates and sum them: grouping[j] in {0, ..., new_dim-1} gives
/// the group of coordinate j and must be surjective.
JointPGF aggregate(const JointPGF& f, const std::vector<int>& grouping,
                   int new_dim);

/// Polarization: replace z_j^m by e_m(w_{j,1..n_j}) / C(n_j, m), producing a
/// multiaffine pgf in sum(n_j) binary coordinates. Requires n_j >= M_j and
/// sum(n_j) <= 24.
JointPGF polarize(const JointPGF& f, const std::vector<int>& n);

/// Independent thinning: z_j := 1 - a_j + a_j z_j with a_j in [0, 1],
/// expanded exactly.
JointPGF smear(const JointPGF& f, const std::vector<Rational>& a);

/// Keep the listed coordinates (0-based, strictly increasing) and
/// marginalize the rest.
JointPGF marginal(const JointPGF& f, const std::vector<int>& keep);

/// pgf of the sum of independent vectors with laws f and g (same dim).
JointPGF pgf_product(const JointPGF& f, const JointPGF& g);

struct MomentSummary {
  std::vector<Rational> mean;
  std::vector<std::vector<Rational>> cov;

  std::vector<double> mean_d() const;
  std::vector<std::vector<double>> cov_d() const;
};

/// Exact mean vector and covariance matrix.
MomentSummary mean_cov(const JointPGF& f);

}  // namespace stablepgf
