#pragma once

#include <Eigen/Dense>
#include <string>

#include "stablepgf/clt.hpp"
#include "stablepgf/pgf.hpp"

namespace stablepgf {

struct HypothesisCheck {
  bool pass = false;
  std::vector<std::string> violations;
};

/// Covariance hypotheses of the legal class: diagonal >= -tol, off-diagonal
/// <= tol, row sums >= -tol. Asymmetric input (beyond tol, relative to the
/// largest entry) is rejected. All violations are listed.
HypothesisCheck check_hypotheses(const Eigen::MatrixXd& M, double tol = 1e-9);

/// Exact-rational route for pgf covariances: diagonal >= 0, off-diagonal
/// <= 0, row sums >= 0, with no tolerance.
HypothesisCheck check_hypotheses_exact(
    const std::vector<std::vector<Rational>>& M);

/// Partition of the index set (0-based) into a nonsingular part T and
/// components S_alpha whose restrictions annihilate the all-ones vector.
struct CovariancePartition {
  std::vector<int> T;
  std::vector<std::vector<int>> S_list;
  std::vector<std::vector<int>> null_basis;  ///< 0/1 indicators, one per S_alpha
  std::vector<std::string> warnings;         ///< near-singular notices
};

/// Connected components of the graph {i ~ j iff |M_ij| > tol}, classified
/// by the smallest singular value of the restriction (singular when
/// <= tol * largest singular value). Singular components must have nullity
/// exactly 1 with all-ones null vector; anything else is a structural error.
CovariancePartition partition(const Eigen::MatrixXd& M, double tol = 1e-9);

/// Indicators 1_G spanning the null space of a legal limit covariance;
/// verified against the global nullity of A.
std::vector<std::vector<int>> singular_directions(const Eigen::MatrixXd& A,
                                                  double tol = 1e-9);

struct SingularProbe {
  RateStudy study;
  std::vector<double> variances;  ///< Var(Z_G) for every family member
};

/// Project each family member onto the indicator of G (0-based index set)
/// and delegate to rate_study; members with Var(Z_G) = 0 are dropped (at
/// least three positive-variance members are required, and the full
/// variance trace is reported so sigma_G -> infinity can be confirmed).
SingularProbe singular_clt_probe(const std::vector<JointPGF>& family,
                                 const std::vector<double>& scales,
                                 const std::vector<int>& G,
                                 double tol = kDefaultTol);

}  // namespace stablepgf
