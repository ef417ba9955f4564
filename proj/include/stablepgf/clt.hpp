#pragma once

#include <optional>

#include "stablepgf/pgf.hpp"

namespace stablepgf {

/// Finitely supported law on the nonnegative integers, with exact moments.
class LatticeLaw {
 public:
  /// pmf[k] = P(X = k); entries must be nonnegative rationals of total
  /// mass exactly 1. Trailing zeros are trimmed so N() is the top of the
  /// support.
  explicit LatticeLaw(std::vector<Rational> pmf);
  static LatticeLaw from_pgf(const Polynomial& p);

  const std::vector<Rational>& pmf() const { return pmf_; }
  int N() const { return static_cast<int>(pmf_.size()) - 1; }
  const Rational& mean_exact() const { return mean_; }
  const Rational& var_exact() const { return var_; }
  double mean() const { return to_double(mean_); }
  double sigma() const;
  Polynomial pgf() const;

 private:
  std::vector<Rational> pmf_;
  Rational mean_, var_;
};

/// F(x) = P(X <= m + x sigma), the CDF in normalized units.
/// Rejects degenerate laws (sigma = 0).
double normalized_cdf(const LatticeLaw& q, double x);

/// Standard normal CDF, accurate to 1e-12 absolute.
double gaussian_cdf(double x);

/// sup_x |F(x) - N(x)|, computed exactly over both one-sided limits at
/// every jump point x_k = (k - m)/sigma. Rejects sigma = 0.
double kolmogorov_distance(const LatticeLaw& q);

struct CLTReport {
  std::vector<int> direction;        ///< empty for a plain univariate report
  std::optional<double> v_limit;     ///< a'Aa/|a|^2 when A is supplied
  std::optional<double> observed_v;  ///< a'cov(f)a / s^2 when projecting
  bool degenerate = false;           ///< V_limit <= tol or sigma = 0
  std::optional<double> kolmogorov;  ///< absent when sigma = 0
  double delta = 0.0;                ///< observed min |root - 1| of the pgf
  double delta_bound = 0.0;          ///< sin(pi / max_j a_j); 0 when max = 1
  std::optional<double> bound_quantity;  ///< N^{1/3}/sigma when sigma > 0
  std::optional<double> ratio;           ///< kolmogorov * sigma / N^{1/3}
  int N = 0;
  double mean = 0.0;
  double sigma = 0.0;
};

/// Gaussian-approximation report for one lattice law. Rejects sigma = 0.
CLTReport report(const LatticeLaw& q, double tol = kDefaultTol);

/// All coprime positive integer tuples of length dim with components <= D,
/// in lexicographic order.
std::vector<std::vector<int>> coprime_directions(int dim, int max_component);

using RealMatrix = std::vector<std::vector<double>>;

/// One report per coprime direction a (components <= max_den): the law of
/// <a, X>. With a limit covariance A, attaches V_limit = a'Aa/|a|^2 and
/// flags directions with V_limit <= tol as degenerate (Chebyshev route).
/// `scale` normalizes the observed projected variance (observed_v).
std::vector<CLTReport> cramer_wold_battery(
    const JointPGF& f, const std::optional<RealMatrix>& A = std::nullopt,
    double scale = 1.0, int max_den = 6, double tol = kDefaultTol);

struct RateStudy {
  double fitted_exponent = 0.0;  ///< OLS slope of log(kolmogorov) vs log(s_n)
  std::vector<double> scales;
  std::vector<double> distances;
  std::vector<double> ratios;  ///< kolmogorov * sigma / N^{1/3} per member
  std::vector<double> sigmas;
};

/// Kolmogorov-distance decay along a family of pgfs projected onto a;
/// scales s_n play the role of the normalizing sequence. Rejects families
/// shorter than 3 and degenerate directions (any member with sigma = 0).
RateStudy rate_study(const std::vector<JointPGF>& family,
                     const std::vector<double>& scales,
                     const std::vector<int>& direction, double tol = kDefaultTol);

}  // namespace stablepgf
