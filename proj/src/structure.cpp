#include "stablepgf/structure.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "stablepgf/errors.hpp"

namespace stablepgf {

namespace {

void require_square(const Eigen::MatrixXd& M) {
  if (M.rows() == 0 || M.rows() != M.cols()) {
    throw InputError("covariance matrix must be square and nonempty");
  }
}

void require_symmetric(const Eigen::MatrixXd& M, double tol) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < M.cols(); ++j) {
      if (std::abs(M(i, j) - M(j, i)) > tol * scale) {
        std::ostringstream os;
        os << "matrix is not symmetric: entry (" << i << "," << j << ") = "
           << M(i, j) << " but (" << j << "," << i << ") = " << M(j, i);
        throw InputError(os.str());
      }
    }
  }
}

}  // namespace

HypothesisCheck check_hypotheses(const Eigen::MatrixXd& M, double tol) {
  require_square(M);
  if (!(tol >= 0.0)) throw InputError("tolerance must be nonnegative");
  require_symmetric(M, std::max(tol, 1e-12));

  HypothesisCheck out;
  const auto d = M.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (M(i, i) < -tol) {
      std::ostringstream os;
      os << "diagonal entry (" << i << "," << i << ") is negative: " << M(i, i);
      out.violations.push_back(os.str());
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i != j && M(i, j) > tol) {
        std::ostringstream os;
        os << "off-diagonal entry (" << i << "," << j
           << ") is positive: " << M(i, j);
        out.violations.push_back(os.str());
      }
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    const double row = M.row(i).sum();
    if (row < -tol) {
      std::ostringstream os;
      os << "row " << i << " sums to " << row << " < 0";
      out.violations.push_back(os.str());
    }
  }
  out.pass = out.violations.empty();
  return out;
}

HypothesisCheck check_hypotheses_exact(
    const std::vector<std::vector<Rational>>& M) {
  const std::size_t d = M.size();
  if (d == 0) throw InputError("covariance matrix must be square and nonempty");
  for (const auto& row : M) {
    if (row.size() != d) {
      throw InputError("covariance matrix must be square and nonempty");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (M[i][j] != M[j][i]) {
        std::ostringstream os;
        os << "matrix is not symmetric: entry (" << i << "," << j << ") = "
           << rational_str(M[i][j]) << " but (" << j << "," << i
           << ") = " << rational_str(M[j][i]);
        throw InputError(os.str());
      }
    }
  }

  HypothesisCheck out;
  for (std::size_t i = 0; i < d; ++i) {
    if (M[i][i] < 0) {
      std::ostringstream os;
      os << "diagonal entry (" << i << "," << i
         << ") is negative: " << rational_str(M[i][i]);
      out.violations.push_back(os.str());
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i != j && M[i][j] > 0) {
        std::ostringstream os;
        os << "off-diagonal entry (" << i << "," << j
           << ") is positive: " << rational_str(M[i][j]);
        out.violations.push_back(os.str());
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < d; ++j) row += M[i][j];
    if (row < 0) {
      std::ostringstream os;
      os << "row " << i << " sums to " << rational_str(row) << " < 0";
      out.violations.push_back(os.str());
    }
  }
  out.pass = out.violations.empty();
  return out;
}

CovariancePartition partition(const Eigen::MatrixXd& M, double tol) {
  require_square(M);
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  const HypothesisCheck hc = check_hypotheses(M, tol);
  if (!hc.pass) {
    std::ostringstream os;
    os << "matrix fails the covariance hypotheses:";
    for (const auto& v : hc.violations) os << "\n  " << v;
    throw InputError(os.str());
  }

  const int d = static_cast<int>(M.rows());

  // Connected components of |M_ij| > tol via union-find.
  std::vector<int> parent(d);
  for (int i = 0; i < d; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (std::abs(M(i, j)) > tol) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<int>> components;
  {
    std::vector<int> slot(d, -1);
    for (int i = 0; i < d; ++i) {
      const int r = find(i);
      if (slot[r] < 0) {
        slot[r] = static_cast<int>(components.size());
        components.emplace_back();
      }
      components[slot[r]].push_back(i);
    }
  }
  std::sort(components.begin(), components.end());

  CovariancePartition out;
  for (const auto& comp : components) {
    const int c = static_cast<int>(comp.size());
    Eigen::MatrixXd R(c, c);
    for (int a = 0; a < c; ++a) {
      for (int b = 0; b < c; ++b) R(a, b) = M(comp[a], comp[b]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(c - 1);

    if (smin <= tol * smax) {
      // Singular component: nullity must be exactly 1 and the restriction
      // must annihilate the all-ones vector, else the input is structurally
      // inconsistent with a legal covariance limit.
      int nullity = 0;
      for (int a = 0; a < c; ++a) {
        if (sv(a) <= tol * smax) ++nullity;
      }
      if (nullity != 1) {
        std::ostringstream os;
        os << "structural error: singular component {";
        for (int a = 0; a < c; ++a) os << (a ? "," : "") << comp[a];
        os << "} has nullity " << nullity << ", expected 1";
        throw InputError(os.str());
      }
      const double resid = (R * Eigen::VectorXd::Ones(c)).cwiseAbs().maxCoeff();
      if (resid > tol * std::max(1.0, smax) * c) {
        std::ostringstream os;
        os << "structural error: singular component {";
        for (int a = 0; a < c; ++a) os << (a ? "," : "") << comp[a];
        os << "} does not annihilate the all-ones vector (residual " << resid
           << ")";
        throw InputError(os.str());
      }
      out.S_list.push_back(comp);
      std::vector<int> indicator(d, 0);
      for (int idx : comp) indicator[idx] = 1;
      out.null_basis.push_back(std::move(indicator));
    } else {
      if (smin <= 10.0 * tol * smax) {
        std::ostringstream os;
        os << "component {";
        for (int a = 0; a < c; ++a) os << (a ? "," : "") << comp[a];
        os << "} is near-singular: smallest singular value " << smin
           << " within 10x of the threshold " << tol * smax;
        out.warnings.push_back(os.str());
      }
      out.T.insert(out.T.end(), comp.begin(), comp.end());
    }
  }
  std::sort(out.T.begin(), out.T.end());
  return out;
}

std::vector<std::vector<int>> singular_directions(const Eigen::MatrixXd& A,
                                                  double tol) {
  const CovariancePartition part = partition(A, tol);
  const int d = static_cast<int>(A.rows());

  // Cross-check against the global nullity of A.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv(0);
  int nullity = 0;
  for (int i = 0; i < d; ++i) {
    if (sv(i) <= tol * std::max(smax, 1e-300)) ++nullity;
  }
  if (nullity != static_cast<int>(part.null_basis.size())) {
    std::ostringstream os;
    os << "structural error: global nullity " << nullity << " does not match "
       << part.null_basis.size() << " singular components";
    throw InputError(os.str());
  }

  for (const auto& indicator : part.null_basis) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v(i) = indicator[i];
    const double resid = (A * v).norm();
    if (resid > tol * std::max(1.0, smax) * d) {
      std::ostringstream os;
      os << "structural error: ||A * 1_G|| = " << resid
         << " exceeds tolerance for a null direction";
      throw InputError(os.str());
    }
  }
  return part.null_basis;
}

SingularProbe singular_clt_probe(const std::vector<JointPGF>& family,
                                 const std::vector<double>& scales,
                                 const std::vector<int>& G, double tol) {
  if (family.size() != scales.size()) {
    throw InputError("family and scales must have the same length");
  }
  if (family.empty()) throw InputError("family must be nonempty");
  if (G.empty()) throw InputError("index set G must be nonempty");
  const int dim = family.front().dim();
  std::vector<int> indicator(static_cast<std::size_t>(dim), 0);
  for (int idx : G) {
    if (idx < 0 || idx >= dim) {
      throw InputError("index set G refers to a coordinate out of range");
    }
    indicator[static_cast<std::size_t>(idx)] = 1;
  }

  SingularProbe out;
  std::vector<JointPGF> kept;
  std::vector<double> kept_scales;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].dim() != dim) {
      throw InputError("all family members must share one dimension");
    }
    const LatticeLaw law = LatticeLaw::from_pgf(project(family[i], indicator));
    const Rational var = law.var_exact();
    out.variances.push_back(to_double(var));
    if (var > 0) {
      kept.push_back(family[i]);
      kept_scales.push_back(scales[i]);
    }
  }
  if (kept.empty()) {
    throw InputError(
        "projection onto G is deterministic for every family member; the "
        "normalized sum has no Gaussian limit along this direction");
  }
  if (kept.size() < 3) {
    throw InputError(
        "fewer than three family members have positive variance along G; "
        "cannot fit a convergence rate");
  }
  out.study = rate_study(kept, kept_scales, indicator, tol);
  return out;
}

}  // namespace stablepgf
