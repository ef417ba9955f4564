#include "stablepgf/clt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stablepgf {

LatticeLaw::LatticeLaw(std::vector<Rational> pmf) : pmf_(std::move(pmf)) {
  while (!pmf_.empty() && pmf_.back() == 0) pmf_.pop_back();
  if (pmf_.empty()) throw InputError("lattice law must have positive mass");
  Rational total(0);
  for (const auto& p : pmf_) {
    if (p < 0)
      throw InputError("lattice law has negative probability " + rational_str(p));
    total += p;
  }
  if (total != 1)
    throw InputError("lattice law mass is " + rational_str(total) +
                     ", deficit " + rational_str(Rational(1) - total));
  mean_ = 0;
  Rational second(0);
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    mean_ += pmf_[k] * static_cast<long>(k);
    second += pmf_[k] * static_cast<long>(k) * static_cast<long>(k);
  }
  var_ = second - mean_ * mean_;
}

LatticeLaw LatticeLaw::from_pgf(const Polynomial& p) {
  return LatticeLaw(p.coeffs());
}

double LatticeLaw::sigma() const { return std::sqrt(to_double(var_)); }

Polynomial LatticeLaw::pgf() const { return Polynomial(pmf_); }

double normalized_cdf(const LatticeLaw& q, double x) {
  if (q.var_exact() == 0)
    throw InputError("normalized_cdf rejects degenerate laws (sigma = 0)");
  const double threshold = q.mean() + x * q.sigma();
  if (threshold < 0) return 0.0;
  Rational acc(0);
  for (std::size_t k = 0; k < q.pmf().size(); ++k) {
    if (static_cast<double>(k) > threshold) break;
    acc += q.pmf()[k];
  }
  return to_double(acc);
}

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double kolmogorov_distance(const LatticeLaw& q) {
  if (q.var_exact() == 0)
    throw InputError("kolmogorov_distance rejects degenerate laws (sigma = 0)");
  const double m = q.mean(), s = q.sigma();
  Rational cum(0);
  double sup = 0.0;
  for (int k = 0; k <= q.N(); ++k) {
    const double xk = (k - m) / s;
    const double phi = gaussian_cdf(xk);
    sup = std::max(sup, std::fabs(to_double(cum) - phi));  // left limit at x_k
    cum += q.pmf()[k];
    sup = std::max(sup, std::fabs(to_double(cum) - phi));  // value at x_k
  }
  return sup;
}

CLTReport report(const LatticeLaw& q, double tol) {
  if (q.var_exact() == 0)
    throw InputError("report rejects degenerate laws (sigma = 0)");
  CLTReport r;
  r.N = q.N();
  r.mean = q.mean();
  r.sigma = q.sigma();
  r.kolmogorov = kolmogorov_distance(q);
  r.delta = min_distance_to_one(q.pgf(), tol);
  const double n13 = std::cbrt(static_cast<double>(q.N()));
  r.bound_quantity = n13 / r.sigma;
  r.ratio = *r.kolmogorov * r.sigma / n13;
  return r;
}

namespace {

long gcd_long(long a, long b) { return std::gcd(a, b); }

void enumerate_tuples(int dim, int max_component, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == dim) {
    long g = 0;
    for (int v : cur) g = gcd_long(g, v);
    if (g == 1) out.push_back(cur);
    return;
  }
  for (int v = 1; v <= max_component; ++v) {
    cur.push_back(v);
    enumerate_tuples(dim, max_component, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> coprime_directions(int dim, int max_component) {
  if (dim < 1 || max_component < 1)
    throw InputError("coprime direction enumeration needs dim >= 1, D >= 1");
  double count = 1;
  for (int j = 0; j < dim; ++j) count *= max_component;
  if (count > 1e6)
    throw InputError("direction battery would enumerate > 1e6 tuples; "
                     "reduce the denominator cap or the dimension");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  enumerate_tuples(dim, max_component, cur, out);
  return out;
}

std::vector<CLTReport> cramer_wold_battery(const JointPGF& f,
                                           const std::optional<RealMatrix>& A,
                                           double scale, int max_den,
                                           double tol) {
  if (f.dim() < 2)
    throw InputError("cramer_wold_battery requires dimension >= 2");
  if (!(scale > 0)) throw InputError("battery scale must be positive");
  if (A) {
    if (static_cast<int>(A->size()) != f.dim())
      throw InputError("limit covariance must be " + std::to_string(f.dim()) +
                       "x" + std::to_string(f.dim()));
    for (const auto& row : *A)
      if (static_cast<int>(row.size()) != f.dim())
        throw InputError("limit covariance must be square");
  }
  const MomentSummary ms = mean_cov(f);
  std::vector<CLTReport> out;
  for (const auto& a : coprime_directions(f.dim(), max_den)) {
    CLTReport r;
    r.direction = a;
    const LatticeLaw law = LatticeLaw::from_pgf(project(f, a));
    r.N = law.N();
    r.mean = law.mean();
    r.sigma = law.sigma();

    Rational va(0);
    for (int i = 0; i < f.dim(); ++i)
      for (int j = 0; j < f.dim(); ++j)
        va += ms.cov[i][j] * static_cast<long>(a[i]) * static_cast<long>(a[j]);
    r.observed_v = to_double(va) / (scale * scale);

    if (A) {
      double num = 0.0, den = 0.0;
      for (int i = 0; i < f.dim(); ++i) {
        den += static_cast<double>(a[i]) * a[i];
        for (int j = 0; j < f.dim(); ++j)
          num += (*A)[i][j] * a[i] * a[j];
      }
      r.v_limit = num / den;
    }
    r.degenerate = (r.v_limit && *r.v_limit <= tol) || law.var_exact() == 0;

    const int max_a = *std::max_element(a.begin(), a.end());
    r.delta_bound = (max_a == 1) ? 0.0 : std::sin(M_PI / max_a);
    if (law.var_exact() != 0) {
      r.kolmogorov = kolmogorov_distance(law);
      r.delta = min_distance_to_one(law.pgf(), tol);
      const double n13 = std::cbrt(static_cast<double>(law.N()));
      r.bound_quantity = n13 / r.sigma;
      r.ratio = *r.kolmogorov * r.sigma / n13;
    } else if (law.N() >= 1) {
      r.delta = min_distance_to_one(law.pgf(), tol);
    }
    out.push_back(std::move(r));
  }
  return out;
}

RateStudy rate_study(const std::vector<JointPGF>& family,
                     const std::vector<double>& scales,
                     const std::vector<int>& direction, double tol) {
  if (family.size() < 3)
    throw InputError("rate_study needs a family of at least 3 pgfs");
  if (scales.size() != family.size())
    throw InputError("rate_study needs one scale per family member");
  RateStudy rs;
  rs.scales = scales;
  int degenerate_members = 0;
  for (const auto& f : family) {
    const LatticeLaw law = LatticeLaw::from_pgf(project(f, direction));
    if (law.var_exact() == 0) {
      ++degenerate_members;
      continue;
    }
    rs.distances.push_back(kolmogorov_distance(law));
    rs.sigmas.push_back(law.sigma());
    const double n13 = std::cbrt(static_cast<double>(law.N()));
    rs.ratios.push_back(rs.distances.back() * law.sigma() / n13);
  }
  if (degenerate_members > 0)
    throw InputError(
        "rate_study: direction is degenerate for " +
        std::to_string(degenerate_members) +
        " family member(s) (sigma = 0); see cramer_wold_battery degenerate "
        "flags for this direction");

  // OLS slope of log(distance) against log(scale).
  std::vector<double> lx(scales.size()), ly(scales.size());
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0)) throw InputError("rate_study scales must be positive");
    lx[i] = std::log(scales[i]);
    ly[i] = std::log(rs.distances[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  rs.fitted_exponent = (sxx > 0) ? sxy / sxx : 0.0;
  (void)tol;
  return rs;
}

}  // namespace stablepgf
