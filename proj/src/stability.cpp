#include "stablepgf/stability.hpp"

#include <algorithm>
#include <cmath>

namespace stablepgf {

UnivariateStableOutcome univariate_stable(const Polynomial& pgf, double tol) {
  if (pgf.is_zero()) throw InputError("univariate pgf must not be zero");
  for (const auto& c : pgf.coeffs())
    if (c < 0)
      throw InputError("univariate pgf has a negative coefficient " +
                       rational_str(c));
  if (pgf(Rational(1)) != 1)
    throw InputError("univariate pgf has mass " +
                     rational_str(pgf(Rational(1))) + ", expected 1");

  UnivariateStableOutcome out;
  if (pgf.degree() == 0) {
    out.decomposition = BernoulliDecomposition{};
    return out;
  }
  // Positive real roots are impossible (nonnegative coefficients, mass 1),
  // so stability is exactly real-rootedness.
  if (!real_rooted_exact(pgf)) {
    const RootSet rs = roots(pgf, tol);
    const RootSet::Entry* worst = nullptr;
    for (const auto& e : rs.roots)
      if (!worst || std::fabs(e.value.imag()) > std::fabs(worst->value.imag()))
        worst = &e;
    out.refutation = NRRefutation{"nonreal root", worst->value};
    return out;
  }
  const RootSet rs = roots(pgf, tol);
  BernoulliDecomposition dec;
  for (const auto& e : rs.roots) {
    const double r = e.value.real();
    const double p = 1.0 / (1.0 - r);
    for (int t = 0; t < e.multiplicity; ++t) dec.p.push_back(p);
  }
  std::sort(dec.p.begin(), dec.p.end(), std::greater<double>());
  out.decomposition = std::move(dec);
  return out;
}

Polynomial line_restriction(const JointPGF& f, const std::vector<Rational>& base,
                            const std::vector<Rational>& direction) {
  if (static_cast<int>(base.size()) != f.dim() ||
      static_cast<int>(direction.size()) != f.dim())
    throw InputError("line restriction requires base and direction of length " +
                     std::to_string(f.dim()));
  // Cache powers (a_j + b_j t)^e per coordinate.
  std::vector<std::vector<Polynomial>> pow(f.dim());
  for (int j = 0; j < f.dim(); ++j) {
    pow[j].push_back(Polynomial::constant(Rational(1)));
    const Polynomial affine({base[j], direction[j]});
    for (int e = 1; e <= f.degree_bounds()[j]; ++e)
      pow[j].push_back(pow[j].back() * affine);
  }
  Polynomial out;
  for (const auto& [e, p] : f.terms()) {
    Polynomial term = Polynomial::constant(p);
    for (int j = 0; j < f.dim(); ++j)
      if (e[j] > 0) term = term * pow[j][e[j]];
    out = out + term;
  }
  return out;
}

namespace {

/// Double-precision restriction coefficients (for the fast screening path).
std::vector<double> restrict_double(const JointPGF& f, const std::vector<double>& a,
                                    const std::vector<double>& b) {
  long max_deg = 0;
  for (int j = 0; j < f.dim(); ++j) max_deg += f.degree_bounds()[j];
  std::vector<double> c(max_deg + 1, 0.0), term, next;
  for (const auto& [e, p] : f.terms()) {
    term.assign(1, to_double(p));
    for (int j = 0; j < f.dim(); ++j) {
      for (int t = 0; t < e[j]; ++t) {
        next.assign(term.size() + 1, 0.0);
        for (std::size_t k = 0; k < term.size(); ++k) {
          next[k] += term[k] * a[j];
          next[k + 1] += term[k] * b[j];
        }
        term.swap(next);
      }
    }
    for (std::size_t k = 0; k < term.size(); ++k) c[k] += term[k];
  }
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return c;
}

/// Screening verdict: true = certainly real-rooted, false = suspicious,
/// nullopt = inconclusive; only `true` is accepted without exact backup.
std::optional<bool> screen_real_rooted(const std::vector<double>& c) {
  if (c.size() <= 1) return std::nullopt;  // (near-)degenerate: decide exactly
  std::vector<Rational> qc(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    Rational q;
    mpq_set_d(q.get_mpq_t(), c[k]);
    qc[k] = q;
  }
  RootSet rs;
  try {
    rs = roots(Polynomial(std::move(qc)), 1e-9);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  double scale = 1.0;
  for (const auto& e : rs.roots) scale = std::max(scale, std::abs(e.value));
  bool clean = true;
  for (const auto& e : rs.roots) {
    if (e.multiplicity > 1) clean = false;
    if (std::fabs(e.value.imag()) > 1e-4 * scale) return false;
    if (std::fabs(e.value.imag()) > 1e-12 * scale) clean = false;
  }
  if (!clean) return std::nullopt;
  for (std::size_t i = 0; i < rs.roots.size(); ++i)
    for (std::size_t j = i + 1; j < rs.roots.size(); ++j)
      if (std::abs(rs.roots[i].value - rs.roots[j].value) < 1e-5 * scale)
        return std::nullopt;
  return true;
}

}  // namespace

StabilityVerdict test_stability(const JointPGF& f, int n_dirs,
                                std::uint64_t seed, double tol) {
  if (n_dirs < 1) throw InputError("test_stability requires n_dirs >= 1");
  StabilityVerdict v;
  if (f.dim() == 1) {
    const auto u = univariate_stable(project(f, {1}), tol);
    if (u.ok()) {
      v.status = StabilityStatus::stable_exact;
      return v;
    }
    v.status = StabilityStatus::unstable;
    v.witness = StabilityWitness{{Rational(0)}, {Rational(1)},
                                 u.refutation->offending_root};
    return v;
  }

  const int d = f.dim();
  v.trials = n_dirs;
  std::vector<Rational> aq(d), bq(d);
  std::vector<double> af(d), bf(d);
  for (int i = 0; i < n_dirs; ++i) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(i));
    // Dyadic samples: base in [-2, 2], direction in (0, 1].
    for (int j = 0; j < d; ++j) {
      const long num = static_cast<long>(rng() % 4097) - 2048;
      aq[j] = Rational(num, 1024);
      aq[j].canonicalize();
      af[j] = static_cast<double>(num) / 1024.0;
    }
    for (int j = 0; j < d; ++j) {
      const long num = static_cast<long>(rng() % 1024) + 1;
      bq[j] = Rational(num, 1024);
      bq[j].canonicalize();
      bf[j] = static_cast<double>(num) / 1024.0;
    }

    const auto screened = screen_real_rooted(restrict_double(f, af, bf));
    if (screened.has_value() && *screened) continue;

    // Exact confirmation for refutations and inconclusive screens.
    const Polynomial g = line_restriction(f, aq, bq);
    if (g.degree() <= 0) continue;  // degenerate restriction: skipped
    if (real_rooted_exact(g)) continue;
    const RootSet rs = roots(g, tol);
    const RootSet::Entry* worst = nullptr;
    for (const auto& e : rs.roots)
      if (!worst || std::fabs(e.value.imag()) > std::fabs(worst->value.imag()))
        worst = &e;
    v.status = StabilityStatus::unstable;
    v.witness = StabilityWitness{aq, bq, worst->value};
    v.trials = i + 1;
    return v;
  }
  v.status = StabilityStatus::stable_probabilistic;
  return v;
}

DiskCheck zero_free_disk_check(const JointPGF& f, const std::vector<int>& a,
                               double tol) {
  if (static_cast<int>(a.size()) != f.dim())
    throw InputError("projection direction has length " +
                     std::to_string(a.size()) + ", expected " +
                     std::to_string(f.dim()));
  int max_a = 0;
  for (int aj : a) {
    if (aj < 1) throw InputError("zero_free_disk_check requires positive integers");
    max_a = std::max(max_a, aj);
  }
  DiskCheck out;
  out.delta_bound = (max_a == 1) ? 0.0 : std::sin(M_PI / max_a);
  out.observed_gap = min_distance_to_one(project(f, a), tol);
  out.pass = out.observed_gap >= out.delta_bound - tol;
  return out;
}

}  // namespace stablepgf
