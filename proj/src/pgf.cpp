#include "stablepgf/pgf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace stablepgf {

namespace {

std::string exponent_str(const std::vector<int>& e) {
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (j) os << ",";
    os << e[j];
  }
  os << ")";
  return os.str();
}

}  // namespace

JointPGF::JointPGF(int dim, Terms terms) : dim_(dim), terms_(std::move(terms)) {
  if (dim_ < 1) throw InputError("pgf dimension must be at least 1");
  if (terms_.empty()) throw InputError("pgf must have at least one term");
  Rational total(0);
  degree_bounds_.assign(dim_, 0);
  for (const auto& [e, p] : terms_) {
    if (static_cast<int>(e.size()) != dim_)
      throw InputError("exponent tuple " + exponent_str(e) + " has length " +
                       std::to_string(e.size()) + ", expected " +
                       std::to_string(dim_));
    for (int j = 0; j < dim_; ++j) {
      if (e[j] < 0)
        throw InputError("negative exponent in term " + exponent_str(e));
      degree_bounds_[j] = std::max(degree_bounds_[j], e[j]);
    }
    if (p <= 0)
      throw InputError("probability of term " + exponent_str(e) +
                       " is not strictly positive: " + rational_str(p));
    total += p;
  }
  if (total != 1)
    throw InputError("pgf mass is " + rational_str(total) + ", deficit " +
                     rational_str(Rational(1) - total));
}

Rational JointPGF::mass() const {
  Rational total(0);
  for (const auto& [e, p] : terms_) total += p;
  return total;
}

JointPGF make_pgf(int dim,
                  const std::vector<std::pair<std::vector<int>, Rational>>& entries) {
  JointPGF::Terms terms;
  for (const auto& [e, p] : entries) terms[e] += p;
  return JointPGF(dim, std::move(terms));
}

Polynomial project(const JointPGF& f, const std::vector<int>& a) {
  if (static_cast<int>(a.size()) != f.dim())
    throw InputError("projection direction has length " +
                     std::to_string(a.size()) + ", expected " +
                     std::to_string(f.dim()));
  long total_pos = 0;
  for (int aj : a) {
    if (aj < 0) throw InputError("projection direction must be nonnegative");
    total_pos += aj;
  }
  if (total_pos == 0)
    throw InputError("projection direction must have a positive entry");
  long max_deg = 0;
  for (int j = 0; j < f.dim(); ++j)
    max_deg += static_cast<long>(a[j]) * f.degree_bounds()[j];
  std::vector<Rational> c(max_deg + 1, Rational(0));
  for (const auto& [e, p] : f.terms()) {
    long k = 0;
    for (int j = 0; j < f.dim(); ++j) k += static_cast<long>(a[j]) * e[j];
    c[k] += p;
  }
  return Polynomial(std::move(c));
}

JointPGF aggregate(const JointPGF& f, const std::vector<int>& grouping,
                   int new_dim) {
  if (static_cast<int>(grouping.size()) != f.dim())
    throw InputError("grouping has length " + std::to_string(grouping.size()) +
                     ", expected " + std::to_string(f.dim()));
  if (new_dim < 1) throw InputError("aggregate target dimension must be >= 1");
  std::vector<bool> hit(new_dim, false);
  for (int g : grouping) {
    if (g < 0 || g >= new_dim)
      throw InputError("group index " + std::to_string(g) + " out of range");
    hit[g] = true;
  }
  for (int i = 0; i < new_dim; ++i)
    if (!hit[i])
      throw InputError("grouping is not surjective: group " + std::to_string(i) +
                       " is empty");
  JointPGF::Terms terms;
  for (const auto& [e, p] : f.terms()) {
    std::vector<int> ne(new_dim, 0);
    for (int j = 0; j < f.dim(); ++j) ne[grouping[j]] += e[j];
    terms[ne] += p;
  }
  return JointPGF(new_dim, std::move(terms));
}

namespace {

/// Multiaffine expansion: multiply `acc` (terms over `total` binary slots) by
/// e_m(slots offset..offset+n-1) / C(n, m).
void polarize_block(JointPGF::Terms& acc, int total, int offset, int n, int m,
                    const Rational& weight) {
  // Enumerate m-subsets of {0..n-1}.
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  JointPGF::Terms next;
  while (true) {
    for (const auto& [e, p] : acc) {
      std::vector<int> ne = e;
      for (int t : idx) ne[offset + t] = 1;
      next[ne] += p * weight;
    }
    // next m-subset
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int t = i + 1; t < m; ++t) idx[t] = idx[t - 1] + 1;
  }
  acc = std::move(next);
  (void)total;
}

}  // namespace

JointPGF polarize(const JointPGF& f, const std::vector<int>& n) {
  if (static_cast<int>(n.size()) != f.dim())
    throw InputError("polarization degree vector has length " +
                     std::to_string(n.size()) + ", expected " +
                     std::to_string(f.dim()));
  long total = 0;
  for (int j = 0; j < f.dim(); ++j) {
    if (n[j] < f.degree_bounds()[j])
      throw InputError("polarization degree n_" + std::to_string(j + 1) + " = " +
                       std::to_string(n[j]) + " is below the coordinate degree " +
                       std::to_string(f.degree_bounds()[j]));
    total += n[j];
  }
  if (total > 24)
    throw InputError("polarization would produce " + std::to_string(total) +
                     " binary coordinates; the supported cap is 24");

  std::vector<int> offset(f.dim(), 0);
  for (int j = 1; j < f.dim(); ++j) offset[j] = offset[j - 1] + n[j - 1];

  JointPGF::Terms out;
  const int D = static_cast<int>(total);
  for (const auto& [e, p] : f.terms()) {
    JointPGF::Terms acc;
    acc[std::vector<int>(D, 0)] = p;
    for (int j = 0; j < f.dim(); ++j) {
      const Rational w(1, binomial(n[j], e[j]));
      polarize_block(acc, D, offset[j], n[j], e[j], w);
    }
    for (auto& [ne, np] : acc) out[ne] += np;
  }
  return JointPGF(D, std::move(out));
}

JointPGF smear(const JointPGF& f, const std::vector<Rational>& a) {
  if (static_cast<int>(a.size()) != f.dim())
    throw InputError("thinning vector has length " + std::to_string(a.size()) +
                     ", expected " + std::to_string(f.dim()));
  for (const auto& aj : a)
    if (aj < 0 || aj > 1)
      throw InputError("thinning probability " + rational_str(aj) +
                       " is outside [0, 1]");
  JointPGF::Terms out;
  for (const auto& [e, p] : f.terms()) {
    // Expand prod_j (1 - a_j + a_j z_j)^{e_j} one coordinate at a time.
    JointPGF::Terms acc;
    acc[std::vector<int>(f.dim(), 0)] = p;
    for (int j = 0; j < f.dim(); ++j) {
      if (e[j] == 0) continue;
      JointPGF::Terms next;
      const Rational keep = a[j];
      const Rational drop = Rational(1) - a[j];
      for (int t = 0; t <= e[j]; ++t) {
        Rational w(binomial(e[j], t));
        for (int s = 0; s < t; ++s) w *= keep;
        for (int s = 0; s < e[j] - t; ++s) w *= drop;
        if (w == 0) continue;
        for (const auto& [ne, np] : acc) {
          std::vector<int> me = ne;
          me[j] = t;
          next[me] += np * w;
        }
      }
      acc = std::move(next);
    }
    for (auto& [ne, np] : acc) out[ne] += np;
  }
  // Thinning with a_j = 1 - ... may cancel nothing, but a_j = 0 or binomial
  // cancellations can leave exact zeros; drop them.
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return JointPGF(f.dim(), std::move(out));
}

JointPGF marginal(const JointPGF& f, const std::vector<int>& keep) {
  if (keep.empty()) throw InputError("marginal must keep at least one coordinate");
  for (std::size_t t = 0; t < keep.size(); ++t) {
    if (keep[t] < 0 || keep[t] >= f.dim())
      throw InputError("marginal coordinate " + std::to_string(keep[t]) +
                       " out of range");
    if (t > 0 && keep[t] <= keep[t - 1])
      throw InputError("marginal coordinates must be strictly increasing");
  }
  JointPGF::Terms terms;
  for (const auto& [e, p] : f.terms()) {
    std::vector<int> ne(keep.size());
    for (std::size_t t = 0; t < keep.size(); ++t) ne[t] = e[keep[t]];
    terms[ne] += p;
  }
  return JointPGF(static_cast<int>(keep.size()), std::move(terms));
}

JointPGF pgf_product(const JointPGF& f, const JointPGF& g) {
  if (f.dim() != g.dim())
    throw InputError("pgf product requires equal dimensions, got " +
                     std::to_string(f.dim()) + " and " + std::to_string(g.dim()));
  JointPGF::Terms terms;
  for (const auto& [e1, p1] : f.terms())
    for (const auto& [e2, p2] : g.terms()) {
      std::vector<int> e(e1);
      for (int j = 0; j < f.dim(); ++j) e[j] += e2[j];
      terms[e] += p1 * p2;
    }
  return JointPGF(f.dim(), std::move(terms));
}

std::vector<double> MomentSummary::mean_d() const {
  std::vector<double> out(mean.size());
  for (std::size_t j = 0; j < mean.size(); ++j) out[j] = to_double(mean[j]);
  return out;
}

std::vector<std::vector<double>> MomentSummary::cov_d() const {
  std::vector<std::vector<double>> out(cov.size());
  for (std::size_t i = 0; i < cov.size(); ++i) {
    out[i].resize(cov[i].size());
    for (std::size_t j = 0; j < cov[i].size(); ++j) out[i][j] = to_double(cov[i][j]);
  }
  return out;
}

MomentSummary mean_cov(const JointPGF& f) {
  const int d = f.dim();
  MomentSummary ms;
  ms.mean.assign(d, Rational(0));
  ms.cov.assign(d, std::vector<Rational>(d, Rational(0)));
  std::vector<std::vector<Rational>> second(d, std::vector<Rational>(d, Rational(0)));
  for (const auto& [e, p] : f.terms()) {
    for (int i = 0; i < d; ++i) {
      ms.mean[i] += p * e[i];
      for (int j = 0; j < d; ++j) second[i][j] += p * e[i] * e[j];
    }
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      ms.cov[i][j] = second[i][j] - ms.mean[i] * ms.mean[j];
  return ms;
}

}  // namespace stablepgf
