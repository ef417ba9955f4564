#include "stablepgf/corpus.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "stablepgf/errors.hpp"

namespace stablepgf {
namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kSpectrumTol = 1e-9;
constexpr int kMaxGroundSet = 24;

/// Exact determinant over Q(i) by Gaussian elimination with nonzero
/// pivoting; destroys its argument.
QComplex determinant(std::vector<std::vector<QComplex>>& M) {
  const int m = static_cast<int>(M.size());
  QComplex det(Rational(1), Rational(0));
  for (int c = 0; c < m; ++c) {
    int pivot = -1;
    for (int r = c; r < m; ++r) {
      if (!M[r][c].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return QComplex();  // singular
    if (pivot != c) {
      std::swap(M[pivot], M[c]);
      det = QComplex(-det.re, -det.im);
    }
    det = det * M[c][c];
    for (int r = c + 1; r < m; ++r) {
      if (M[r][c].is_zero()) continue;
      const QComplex factor = M[r][c] / M[c][c];
      for (int j = c; j < m; ++j) {
        M[r][j] = M[r][j] - factor * M[c][j];
      }
    }
  }
  return det;
}

}  // namespace

QComplex QComplex::operator/(const QComplex& o) const {
  const Rational n2 = o.norm2();
  if (n2 == 0) throw InputError("QComplex: division by zero");
  const QComplex num = *this * o.conj();
  Rational re_q = num.re / n2;
  Rational im_q = num.im / n2;
  return {std::move(re_q), std::move(im_q)};
}

void DPPKernel::validate() const {
  const int m = size();
  if (m == 0) throw InputError("dpp kernel: empty ground set");
  for (const auto& row : K) {
    if (static_cast<int>(row.size()) != m) {
      throw InputError("dpp kernel: matrix is not square");
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const QComplex diff = K[i][j] - K[j][i].conj();
      const double dev = std::hypot(to_double(diff.re), to_double(diff.im));
      if (dev > kHermitianTol) {
        throw InputError("dpp kernel: not Hermitian at entry (" +
                         std::to_string(i) + "," + std::to_string(j) +
                         "), deviation " + std::to_string(dev));
      }
    }
  }
  Eigen::MatrixXcd Kd(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Kd(i, j) = std::complex<double>(to_double(K[i][j].re),
                                      to_double(K[i][j].im));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Kd,
                                                     Eigen::EigenvaluesOnly);
  for (int i = 0; i < m; ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda < -kSpectrumTol || lambda > 1.0 + kSpectrumTol) {
      throw InputError("dpp kernel: eigenvalue " + std::to_string(lambda) +
                       " outside [0, 1]");
    }
  }
  if (blocks.empty()) throw InputError("dpp kernel: no blocks given");
  std::vector<int> seen(m, 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) {
      throw InputError("dpp kernel: block " + std::to_string(b) +
                       " is empty");
    }
    for (int idx : blocks[b]) {
      if (idx < 0 || idx >= m) {
        throw InputError("dpp kernel: block index " + std::to_string(idx) +
                         " outside the ground set");
      }
      if (seen[idx]++) {
        throw InputError("dpp kernel: ground point " + std::to_string(idx) +
                         " appears in two blocks");
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    if (!seen[i]) {
      throw InputError("dpp kernel: ground point " + std::to_string(i) +
                       " is not covered by any block");
    }
  }
}

JointPGF dpp_pgf(const DPPKernel& kernel) {
  kernel.validate();
  const int m = kernel.size();
  if (m > kMaxGroundSet) {
    throw InputError("dpp_pgf: ground set of size " + std::to_string(m) +
                     " exceeds the enumeration cap " +
                     std::to_string(kMaxGroundSet));
  }
  const int d = kernel.dim();
  std::vector<int> block_of(m, -1);
  for (int b = 0; b < d; ++b) {
    for (int idx : kernel.blocks[b]) block_of[idx] = b;
  }

  std::vector<std::pair<std::vector<int>, Rational>> entries;
  const std::uint32_t total = 1u << m;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    // P(X = S) = (-1)^{m - |S|} det(K - I_{complement of S}).
    std::vector<std::vector<QComplex>> M = kernel.K;
    int popcount = 0;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        ++popcount;
      } else {
        M[i][i].re -= 1;
      }
    }
    QComplex det = determinant(M);
    if ((m - popcount) % 2 == 1) det = QComplex(-det.re, -det.im);
    if (to_double(det.im) != 0.0 &&
        std::abs(to_double(det.im)) > kHermitianTol) {
      throw InputError(
          "dpp_pgf: configuration probability has imaginary part " +
          std::to_string(to_double(det.im)));
    }
    Rational prob = det.re;
    if (prob < 0) {
      if (to_double(prob) < -kHermitianTol) {
        throw InputError("dpp_pgf: configuration probability " +
                         std::to_string(to_double(prob)) +
                         " is negative beyond tolerance");
      }
      continue;  // clamp a tolerated rounding artifact to zero
    }
    if (prob == 0) continue;
    std::vector<int> exponent(d, 0);
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) ++exponent[block_of[i]];
    }
    entries.emplace_back(std::move(exponent), std::move(prob));
  }
  return make_pgf(d, entries);
}

JointPGF affine_product(const std::vector<std::vector<Rational>>& rows,
                        int dim) {
  if (dim < 1) throw InputError("affine_product: dimension must be >= 1");
  JointPGF out = make_pgf(
      dim, {{std::vector<int>(dim, 0), Rational(1)}});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (static_cast<int>(row.size()) != dim + 1) {
      throw InputError("affine_product: row " + std::to_string(r) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(dim + 1));
    }
    Rational total(0);
    for (const Rational& c : row) {
      if (c < 0) {
        throw InputError("affine_product: row " + std::to_string(r) +
                         " has a negative coefficient");
      }
      total += c;
    }
    if (total == 0) {
      throw InputError("affine_product: row " + std::to_string(r) +
                       " is identically zero");
    }
    std::vector<std::pair<std::vector<int>, Rational>> factor;
    if (row[0] > 0) {
      factor.emplace_back(std::vector<int>(dim, 0), row[0] / total);
    }
    for (int j = 1; j <= dim; ++j) {
      if (row[j] > 0) {
        std::vector<int> e(dim, 0);
        e[j - 1] = 1;
        factor.emplace_back(std::move(e), row[j] / total);
      }
    }
    out = pgf_product(out, make_pgf(dim, factor));
  }
  return out;
}

LatticeLaw nr_law_from_roots(const std::vector<Rational>& roots) {
  if (roots.empty()) {
    throw InputError("nr_law_from_roots: at least one root is required");
  }
  std::set<Rational> distinct;
  for (const Rational& s : roots) {
    if (s >= 0) {
      throw InputError("nr_law_from_roots: root " + rational_str(s) +
                       " is not strictly negative");
    }
    if (!distinct.insert(s).second) {
      throw InputError("nr_law_from_roots: repeated root " + rational_str(s));
    }
  }
  std::vector<Rational> coeffs{Rational(1)};
  for (const Rational& s : roots) {
    std::vector<Rational> next(coeffs.size() + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] += coeffs[i];
      next[i] -= s * coeffs[i];
    }
    coeffs = std::move(next);
  }
  Rational at_one(0);
  for (const Rational& c : coeffs) at_one += c;
  for (Rational& c : coeffs) c /= at_one;
  return LatticeLaw(std::move(coeffs));
}

LatticeLaw random_nr_law(int n, std::uint64_t seed,
                         const Rational& root_range) {
  if (n < 1) throw InputError("random_nr_law: degree must be >= 1");
  // Grid of admissible roots: -j/100 strictly inside (-root_range, -1/100),
  // i.e. integers j with 2 <= j <= jmax < 100 * root_range.
  const Rational hundred_range = Rational(100) * root_range;
  Integer jmax;
  mpz_fdiv_q(jmax.get_mpz_t(), hundred_range.get_num().get_mpz_t(),
             hundred_range.get_den().get_mpz_t());
  if (hundred_range == Rational(jmax)) jmax -= 1;
  if (jmax < 2 || Integer(n) > jmax - 1) {
    throw InputError("random_nr_law: root_range " + rational_str(root_range) +
                     " leaves fewer than " + std::to_string(n) +
                     " grid points");
  }
  const unsigned long span = jmax.get_ui() - 1;  // choices 2 .. jmax
  auto rng = make_rng(seed, 29);
  std::set<unsigned long> chosen;
  long budget = 64L * n + 1000;
  while (static_cast<int>(chosen.size()) < n) {
    if (--budget < 0) {
      throw InputError(
          "random_nr_law: root collision retry budget exhausted for degree " +
          std::to_string(n));
    }
    chosen.insert(2 + static_cast<unsigned long>(rng() % span));
  }
  std::vector<Rational> roots;
  roots.reserve(chosen.size());
  for (unsigned long j : chosen) {
    Rational s(-static_cast<long>(j), 100);
    s.canonicalize();
    roots.push_back(std::move(s));
  }
  return nr_law_from_roots(roots);
}

std::vector<JointPGF> power_family(const JointPGF& base,
                                   const std::vector<int>& exponents,
                                   std::size_t max_terms) {
  if (exponents.empty()) {
    throw InputError("power_family: no exponents given");
  }
  auto guard = [&](const JointPGF& f, int n) {
    if (f.terms().size() > max_terms) {
      throw InputError("power_family: support of base^" + std::to_string(n) +
                       " exceeds the cap of " + std::to_string(max_terms) +
                       " terms");
    }
  };
  std::vector<JointPGF> family;
  family.reserve(exponents.size());
  for (int n : exponents) {
    if (n < 1) {
      throw InputError("power_family: exponent " + std::to_string(n) +
                       " must be >= 1");
    }
    // Binary exponentiation; every intermediate is itself a pgf.
    std::optional<JointPGF> acc;
    JointPGF sq = base;
    int rem = n;
    while (true) {
      if (rem & 1) {
        acc = acc ? pgf_product(*acc, sq) : sq;
        guard(*acc, n);
      }
      rem >>= 1;
      if (rem == 0) break;
      sq = pgf_product(sq, sq);
      guard(sq, n);
    }
    family.push_back(std::move(*acc));
  }
  return family;
}

}  // namespace stablepgf
