#pragma once

#include <cstdint>
#include <vector>

#include "stablepgf/clt.hpp"
#include "stablepgf/pgf.hpp"

namespace stablepgf {

/// Exact Gaussian-rational number a + b i.
struct QComplex {
  Rational re, im;

  QComplex() : re(0), im(0) {}
  QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  QComplex conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  QComplex operator+(const QComplex& o) const { return {re + o.re, im + o.im}; }
  QComplex operator-(const QComplex& o) const { return {re - o.re, im - o.im}; }
  QComplex operator*(const QComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  QComplex operator/(const QComplex& o) const;
  bool operator==(const QComplex& o) const = default;
};

/// Finite Hermitian kernel with spectrum in [0,1], together with a block
/// partition of its ground set {0, ..., m-1}; block occupancy counts are
/// the coordinates of the resulting pgf.
struct DPPKernel {
  std::vector<std::vector<QComplex>> K;
  std::vector<std::vector<int>> blocks;

  int size() const { return static_cast<int>(K.size()); }
  int dim() const { return static_cast<int>(blocks.size()); }

  /// Hermitian within 1e-12, eigenvalues in [0,1] within 1e-9, blocks
  /// disjoint and covering. Throws InputError on any violation.
  void validate() const;
};

/// Joint pgf of the block occupancy counts, by exact enumeration of all
/// 2^m configurations: P(X = S) = (-1)^{m-|S|} det(K - I_{complement S}),
/// evaluated in Gaussian-rational arithmetic. Requires m <= 24.
JointPGF dpp_pgf(const DPPKernel& kernel);

/// Normalized product of nonnegative affine forms: each row is
/// (c_0, c_1, ..., c_d) for the factor c_0 + sum_j c_j z_j, divided by its
/// row sum. Stable by construction.
JointPGF affine_product(const std::vector<std::vector<Rational>>& rows,
                        int dim);

/// Law with pgf prod_j (x - s_j) / prod_j (1 - s_j) for given distinct
/// strictly negative roots.
LatticeLaw nr_law_from_roots(const std::vector<Rational>& roots);

/// n distinct roots sampled from the hundredths grid strictly inside
/// (-root_range, -1/100); deterministic per seed. Throws InputError when
/// the collision retry budget is exhausted.
LatticeLaw random_nr_law(int n, std::uint64_t seed,
                         const Rational& root_range = Rational(100));

/// pgf of the sum of n independent copies of base, for each listed n:
/// base^n, exact. Rejects (naming the offending n) when an intermediate
/// support exceeds max_terms.
std::vector<JointPGF> power_family(const JointPGF& base,
                                   const std::vector<int>& exponents,
                                   std::size_t max_terms = 500000);

}  // namespace stablepgf
