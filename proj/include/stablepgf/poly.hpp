#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablepgf/rational.hpp"

namespace stablepgf {

/// Dense univariate polynomial with exact rational coefficients,
/// stored lowest degree first. The representation is normalized:
/// no trailing zero coefficients, and the zero polynomial has an
/// empty coefficient vector (degree -1).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  /// prod_j (x - r_j), expanded exactly.
  static Polynomial from_roots(const std::vector<Rational>& roots);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  /// Coefficient of x^k; zero beyond the degree.
  const Rational& coeff(int k) const;
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;
  bool operator==(const Polynomial& o) const = default;

  /// Human-readable form for diagnostics, e.g. "13/20 + 3/10 x + 1/20 x^2".
  std::string str() const;

 private:
  std::vector<Rational> c_;
};

Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// Exact division; throws InputError if b is zero or does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// Monic gcd over Q, computed with a primitive pseudo-remainder sequence
/// over Z. gcd(0, 0) is 0.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// Yun decomposition p = lc * prod_i f_i^i with the f_i squarefree, monic
/// and pairwise coprime. Returns (f_i, i) pairs with deg f_i >= 1.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(
    const Polynomial& p);

/// Number of distinct real roots, by an exact Sturm chain.
int count_distinct_real_roots(const Polynomial& p);

/// Exact test: every complex root of p is real (counted without
/// multiplicity, so (x+1)^2 passes).
bool real_rooted_exact(const Polynomial& p);

struct RootSet {
  struct Entry {
    std::complex<double> value;
    int multiplicity = 1;
  };
  std::vector<Entry> roots;
  /// Upper bound on the distance from each reported root to some true root.
  double certified_error = 0.0;

  int total_multiplicity() const;
};

inline constexpr double kDefaultTol = 1e-9;

/// All complex roots with multiplicities. Deterministic for fixed input.
/// Multiple roots are resolved through an exact squarefree decomposition,
/// so the certified error stays at simple-root quality. Throws InputError
/// on the zero polynomial and NumericalError if certification at the
/// requested tolerance is impossible.
RootSet roots(const Polynomial& p, double tol = kDefaultTol);

/// Same exact test, reusing enclosures already computed for p. The
/// enclosures only suggest where to place rational separators; a positive
/// answer is still backed by exact sign alternations (with the Sturm chain
/// as fallback), so a stale or wrong hint costs time, never correctness.
bool real_rooted_exact(const Polynomial& p, const RootSet& hint);

/// Float route: every root satisfies |Im z| <= tol * max(1, |z|).
/// Degree <= 0 counts as real-rooted.
bool is_real_rooted(const Polynomial& p, double tol = kDefaultTol);

/// Certificate that p has simple, strictly negative real roots.
struct NRCertificate {
  std::vector<double> sorted_roots;  ///< strictly decreasing (toward -inf)
  double min_gap = 0.0;
};

struct NRRefutation {
  std::string reason;
  std::complex<double> offending_root;
};

struct NROutcome {
  std::optional<NRCertificate> certificate;
  std::optional<NRRefutation> refutation;
  bool ok() const { return certificate.has_value(); }
};

NROutcome certify_nr(const Polynomial& p, double tol = kDefaultTol);

/// min_j |r_j - 1| over the roots of p.
double min_distance_to_one(const Polynomial& p, double tol = kDefaultTol);

struct InterlaceCheck {
  bool ok = false;
  /// When !ok: position (0-based, in the merged decreasing order) of the
  /// first root assigned to the wrong part.
  int violated_index = -1;
  /// part_of[j] = index of the part owning the j-th merged root.
  std::vector<int> part_of;
};

/// Checks the cyclic interlacing pattern for the k-section parts of a
/// degree-n NR polynomial: merging all part roots in decreasing order,
/// the j-th root must belong to part j mod k. Throws InputError when the
/// total root count differs from n - k + 1.
InterlaceCheck check_interlacing(const std::vector<NRCertificate>& parts,
                                 int k, int n, double tol = kDefaultTol);

}  // namespace stablepgf
