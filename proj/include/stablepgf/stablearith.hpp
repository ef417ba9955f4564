#pragma once

#include <optional>

#include "stablepgf/clt.hpp"
#include "stablepgf/poly.hpp"

namespace stablepgf {

/// k-section of a polynomial: f(x) = sum_i x^i g_i(x^k), exactly.
struct Decomposition {
  int k = 0;
  std::vector<Polynomial> parts;  ///< g_0 .. g_{k-1}
  int source_degree = 0;          ///< n = deg f

  /// h(y) = sum_i g_i(y), the pgf of floor(X/k) when f is a pgf.
  Polynomial section_sum() const;
};

/// Exact coefficient extraction: g_i[j] = f[k*j + i]. Requires deg f >= 1
/// and k >= 2.
Decomposition decompose(const Polynomial& f, int k);

struct InterlaceCertificate {
  Decomposition decomposition;
  std::vector<NRCertificate> part_certificates;  ///< one per g_i
  std::vector<double> sorted_roots;  ///< all part roots, strictly decreasing
  std::vector<int> part_of;          ///< owner of the j-th merged root (j mod k)
};

struct InterlaceOutcome {
  std::optional<InterlaceCertificate> certificate;
  /// Set when f itself is not NR (hypothesis failure; a rejection, not a bug).
  std::optional<NRRefutation> hypothesis_failure;
  bool ok() const { return certificate.has_value(); }
};

/// Certifies the cyclic interlacing of the k-section parts of an NR
/// polynomial. A non-NR input yields a hypothesis_failure; an NR input
/// whose parts fail to be NR or fail the interlacing pattern throws
/// ConclusionError (that outcome is guaranteed impossible, so reaching it
/// means a bug and must abort loudly).
InterlaceOutcome verify_interlace(const Polynomial& f, int k,
                                  double tol = kDefaultTol);

/// Same, but reusing an NR certificate (or refutation) already computed for
/// f, so callers sweeping one polynomial over several moduli k pay for the
/// certification of f once.
InterlaceOutcome verify_interlace(const Polynomial& f, int k, double tol,
                                  const NROutcome& f_outcome);

/// A divided law together with its stability evidence. The real_rooted
/// flag is an exact certificate (rational sign alternations, with a Sturm
/// chain as fallback); roots are the certified enclosures of the output
/// pgf's roots, for reporting.
struct StableDivision {
  LatticeLaw law;
  Polynomial pgf;
  RootSet roots;
  bool real_rooted = false;
};

/// Tag for callers that already hold an exact real-rootedness certificate
/// for the input pgf (from real_rooted_exact or certify_nr) and divide the
/// same law repeatedly: it skips the redundant precondition check. All
/// output-side certificates are still computed.
struct assume_real_rooted_t {
  explicit assume_real_rooted_t() = default;
};
inline constexpr assume_real_rooted_t assume_real_rooted{};

/// Z = floor(X/2) or ceil(X/2) by a fair coin:
/// P(Z=j) = (1/2)P(X=2j+1) + P(X=2j) + (1/2)P(X=2j-1).
/// Requires the input pgf to be real-rooted; the output is certified
/// real-rooted and cross-checked exactly against the g_1 part of
/// (1/2)(1+x)^2 f(x).
StableDivision half_divide(const LatticeLaw& q);
StableDivision half_divide(const LatticeLaw& q, assume_real_rooted_t);

/// Z = floor(X/k), k >= 2. Requires a real-rooted input pgf; the output
/// pgf h(y) = sum_i g_i(y) is certified real-rooted and cross-checked
/// exactly against block sums of the pmf.
StableDivision floor_divide(const LatticeLaw& q, int k);
StableDivision floor_divide(const LatticeLaw& q, int k, assume_real_rooted_t);

/// Z = floor(a X) for a rational scaling 0 < a <= 1. Exploratory: the
/// result carries a report (roots and an exact real-rootedness flag) but
/// no stability guarantee; real_rooted = false is a legitimate outcome.
StableDivision floor_scale_probe(const LatticeLaw& q, const Rational& a);

}  // namespace stablepgf
