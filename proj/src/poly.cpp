#include "stablepgf/poly.hpp"

#include <algorithm>
#include <cfloat>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace stablepgf {

// ---------------------------------------------------------------------------
// Polynomial basics
// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::constant(const Rational& c) {
  return Polynomial(std::vector<Rational>{c});
}

Polynomial Polynomial::from_roots(const std::vector<Rational>& roots) {
  Polynomial p = constant(Rational(1));
  for (const auto& r : roots) p = p * Polynomial({-r, Rational(1)});
  return p;
}

const Rational& Polynomial::coeff(int k) const {
  static const Rational zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<std::size_t>(k)];
}

const Rational& Polynomial::leading() const {
  if (c_.empty()) throw InputError("zero polynomial has no leading coefficient");
  return c_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k)
    d[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> s(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) s[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) s[k] += o.c_[k];
  return Polynomial(std::move(s));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<Rational> s(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) s[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) s[k] -= o.c_[k];
  return Polynomial(std::move(s));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<Rational> s(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) s[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(s));
}

Polynomial Polynomial::operator*(const Rational& s) const {
  std::vector<Rational> out(c_);
  for (auto& c : out) c *= s;
  return Polynomial(std::move(out));
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    if (k == 0 || c_[k] != 1) os << rational_str(c_[k]);
    if (k >= 1 && c_[k] != 1) os << " ";
    if (k == 1) os << "x";
    if (k > 1) os << "x^" << k;
    first = false;
  }
  return os.str();
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) { return a * b; }

int RootSet::total_multiplicity() const {
  int t = 0;
  for (const auto& e : roots) t += e.multiplicity;
  return t;
}

namespace {

/// Short label for error messages; large polynomials are abbreviated.
std::string poly_label(const Polynomial& p) {
  std::string s = p.str();
  if (s.size() > 160) {
    std::ostringstream os;
    os << "degree-" << p.degree() << " polynomial [c0=" << rational_str(p.coeff(0))
       << ", lc=" << rational_str(p.leading()) << "]";
    return os.str();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Exact integer-polynomial machinery (primitive PRS, Sturm chains)
// ---------------------------------------------------------------------------

using PolyZ = std::vector<Integer>;  // lowest degree first, trimmed

void trimz(PolyZ& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Integer content_z(const PolyZ& p) {
  Integer g(0);
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;  // nonnegative
}

/// Strip the (positive) content, preserving signs.
void make_primitive(PolyZ& p) {
  Integer g = content_z(p);
  if (g > 1)
    for (auto& c : p) c /= g;
}

PolyZ to_primitive_z(const Polynomial& p) {
  Integer den(1);
  for (const auto& c : p.coeffs())
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  PolyZ out(p.coeffs().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Rational& c = p.coeffs()[k];
    out[k] = c.get_num() * Integer(den / c.get_den());
  }
  make_primitive(out);
  return out;
}

PolyZ derivative_z(const PolyZ& p) {
  if (p.size() <= 1) return {};
  PolyZ d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<long>(k);
  return d;
}

/// Pseudo-remainder of A by B using only positive scalings (each elimination
/// step multiplies by lc(B)^2), so sign variations stay meaningful.
PolyZ prem_pos(PolyZ R, const PolyZ& B) {
  const Integer lb = B.back();
  const Integer lb2 = lb * lb;
  while (R.size() >= B.size() && !R.empty()) {
    const std::size_t shift = R.size() - B.size();
    const Integer lr = R.back();
    for (auto& c : R) c *= lb2;
    const Integer f = lr * lb;
    for (std::size_t i = 0; i < B.size(); ++i) R[i + shift] -= f * B[i];
    trimz(R);
  }
  return R;
}

PolyZ gcd_z(PolyZ a, PolyZ b) {
  trimz(a);
  trimz(b);
  if (a.empty()) std::swap(a, b);
  if (b.empty()) {
    make_primitive(a);
    if (!a.empty() && a.back() < 0)
      for (auto& c : a) c = -c;
    return a;
  }
  if (a.size() < b.size()) std::swap(a, b);
  make_primitive(a);
  make_primitive(b);
  while (true) {
    PolyZ r = prem_pos(a, b);
    make_primitive(r);
    if (r.empty()) break;
    a = std::move(b);
    b = std::move(r);
  }
  if (b.back() < 0)
    for (auto& c : b) c = -c;
  return b;
}

Polynomial z_to_monic_q(const PolyZ& p) {
  if (p.empty()) return Polynomial();
  std::vector<Rational> c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) c[k] = Rational(p[k], p.back());
  for (auto& q : c) q.canonicalize();
  return Polynomial(std::move(c));
}

// --- Modular squarefree shortcut ---
//
// Reducing mod a prime q with q not dividing lc(p) can only enlarge
// gcd(p, p'): the rational gcd survives reduction with its degree intact and
// divides the modular gcd. So a *constant* modular gcd proves p squarefree
// over Q, while a nontrivial one proves nothing (q may be unlucky) and the
// caller falls back to the exact primitive-PRS gcd. This turns the common
// case (squarefree input) into an O(n^2) word-arithmetic check instead of an
// integer PRS with coefficient growth.

using PolyF = std::vector<std::uint64_t>;  // GF(q), lowest degree first

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return a * b % q;  // q < 2^31, so a*b < 2^62 never overflows
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q) {
  return powmod(a, q - 2, q);  // q prime, a != 0 mod q
}

void trimf(PolyF& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Coefficientwise image of p in GF(q). Fails (returns false) when q divides
/// a denominator or the leading numerator, i.e. when reduction mod q does not
/// preserve the degree.
bool reduce_mod_q(const Polynomial& p, std::uint64_t q, PolyF& out) {
  out.assign(static_cast<std::size_t>(p.degree()) + 1, 0);
  for (int k = 0; k <= p.degree(); ++k) {
    const Rational& c = p.coeff(k);
    if (c == 0) continue;
    const std::uint64_t dn = mpz_fdiv_ui(c.get_den().get_mpz_t(), q);
    if (dn == 0) return false;
    const std::uint64_t nm = mpz_fdiv_ui(c.get_num().get_mpz_t(), q);
    out[static_cast<std::size_t>(k)] = mulmod(nm, inv_mod(dn, q), q);
  }
  return out.back() != 0;
}

/// Remainder of a by b over GF(q); b is nonempty with b.back() != 0.
PolyF mod_f(PolyF a, const PolyF& b, std::uint64_t q) {
  const std::uint64_t inv = inv_mod(b.back(), q);
  while (a.size() >= b.size() && !a.empty()) {
    const std::uint64_t f = mulmod(a.back(), inv, q);
    const std::size_t shift = a.size() - b.size();
    if (f != 0)
      for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const std::uint64_t t = mulmod(f, b[i], q);
        a[shift + i] = (a[shift + i] + q - t) % q;
      }
    a.pop_back();  // leading term cancels exactly
    trimf(a);
  }
  return a;
}

/// One-sided test: true means gcd(p, p') = 1 over Q, hence p squarefree.
/// False is inconclusive.
bool provably_squarefree(const Polynomial& p) {
  if (p.degree() <= 1) return true;
  for (std::uint64_t q : {2147483647ull, 2147483629ull, 2147483587ull}) {
    PolyF a;
    if (!reduce_mod_q(p, q, a)) continue;
    PolyF b(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k)
      b[k - 1] = mulmod(a[k], k % q, q);
    trimf(b);
    if (b.empty()) continue;  // derivative vanished mod q: unusable prime
    while (!b.empty()) {
      PolyF r = mod_f(std::move(a), b, q);
      a = std::move(b);
      b = std::move(r);
    }
    if (a.size() == 1) return true;
  }
  return false;
}

int sign_of(const Integer& x) { return mpz_sgn(x.get_mpz_t()); }

/// Exact sign of P(u/v) for an integer polynomial P: evaluates
/// v^deg * P(u/v) by an all-integer Horner scheme.
int sign_at_rational(const PolyZ& P, const Rational& t) {
  const Integer& u = t.get_num();
  const Integer& v = t.get_den();
  Integer acc = P.back();
  Integer vp(1);
  for (int j = static_cast<int>(P.size()) - 2; j >= 0; --j) {
    vp *= v;
    acc *= u;
    acc += P[static_cast<std::size_t>(j)] * vp;
  }
  return sign_of(acc);
}

/// One-sided exact real-rootedness certificate. Uses the numeric enclosures
/// only to place deg(p)+1 rational separators; a true return is backed by
/// deg(p) exact sign alternations of p, which prove deg(p) distinct real
/// roots (all real, all simple). False is inconclusive and callers fall back
/// to the Sturm chain.
bool sign_alternation_real_rooted(const Polynomial& p, const RootSet& rs) {
  const int n = p.degree();
  if (static_cast<int>(rs.roots.size()) != n) return false;
  std::vector<double> re;
  re.reserve(static_cast<std::size_t>(n));
  for (const auto& e : rs.roots) {
    if (e.multiplicity != 1 || e.value.imag() != 0.0) return false;
    re.push_back(e.value.real());
  }
  std::vector<double> pts;  // rs is sorted by decreasing real part
  pts.reserve(static_cast<std::size_t>(n) + 1);
  const double pad = std::max(1.0, 4.0 * rs.certified_error);
  pts.push_back(re.front() + pad);
  for (int i = 0; i + 1 < n; ++i) {
    if (!(re[static_cast<std::size_t>(i)] > re[static_cast<std::size_t>(i) + 1]))
      return false;
    pts.push_back(0.5 * (re[static_cast<std::size_t>(i)] +
                         re[static_cast<std::size_t>(i) + 1]));
  }
  pts.push_back(re.back() - pad);
  const PolyZ P = to_primitive_z(p);
  int prev = 0;
  for (int i = 0; i <= n; ++i) {
    if (!std::isfinite(pts[static_cast<std::size_t>(i)])) return false;
    const int s = sign_at_rational(P, Rational(pts[static_cast<std::size_t>(i)]));
    if (s == 0 || (i > 0 && s != -prev)) return false;
    prev = s;
  }
  return true;
}

/// Sign variations in the chain evaluated at -inf (neg=true) or +inf.
int variations_at_infinity(const std::vector<PolyZ>& chain, bool neg) {
  int count = 0, prev = 0;
  for (const auto& p : chain) {
    if (p.empty()) continue;
    int s = sign_of(p.back());
    if (neg && (p.size() - 1) % 2 == 1) s = -s;
    if (prev != 0 && s != 0 && s != prev) ++count;
    if (s != 0) prev = s;
  }
  return count;
}

}  // namespace

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  if (a.is_zero()) return Polynomial();
  if (a.degree() < b.degree())
    throw InputError("polynomial division is not exact: " + poly_label(b) +
                     " does not divide " + poly_label(a));
  std::vector<Rational> rem(a.coeffs());
  std::vector<Rational> quot(a.degree() - b.degree() + 1, Rational(0));
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational q = rem[k + b.degree()] / b.leading();
    quot[k] = q;
    if (q != 0)
      for (int j = 0; j <= b.degree(); ++j) rem[k + j] -= q * b.coeff(j);
  }
  for (const auto& r : rem)
    if (r != 0)
      throw InputError("polynomial division is not exact: " + poly_label(b) +
                       " does not divide " + poly_label(a));
  return Polynomial(std::move(quot));
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return Polynomial();
  if (a.is_zero()) return z_to_monic_q(to_primitive_z(b));
  if (b.is_zero()) return z_to_monic_q(to_primitive_z(a));
  return z_to_monic_q(gcd_z(to_primitive_z(a), to_primitive_z(b)));
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(
    const Polynomial& p) {
  if (p.is_zero()) throw InputError("squarefree decomposition of zero polynomial");
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() < 1) return out;

  if (provably_squarefree(p)) {
    out.emplace_back(p * (Rational(1) / p.leading()), 1);
    return out;
  }

  // Yun's algorithm over Q.
  Polynomial g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) {
    out.emplace_back(p * (Rational(1) / p.leading()), 1);
    return out;
  }
  Polynomial c = divide_exact(p, g);
  Polynomial d = divide_exact(p.derivative(), g) - c.derivative();
  int i = 1;
  while (c.degree() >= 1) {
    Polynomial a = poly_gcd(c, d);
    if (a.degree() >= 1) out.emplace_back(a, i);
    c = divide_exact(c, a);
    d = divide_exact(d, a) - c.derivative();
    ++i;
  }
  return out;
}

int count_distinct_real_roots(const Polynomial& p) {
  if (p.degree() <= 0) return 0;
  Polynomial s = p;
  if (!provably_squarefree(p)) {
    Polynomial g = poly_gcd(p, p.derivative());
    if (g.degree() > 0) s = divide_exact(p, g);
  }
  if (s.degree() == 1) return 1;

  std::vector<PolyZ> chain;
  chain.push_back(to_primitive_z(s));
  chain.push_back(derivative_z(chain[0]));
  make_primitive(chain[1]);
  while (chain.back().size() > 1) {
    PolyZ r = prem_pos(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    make_primitive(r);
    chain.push_back(std::move(r));
  }
  return variations_at_infinity(chain, true) - variations_at_infinity(chain, false);
}

namespace {

/// Exact decision through the squarefree part's Sturm chain.
bool real_rooted_sturm(const Polynomial& p) {
  Polynomial s = p;
  if (!provably_squarefree(p)) {
    Polynomial g = poly_gcd(p, p.derivative());
    if (g.degree() > 0) s = divide_exact(p, g);
  }
  return count_distinct_real_roots(s) == s.degree();
}

}  // namespace

bool real_rooted_exact(const Polynomial& p) {
  if (p.is_zero()) throw InputError("real-rootedness of zero polynomial");
  if (p.degree() <= 0) return true;
  try {
    if (sign_alternation_real_rooted(p, roots(p))) return true;
  } catch (const NumericalError&) {
    // The solver could not certify enclosures; the exact chain decides.
  }
  return real_rooted_sturm(p);
}

bool real_rooted_exact(const Polynomial& p, const RootSet& hint) {
  if (p.is_zero()) throw InputError("real-rootedness of zero polynomial");
  if (p.degree() <= 0) return true;
  if (sign_alternation_real_rooted(p, hint)) return true;
  return real_rooted_sturm(p);
}

// ---------------------------------------------------------------------------
// Floating-point root solver (Aberth-Ehrlich with certified residual bounds)
// ---------------------------------------------------------------------------

namespace {

using Complex = std::complex<double>;

struct ScaledCoeff {
  double mant = 0.0;  // in [0.5, 1) when nonzero
  long exp2 = 0;      // value = mant * 2^exp2
  bool nonzero = false;
};

ScaledCoeff frexp_q(const Rational& q) {
  ScaledCoeff out;
  if (q == 0) return out;
  const long en = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
  const long ed = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
  long e = en - ed;
  Rational m = q;
  if (e > 0) {
    Integer sh(1);
    sh <<= static_cast<unsigned long>(e);
    m /= Rational(sh);
  } else if (e < 0) {
    Integer sh(1);
    sh <<= static_cast<unsigned long>(-e);
    m *= Rational(sh);
  }
  int adj = 0;
  out.mant = std::frexp(m.get_d(), &adj);
  out.exp2 = e + adj;
  out.nonzero = true;
  return out;
}

/// Natural log of |c| from its scaled representation (no overflow).
double log_abs(const ScaledCoeff& s) {
  return std::log(std::fabs(s.mant)) + static_cast<double>(s.exp2) * M_LN2;
}

/// Initial guesses on tropical-root circles from the upper convex hull of
/// (k, log |c_k|). `phase` varies between retry attempts.
std::vector<Complex> initial_guesses(const std::vector<ScaledCoeff>& sc,
                                     double phase) {
  const int n = static_cast<int>(sc.size()) - 1;
  std::vector<std::pair<int, double>> pts;  // (k, log|c_k|), c_k != 0
  for (int k = 0; k <= n; ++k)
    if (sc[k].nonzero) pts.emplace_back(k, log_abs(sc[k]));

  // Upper hull, monotone chain over k.
  std::vector<std::pair<int, double>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross = (b.first - a.first) * (pt.second - a.second) -
                           (pt.first - a.first) * (b.second - a.second);
      if (cross >= 0) hull.pop_back();  // b not above chord a-pt
      else break;
    }
    hull.push_back(pt);
  }

  std::vector<Complex> z;
  z.reserve(n);
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int m = hull[e + 1].first - hull[e].first;
    double lr = (hull[e].second - hull[e + 1].second) / m;
    lr = std::clamp(lr, -330.0, 330.0);  // keep radii in double range
    const double r = std::exp(lr);
    for (int t = 0; t < m; ++t) {
      double th = 2.0 * M_PI * (t + 0.27) / m + 0.61 * static_cast<double>(e) + phase;
      if (std::fabs(std::sin(th)) < 1e-6) th += 1e-3;  // keep off the real axis
      z.push_back(Complex(r * std::cos(th), r * std::sin(th)));
    }
  }
  return z;
}

struct Eval {
  Complex p, dp;
  double bound_p, bound_dp;
};

Eval evaluate(const std::vector<double>& c, const std::vector<double>& abs_c,
              const std::vector<double>& abs_dc, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  const double az = std::abs(z);
  Complex b(c[n]), db(0.0);
  for (int k = n - 1; k >= 0; --k) {
    db = db * z + b;
    b = b * z + c[k];
  }
  double B = abs_c[n], Bd = (n >= 1) ? abs_dc[n - 1] : 0.0;
  for (int k = n - 1; k >= 0; --k) B = B * az + abs_c[k];
  for (int k = n - 2; k >= 0; --k) Bd = Bd * az + abs_dc[k];
  const double gamma = (4.0 * n + 4.0) * DBL_EPSILON;
  return {b, db, B * gamma, Bd * gamma};
}

struct SolveOutcome {
  bool ok = false;
  std::vector<RootSet::Entry> entries;
  double max_err = 0.0;
  /// Final iterates even when certification failed; seeds for the
  /// extended-precision tier.
  std::vector<Complex> approx;
  /// True when the sweeps converged (iterates settled or stopped moving);
  /// certification may still have failed on evaluation conditioning, which a
  /// restart with rotated initial guesses cannot fix.
  bool converged = false;
};

/// Snap near-real roots onto the axis, average conjugate pairs exactly
/// (the bounds absorb the moves), and enforce the final per-root bound.
bool finalize_roots(std::vector<Complex>& z, std::vector<double>& err,
                    double tol, SolveOutcome& out) {
  const int n = static_cast<int>(z.size());
  for (int i = 0; i < n; ++i) {
    if (z[i].imag() != 0.0 && std::fabs(z[i].imag()) <= err[i]) {
      err[i] += std::fabs(z[i].imag());
      z[i] = Complex(z[i].real(), 0.0);
    }
  }
  std::vector<int> ups, downs;
  for (int i = 0; i < n; ++i) {
    if (z[i].imag() > 0.0) ups.push_back(i);
    if (z[i].imag() < 0.0) downs.push_back(i);
  }
  if (ups.size() == downs.size()) {
    std::vector<char> used(downs.size(), 0);
    for (int iu : ups) {
      int best = -1;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < downs.size(); ++t) {
        if (used[t]) continue;
        const double d = std::abs(z[iu] - std::conj(z[downs[t]]));
        if (d < bd) {
          bd = d;
          best = static_cast<int>(t);
        }
      }
      if (best < 0) break;
      used[best] = 1;
      const int id = downs[best];
      const Complex w = 0.5 * (z[iu] + std::conj(z[id]));
      err[iu] += std::abs(z[iu] - w);
      err[id] += std::abs(z[id] - std::conj(w));
      z[iu] = w;
      z[id] = std::conj(w);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (err[i] > tol * std::max(1.0, std::abs(z[i]))) return false;
    out.entries.push_back({z[i], 1});
    out.max_err = std::max(out.max_err, err[i]);
  }
  return true;
}

/// One Aberth-Ehrlich run on an exact polynomial with c_0 != 0, deg >= 1.
/// Succeeds only if every root is certified within tol * max(1, |root|).
SolveOutcome solve_double(const Polynomial& p, double tol, int attempt) {
  SolveOutcome out;
  const int n = p.degree();
  std::vector<ScaledCoeff> sc(n + 1);
  long E = LONG_MIN;
  for (int k = 0; k <= n; ++k) {
    sc[k] = frexp_q(p.coeff(k));
    if (sc[k].nonzero) E = std::max(E, sc[k].exp2);
  }
  std::vector<double> c(n + 1, 0.0), abs_c(n + 1, 0.0), abs_dc;
  for (int k = 0; k <= n; ++k) {
    if (!sc[k].nonzero) continue;
    const long rel = sc[k].exp2 - E;
    if (rel < -1020) return out;  // coefficient underflows: take the exact tier
    c[k] = std::ldexp(sc[k].mant, static_cast<int>(rel));
    abs_c[k] = std::fabs(c[k]);
  }
  abs_dc.resize(n, 0.0);
  for (int k = 1; k <= n; ++k) abs_dc[k - 1] = k * abs_c[k];

  std::vector<Complex> z = initial_guesses(sc, attempt * 0.83);
  if (static_cast<int>(z.size()) != n) return out;  // hull degenerated; escalate

  const int max_sweeps = 400 + 200 * attempt;
  std::vector<char> settled(n, 0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst = 0.0;
    int done = 0;
    for (int i = 0; i < n; ++i) {
      if (settled[i]) {
        ++done;
        continue;
      }
      const Eval ev = evaluate(c, abs_c, abs_dc, z[i]);
      if (std::abs(ev.p) <= ev.bound_p) {
        settled[i] = 1;
        ++done;
        continue;
      }
      Complex newton = (ev.dp != Complex(0.0)) ? ev.p / ev.dp
                                               : Complex(1e-3, 2e-3);
      Complex s(0.0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex d = z[i] - z[j];
        if (d == Complex(0.0)) d = Complex(1e-14, 1e-14);
        s += 1.0 / d;
      }
      const Complex denom = 1.0 - newton * s;
      const Complex dz = (denom == Complex(0.0)) ? newton : newton / denom;
      z[i] -= dz;
      worst = std::max(worst, std::abs(dz) / (1.0 + std::abs(z[i])));
    }
    if (done == n || worst < 4.0 * DBL_EPSILON) {
      out.converged = true;
      break;
    }
  }
  out.approx = z;

  // A-posteriori certification: min_j |z - r_j| <= n |p(z)/p'(z)|.
  std::vector<double> err(n);
  for (int i = 0; i < n; ++i) {
    const Eval ev = evaluate(c, abs_c, abs_dc, z[i]);
    const double num = std::abs(ev.p) + ev.bound_p;
    const double den = std::max(std::abs(ev.dp) - ev.bound_dp, DBL_MIN);
    err[i] = n * num / den;
    if (!std::isfinite(err[i]) || err[i] > tol * std::max(1.0, std::abs(z[i])))
      return out;
  }
  if (!finalize_roots(z, err, tol, out)) {
    out.entries.clear();
    return out;
  }
  out.ok = true;
  return out;
}

/// Extended-precision tier: Newton-polish the (uncertified) double iterates
/// in prec-bit GMP floats and re-run the a-posteriori certification there.
/// Only reached for squarefree polynomials whose evaluation is too
/// ill-conditioned for doubles; the disk-disjointness check below turns the
/// per-root bounds into a certificate for the whole multiset.
SolveOutcome refine_mpf(const Polynomial& p, double tol,
                        const std::vector<Complex>& start, unsigned prec) {
  SolveOutcome out;
  const int n = p.degree();
  std::vector<mpf_class> c, ac, ad;
  c.reserve(n + 1);
  ac.reserve(n + 1);
  ad.reserve(n);
  for (int k = 0; k <= n; ++k) {
    c.emplace_back(p.coeff(k), prec);
    ac.emplace_back(abs(c.back()));
    if (k >= 1) ad.emplace_back(ac.back() * k);
  }

  // Rounding-floor constant: prec-bit Horner with complex steps.
  mpf_class g(10 * n + 10, prec);
  mpf_div_2exp(g.get_mpf_t(), g.get_mpf_t(), prec - 1);

  mpf_class zr(0, prec), zi(0, prec), br(0, prec), bi(0, prec), dr(0, prec),
      di(0, prec), t(0, prec), u(0, prec), az(0, prec), B(0, prec),
      Bd(0, prec), pp2(0, prec), dp2(0, prec), floor2(0, prec);

  // p, p' and the abs-value bound B at (zr, zi), by Horner.
  const auto eval = [&]() {
    az = sqrt(mpf_class(zr * zr + zi * zi, prec));
    br = c[n];
    bi = 0;
    dr = 0;
    di = 0;
    B = ac[n];
    for (int k = n - 1; k >= 0; --k) {
      t = dr * zr;
      t -= di * zi;
      t += br;
      u = dr * zi;
      u += di * zr;
      u += bi;
      dr = t;
      di = u;
      t = br * zr;
      t -= bi * zi;
      t += c[k];
      u = br * zi;
      u += bi * zr;
      br = t;
      bi = u;
      B *= az;
      B += ac[k];
    }
  };

  std::vector<mpf_class> ZR, ZI;
  ZR.reserve(n);
  ZI.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(start[i].real()) || !std::isfinite(start[i].imag()))
      return out;
    ZR.emplace_back(start[i].real(), prec);
    ZI.emplace_back(start[i].imag(), prec);
  }

  // Gauss-Seidel Aberth sweeps; the repulsion term keeps the iterates from
  // collapsing onto one root the way independent Newton polishing can.
  mpf_class sr(0, prec), si(0, prec), wr(0, prec), wi(0, prec), w2(0, prec),
      nr(0, prec), ni(0, prec), dnr(0, prec), dni(0, prec), dd(0, prec);
  std::vector<char> settled(static_cast<std::size_t>(n), 0);
  bool all_settled = false;
  for (int sweep = 0; sweep < 120 && !all_settled; ++sweep) {
    all_settled = true;
    for (int i = 0; i < n; ++i) {
      if (settled[static_cast<std::size_t>(i)]) continue;
      zr = ZR[i];
      zi = ZI[i];
      eval();
      pp2 = br * br + bi * bi;
      floor2 = g * B;
      floor2 *= floor2;
      floor2 *= 4;  // (2 g B)^2
      if (pp2 <= floor2) {
        settled[static_cast<std::size_t>(i)] = 1;
        continue;
      }
      all_settled = false;
      dp2 = dr * dr + di * di;
      if (dp2 == 0) continue;
      // newton = p/p'
      nr = br * dr;
      nr += bi * di;
      nr /= dp2;
      ni = bi * dr;
      ni -= br * di;
      ni /= dp2;
      // S = sum_{j != i} 1/(z_i - z_j)
      sr = 0;
      si = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        wr = ZR[i] - ZR[j];
        wi = ZI[i] - ZI[j];
        w2 = wr * wr + wi * wi;
        if (w2 == 0) {
          wr += 1e-14;
          w2 = wr * wr + wi * wi;
        }
        sr += wr / w2;
        si -= wi / w2;
      }
      // dz = newton / (1 - newton * S)
      dnr = 1 - (nr * sr - ni * si);
      dni = -(nr * si + ni * sr);
      dd = dnr * dnr + dni * dni;
      if (dd == 0) {
        ZR[i] -= nr;
        ZI[i] -= ni;
        continue;
      }
      t = nr * dnr;
      t += ni * dni;
      t /= dd;
      u = ni * dnr;
      u -= nr * dni;
      u /= dd;
      ZR[i] -= t;
      ZI[i] -= u;
    }
  }
  if (!all_settled) {
    if (getenv("STABLEPGF_DEBUG"))
      fprintf(stderr, "[mpf %u] sweeps exhausted without settling\n", prec);
    return out;
  }

  std::vector<Complex> z(n);
  std::vector<double> err(n);
  for (int i = 0; i < n; ++i) {
    zr = ZR[i];
    zi = ZI[i];
    // Certification at the refined point, including the derivative bound.
    eval();
    Bd = (n >= 1) ? ad[n - 1] : mpf_class(0, prec);
    for (int k = n - 2; k >= 0; --k) {
      Bd *= az;
      Bd += ad[k];
    }
    const mpf_class pabs = sqrt(mpf_class(br * br + bi * bi, prec));
    const mpf_class dpabs = sqrt(mpf_class(dr * dr + di * di, prec));
    const mpf_class den = dpabs - g * Bd;
    if (den <= 0) {
      if (getenv("STABLEPGF_DEBUG"))
        fprintf(stderr, "[mpf %u] root %d: den<=0\n", prec, i);
      return out;
    }
    const mpf_class bound = mpf_class(n, prec) * (pabs + g * B) / den;
    z[i] = Complex(zr.get_d(), zi.get_d());
    err[i] = bound.get_d() * (1.0 + 1e-9) +
             4.0 * DBL_EPSILON * (1.0 + std::abs(z[i]));
    if (!std::isfinite(err[i]) || err[i] > tol * std::max(1.0, std::abs(z[i]))) {
      if (getenv("STABLEPGF_DEBUG"))
        fprintf(stderr,
                "[mpf %u] root %d: z=(%.6g,%.6g) start=(%.6g,%.6g) err=%.3e "
                "pabs=%.3e dpabs=%.3e gB=%.3e\n",
                prec, i, z[i].real(), z[i].imag(), start[i].real(),
                start[i].imag(), err[i], pabs.get_d(), dpabs.get_d(),
                mpf_class(g * B).get_d());
      return out;
    }
  }

  // Disk disjointness: n pairwise disjoint enclosures, each containing a
  // root of a squarefree degree-n polynomial, pin down the whole multiset.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(z[i] - z[j]) <= err[i] + err[j]) {
        if (getenv("STABLEPGF_DEBUG"))
          fprintf(stderr, "[mpf %u] disks %d/%d overlap at (%.6g,%.6g)\n", prec,
                  i, j, z[i].real(), z[i].imag());
        return out;
      }
    }
  }

  if (!finalize_roots(z, err, tol, out)) {
    out.entries.clear();
    return out;
  }
  out.ok = true;
  return out;
}

double double_from_rational(const Rational& q) {
  const ScaledCoeff s = frexp_q(q);
  if (!s.nonzero) return 0.0;
  if (s.exp2 > 1020) return s.mant > 0 ? HUGE_VAL : -HUGE_VAL;
  if (s.exp2 < -1060) return 0.0;
  return std::ldexp(s.mant, static_cast<int>(s.exp2));
}

/// Exact closed forms for degrees 1 and 2 (c_0 != 0 assumed for deg 2).
void closed_form_roots(const Polynomial& p, std::vector<RootSet::Entry>& entries,
                       double& max_err) {
  const double eps8 = 8.0 * DBL_EPSILON;
  if (p.degree() == 1) {
    const double r = double_from_rational(-p.coeff(0) / p.coeff(1));
    entries.push_back({Complex(r, 0.0), 1});
    max_err = std::max(max_err, eps8 * std::max(1.0, std::fabs(r)));
    return;
  }
  const Rational &a = p.coeff(2), &b = p.coeff(1), &c0 = p.coeff(0);
  const Rational disc = b * b - a * c0 * 4;
  const double ad = double_from_rational(a), bd = double_from_rational(b);
  if (disc == 0) {
    const double r = double_from_rational(-b / (a * 2));
    entries.push_back({Complex(r, 0.0), 2});
    max_err = std::max(max_err, eps8 * std::max(1.0, std::fabs(r)));
    return;
  }
  if (disc > 0) {
    const double sd = std::sqrt(double_from_rational(disc));
    // Stable form: avoid cancellation between -b and sqrt(disc).
    const double q = (bd >= 0.0) ? -0.5 * (bd + sd) : -0.5 * (bd - sd);
    double r1, r2;
    if (q != 0.0) {
      r1 = q / ad;
      r2 = double_from_rational(c0) / q;
    } else {  // b == 0
      r1 = sd / (2.0 * ad);
      r2 = -r1;
    }
    for (double r : {std::max(r1, r2), std::min(r1, r2)}) {
      entries.push_back({Complex(r, 0.0), 1});
      max_err = std::max(max_err, eps8 * std::max(1.0, std::fabs(r)));
    }
    return;
  }
  const double re = double_from_rational(-b / (a * 2));
  const double im = std::sqrt(double_from_rational(-disc)) / (2.0 * std::fabs(ad));
  const double scale = std::max(1.0, std::hypot(re, im));
  entries.push_back({Complex(re, im), 1});
  entries.push_back({Complex(re, -im), 1});
  max_err = std::max(max_err, eps8 * scale);
}

void solve_into(const Polynomial& p, double tol,
                std::vector<RootSet::Entry>& entries, double& max_err,
                int outer_multiplicity, bool allow_exact_tier);

/// Core solver for c_0 != 0, degree >= 1.
void solve_nonzero_roots(const Polynomial& p, double tol,
                         std::vector<RootSet::Entry>& entries, double& max_err,
                         int outer_multiplicity, bool allow_exact_tier) {
  if (p.degree() <= 2) {
    std::vector<RootSet::Entry> local;
    closed_form_roots(p, local, max_err);
    for (auto& e : local) {
      if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
        throw NumericalError("root of " + poly_label(p) +
                             " is out of double range");
      e.multiplicity *= outer_multiplicity;
      entries.push_back(e);
    }
    return;
  }
  std::vector<Complex> approx;
  for (int attempt = 0; attempt < 2; ++attempt) {
    SolveOutcome so = solve_double(p, tol, attempt);
    if (so.ok) {
      for (auto& e : so.entries) {
        e.multiplicity *= outer_multiplicity;
        entries.push_back(e);
      }
      max_err = std::max(max_err, so.max_err);
      return;
    }
    if (!so.approx.empty()) approx = std::move(so.approx);
    if (attempt == 0 && allow_exact_tier) {
      // Exact tier: resolve multiple roots through Yun's decomposition and
      // solve each (squarefree) factor separately.
      auto sqf = squarefree_decomposition(p);
      if (!(sqf.size() == 1 && sqf[0].second == 1)) {
        for (const auto& [factor, mult] : sqf)
          solve_into(factor, tol, entries, max_err, outer_multiplicity * mult,
                     false);
        return;
      }
    }
    // A converged-but-uncertified run is conditioning-limited; go straight to
    // extended precision instead of retrying with rotated initial guesses.
    if (so.converged) break;
  }
  // Extended-precision tier: the double iterates are good starting points
  // but their certification is blocked by evaluation conditioning.
  if (!approx.empty()) {
    for (unsigned prec : {192u, 384u, 768u}) {
      SolveOutcome so = refine_mpf(p, tol, approx, prec);
      if (so.ok) {
        for (auto& e : so.entries) {
          e.multiplicity *= outer_multiplicity;
          entries.push_back(e);
        }
        max_err = std::max(max_err, so.max_err);
        return;
      }
    }
  }
  throw NumericalError("root finder failed to certify roots of " + poly_label(p) +
                       " at tolerance " + std::to_string(tol));
}

void solve_into(const Polynomial& p, double tol,
                std::vector<RootSet::Entry>& entries, double& max_err,
                int outer_multiplicity, bool allow_exact_tier) {
  // Strip exact zero roots.
  int v = 0;
  while (v <= p.degree() && p.coeff(v) == 0) ++v;
  Polynomial q = p;
  if (v > 0) {
    entries.push_back({Complex(0.0, 0.0), v * outer_multiplicity});
    std::vector<Rational> shifted(p.coeffs().begin() + v, p.coeffs().end());
    q = Polynomial(std::move(shifted));
  }
  if (q.degree() >= 1)
    solve_nonzero_roots(q, tol, entries, max_err, outer_multiplicity,
                        allow_exact_tier);
}

}  // namespace

RootSet roots(const Polynomial& p, double tol) {
  if (p.is_zero()) throw InputError("root set of the zero polynomial is undefined");
  if (!(tol > 0) || tol > 0.5)
    throw InputError("root tolerance must lie in (0, 0.5]");
  RootSet rs;
  if (p.degree() == 0) return rs;
  double max_err = 0.0;
  solve_into(p, tol, rs.roots, max_err, 1, true);
  rs.certified_error = max_err;
  std::sort(rs.roots.begin(), rs.roots.end(),
            [](const RootSet::Entry& a, const RootSet::Entry& b) {
              if (a.value.real() != b.value.real())
                return a.value.real() > b.value.real();
              return a.value.imag() > b.value.imag();
            });
  return rs;
}

bool is_real_rooted(const Polynomial& p, double tol) {
  if (p.is_zero()) throw InputError("real-rootedness of zero polynomial");
  if (p.degree() <= 0) return true;
  const RootSet rs = roots(p, tol);
  for (const auto& e : rs.roots)
    if (std::fabs(e.value.imag()) > tol * std::max(1.0, std::abs(e.value)))
      return false;
  return true;
}

NROutcome certify_nr(const Polynomial& p, double tol) {
  if (p.is_zero()) throw InputError("NR certificate of zero polynomial");
  NROutcome out;
  if (p.degree() <= 0) {
    out.certificate = NRCertificate{{}, std::numeric_limits<double>::infinity()};
    return out;
  }
  const RootSet rs = roots(p, tol);
  std::vector<double> sorted;
  for (const auto& e : rs.roots) {
    const double scale = std::max(1.0, std::abs(e.value));
    if (std::fabs(e.value.imag()) > tol * scale) {
      out.refutation = NRRefutation{"non-real root", e.value};
      return out;
    }
    const double r = e.value.real();
    if (r > -tol) {
      out.refutation = NRRefutation{"root is not strictly negative", e.value};
      return out;
    }
    if (e.multiplicity > 1) {
      out.refutation = NRRefutation{"multiple root", e.value};
      return out;
    }
    sorted.push_back(r);
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < sorted.size(); ++j) {
    const double gap = sorted[j] - sorted[j + 1];
    if (gap < 1e-6 * (1.0 + std::fabs(sorted[j]))) {
      out.refutation =
          NRRefutation{"roots too close to certify simplicity",
                       Complex(sorted[j + 1], 0.0)};
      return out;
    }
    min_gap = std::min(min_gap, gap);
  }
  out.certificate = NRCertificate{std::move(sorted), min_gap};
  return out;
}

double min_distance_to_one(const Polynomial& p, double tol) {
  if (p.is_zero()) throw InputError("min_distance_to_one of zero polynomial");
  if (p.degree() == 0) return std::numeric_limits<double>::infinity();
  const RootSet rs = roots(p, tol);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : rs.roots)
    best = std::min(best, std::abs(e.value - Complex(1.0, 0.0)));
  return best;
}

InterlaceCheck check_interlacing(const std::vector<NRCertificate>& parts, int k,
                                 int n, double tol) {
  if (k < 2) throw InputError("interlacing check requires k >= 2");
  if (static_cast<int>(parts.size()) != k)
    throw InputError("expected " + std::to_string(k) + " parts, got " +
                     std::to_string(parts.size()));
  std::vector<std::pair<double, int>> merged;  // (root, owning part)
  for (int i = 0; i < k; ++i)
    for (double r : parts[i].sorted_roots) merged.emplace_back(r, i);
  const int expected = std::max(n - k + 1, 0);  // k > n: all parts constant
  if (static_cast<int>(merged.size()) != expected)
    throw InputError("interlacing check: expected " + std::to_string(expected) +
                     " merged roots for degree " + std::to_string(n) + ", k = " +
                     std::to_string(k) + ", got " + std::to_string(merged.size()));
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  InterlaceCheck res;
  res.part_of.resize(merged.size());
  for (std::size_t j = 0; j < merged.size(); ++j) res.part_of[j] = merged[j].second;
  for (std::size_t j = 0; j < merged.size(); ++j) {
    const int want = static_cast<int>(j) % k;
    if (merged[j].second == want) continue;
    // Tolerate swapped near-ties.
    if (j + 1 < merged.size() &&
        std::fabs(merged[j].first - merged[j + 1].first) <=
            tol * (1.0 + std::fabs(merged[j].first)) &&
        merged[j + 1].second == want &&
        merged[j].second == static_cast<int>(j + 1) % k) {
      std::swap(merged[j], merged[j + 1]);
      std::swap(res.part_of[j], res.part_of[j + 1]);
      continue;
    }
    res.ok = false;
    res.violated_index = static_cast<int>(j);
    return res;
  }
  res.ok = true;
  res.violated_index = -1;
  return res;
}

}  // namespace stablepgf
