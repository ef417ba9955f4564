#include "stablepgf/stablearith.hpp"

#include <sstream>

#include "stablepgf/errors.hpp"

namespace stablepgf {

namespace {

Rational half() {
  return Rational(1, 2);
}

void require_real_rooted_input(const Polynomial& f, const char* op) {
  if (f.degree() >= 1 && !real_rooted_exact(f)) {
    std::ostringstream os;
    os << op << ": input pgf is not real-rooted (univariate stability is the "
          "hypothesis of this construction)";
    throw InputError(os.str());
  }
}

}  // namespace

Polynomial Decomposition::section_sum() const {
  Polynomial h;
  for (const auto& g : parts) h = h + g;
  return h;
}

Decomposition decompose(const Polynomial& f, int k) {
  if (k < 2) throw InputError("decompose: modulus k must be at least 2");
  const int n = f.degree();
  if (n < 1) throw InputError("decompose: polynomial must have degree >= 1");
  Decomposition d;
  d.k = k;
  d.source_degree = n;
  d.parts.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    std::vector<Rational> c;
    for (int j = 0; k * j + i <= n; ++j) c.push_back(f.coeff(k * j + i));
    d.parts.emplace_back(std::move(c));
  }
  return d;
}

InterlaceOutcome verify_interlace(const Polynomial& f, int k, double tol) {
  return verify_interlace(f, k, tol, certify_nr(f, tol));
}

InterlaceOutcome verify_interlace(const Polynomial& f, int k, double tol,
                                  const NROutcome& f_outcome) {
  if (k < 2) throw InputError("verify_interlace: modulus k must be at least 2");
  if (f.degree() < 1) {
    throw InputError("verify_interlace: polynomial must have degree >= 1");
  }

  InterlaceOutcome out;
  if (!f_outcome.ok()) {
    out.hypothesis_failure = f_outcome.refutation;
    return out;
  }

  InterlaceCertificate cert;
  cert.decomposition = decompose(f, k);
  for (int i = 0; i < k; ++i) {
    const Polynomial& g = cert.decomposition.parts[i];
    if (g.degree() < 1) {
      cert.part_certificates.emplace_back();
      continue;
    }
    NROutcome part = certify_nr(g, tol);
    if (!part.ok()) {
      std::ostringstream os;
      os << "verify_interlace: section part g_" << i << " of the NR input "
         << "failed its own NR certificate (" << part.refutation->reason
         << "); this contradicts the interlacing theorem";
      throw ConclusionError(os.str());
    }
    cert.part_certificates.push_back(std::move(*part.certificate));
  }

  const InterlaceCheck chk = check_interlacing(
      cert.part_certificates, k, cert.decomposition.source_degree, tol);
  if (!chk.ok) {
    std::ostringstream os;
    os << "verify_interlace: merged root at position " << chk.violated_index
       << " belongs to part " << chk.part_of[chk.violated_index]
       << " instead of " << (chk.violated_index % k)
       << "; this contradicts the interlacing theorem";
    throw ConclusionError(os.str());
  }

  // Reconstruct the merged decreasing order from the validated assignment:
  // position j consumes the next unread root of part part_of[j].
  std::vector<std::size_t> next(static_cast<std::size_t>(k), 0);
  for (int owner : chk.part_of) {
    const auto& list = cert.part_certificates[owner].sorted_roots;
    cert.sorted_roots.push_back(list[next[owner]++]);
  }
  cert.part_of = chk.part_of;
  out.certificate = std::move(cert);
  return out;
}

namespace {

StableDivision half_divide_impl(const LatticeLaw& q, bool check_input) {
  const Polynomial f = q.pgf();
  if (check_input) require_real_rooted_input(f, "half_divide");

  const int N = q.N();
  const auto& p = q.pmf();
  auto at = [&](int i) -> Rational {
    return (i >= 0 && i <= N) ? p[static_cast<std::size_t>(i)] : Rational(0);
  };
  std::vector<Rational> a(static_cast<std::size_t>((N + 1) / 2) + 1, Rational(0));
  for (int j = 0; j <= (N + 1) / 2; ++j) {
    a[static_cast<std::size_t>(j)] =
        half() * at(2 * j + 1) + at(2 * j) + half() * at(2 * j - 1);
  }

  StableDivision out{LatticeLaw(std::move(a)), Polynomial(), RootSet{}, false};
  out.pgf = out.law.pgf();

  // Exact cross-check: the halved pgf is the g_1 part of (1/2)(1+x)^2 f(x).
  const Polynomial window({half(), Rational(1), half()});
  const Decomposition dg = decompose(multiply(window, f), 2);
  if (!(dg.parts[1] == out.pgf)) {
    throw ConclusionError(
        "half_divide: the pmf formula and the section construction disagree");
  }

  out.roots = roots(out.pgf);  // empty for degree 0
  out.real_rooted =
      out.pgf.degree() < 1 || real_rooted_exact(out.pgf, out.roots);
  if (!out.real_rooted) {
    throw ConclusionError(
        "half_divide: output pgf of a real-rooted law is not real-rooted");
  }
  return out;
}

StableDivision floor_divide_impl(const LatticeLaw& q, int k, bool check_input) {
  if (k < 2) throw InputError("floor_divide: k must be at least 2");
  const Polynomial f = q.pgf();
  if (check_input) require_real_rooted_input(f, "floor_divide");

  const int N = q.N();
  const auto& p = q.pmf();
  std::vector<Rational> b(static_cast<std::size_t>(N / k) + 1, Rational(0));
  for (int i = 0; i <= N; ++i) {
    b[static_cast<std::size_t>(i / k)] += p[static_cast<std::size_t>(i)];
  }

  StableDivision out{LatticeLaw(std::move(b)), Polynomial(), RootSet{}, false};
  out.pgf = out.law.pgf();

  // Exact cross-check against h(y) = sum_i g_i(y).
  if (f.degree() >= 1) {
    const Polynomial h = decompose(f, k).section_sum();
    if (!(h == out.pgf)) {
      throw ConclusionError(
          "floor_divide: block sums and the section sum disagree");
    }
  }

  out.roots = roots(out.pgf);  // empty for degree 0
  out.real_rooted =
      out.pgf.degree() < 1 || real_rooted_exact(out.pgf, out.roots);
  if (!out.real_rooted) {
    throw ConclusionError(
        "floor_divide: output pgf of a real-rooted law is not real-rooted");
  }
  return out;
}

}  // namespace

StableDivision half_divide(const LatticeLaw& q) {
  return half_divide_impl(q, true);
}

StableDivision half_divide(const LatticeLaw& q, assume_real_rooted_t) {
  return half_divide_impl(q, false);
}

StableDivision floor_divide(const LatticeLaw& q, int k) {
  return floor_divide_impl(q, k, true);
}

StableDivision floor_divide(const LatticeLaw& q, int k, assume_real_rooted_t) {
  return floor_divide_impl(q, k, false);
}

StableDivision floor_scale_probe(const LatticeLaw& q, const Rational& a) {
  if (!(a > 0) || !(a < 1)) {
    throw InputError("floor_scale_probe: ratio must satisfy 0 < a < 1");
  }
  const Polynomial f = q.pgf();
  require_real_rooted_input(f, "floor_scale_probe");

  const int N = q.N();
  const auto& p = q.pmf();
  const Integer num = a.get_num();
  const Integer den = a.get_den();
  std::vector<Rational> b;
  for (int x = 0; x <= N; ++x) {
    Integer z;
    mpz_fdiv_q(z.get_mpz_t(), Integer(num * x).get_mpz_t(), den.get_mpz_t());
    const long zi = z.get_si();
    // 0 <= a x - z < 1 by construction of the floor; anything else is a bug.
    const Rational ax = a * x;
    if (!(Rational(z) <= ax) || !(ax < Rational(z) + 1)) {
      throw ConclusionError("floor_scale_probe: floor identity violated");
    }
    if (static_cast<std::size_t>(zi) >= b.size()) {
      b.resize(static_cast<std::size_t>(zi) + 1, Rational(0));
    }
    b[static_cast<std::size_t>(zi)] += p[static_cast<std::size_t>(x)];
  }

  StableDivision out{LatticeLaw(std::move(b)), Polynomial(), RootSet{}, false};
  out.pgf = out.law.pgf();
  out.roots = roots(out.pgf);
  out.real_rooted =
      out.pgf.degree() < 1 || real_rooted_exact(out.pgf, out.roots);
  return out;
}

}  // namespace stablepgf
