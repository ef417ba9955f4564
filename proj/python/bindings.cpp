// Python bindings for the stablepgf core. Exact rationals cross the
// boundary as strings ("3/4", "1", "-2/5"); univariate laws and pgfs as
// lists of coefficient strings (lowest degree first); joint pgfs as dicts
// mapping exponent tuples to probability strings. Floats appear only where
// the C++ API itself is numeric (roots, distances, verdict metadata).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablepgf/clt.hpp"
#include "stablepgf/corpus.hpp"
#include "stablepgf/errors.hpp"
#include "stablepgf/pgf.hpp"
#include "stablepgf/poly.hpp"
#include "stablepgf/stability.hpp"
#include "stablepgf/stablearith.hpp"
#include "stablepgf/structure.hpp"

namespace py = pybind11;

namespace {

using namespace stablepgf;

std::vector<Rational> rationals_from(const std::vector<std::string>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

std::vector<std::string> strings_from(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(rational_str(q));
  return out;
}

LatticeLaw law_from(const std::vector<std::string>& pmf) {
  return LatticeLaw(rationals_from(pmf));
}

JointPGF pgf_from(const py::dict& terms, int dim) {
  std::vector<std::pair<std::vector<int>, Rational>> entries;
  entries.reserve(terms.size());
  for (const auto& item : terms)
    entries.emplace_back(item.first.cast<std::vector<int>>(),
                         parse_rational(item.second.cast<std::string>()));
  return make_pgf(dim, entries);
}

py::dict pgf_to(const JointPGF& f) {
  py::dict d;
  for (const auto& [e, p] : f.terms()) {
    py::tuple key(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) key[i] = e[i];
    d[key] = rational_str(p);
  }
  return d;
}

py::dict roots_to(const RootSet& rs) {
  py::list values;
  for (const auto& r : rs.roots) {
    py::dict v;
    v["re"] = r.value.real();
    v["im"] = r.value.imag();
    v["mult"] = r.multiplicity;
    values.append(v);
  }
  py::dict d;
  d["certified_error"] = rs.certified_error;
  d["values"] = values;
  return d;
}

py::dict division_to(const StableDivision& sd) {
  py::dict d;
  d["pmf"] = strings_from(sd.law.pmf());
  d["real_rooted"] = sd.real_rooted;
  d["roots"] = roots_to(sd.roots);
  d["mean"] = rational_str(sd.law.mean_exact());
  d["var"] = rational_str(sd.law.var_exact());
  return d;
}

py::dict clt_report_to(const CLTReport& rep) {
  py::dict d;
  d["direction"] = rep.direction;
  d["degenerate"] = rep.degenerate;
  if (rep.v_limit) d["v_limit"] = *rep.v_limit;
  if (rep.observed_v) d["observed_v"] = *rep.observed_v;
  if (rep.kolmogorov) d["kolmogorov"] = *rep.kolmogorov;
  d["delta"] = rep.delta;
  d["delta_bound"] = rep.delta_bound;
  if (rep.bound_quantity) d["bound_quantity"] = *rep.bound_quantity;
  if (rep.ratio) d["ratio"] = *rep.ratio;
  d["N"] = rep.N;
  d["mean"] = rep.mean;
  d["sigma"] = rep.sigma;
  return d;
}

Eigen::MatrixXd matrix_from(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw InputError("matrix rows must all have the same length");
    for (Eigen::Index j = 0; j < n; ++j)
      M(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return M;
}

}  // namespace

PYBIND11_MODULE(stablepgf, m) {
  m.doc() =
      "Stable probability generating functions: construction, division, "
      "interlacing certificates, Gaussian approximation, and covariance "
      "structure. Rationals are strings, joint pgfs are "
      "{exponent_tuple: probability} dicts.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_RuntimeError);
  py::register_exception<ConclusionError>(m, "ConclusionError",
                                          PyExc_RuntimeError);

  // --- univariate laws and stable division -------------------------------

  m.def(
      "random_nr_law",
      [](int n, std::uint64_t seed) {
        return strings_from(random_nr_law(n, seed).pmf());
      },
      py::arg("n"), py::arg("seed"),
      "pmf of a random law whose pgf has simple strictly negative roots.");

  m.def(
      "certify_nr",
      [](const std::vector<std::string>& coeffs) {
        const NROutcome out = certify_nr(Polynomial(rationals_from(coeffs)));
        py::dict d;
        d["ok"] = out.ok();
        if (out.certificate) {
          d["sorted_roots"] = out.certificate->sorted_roots;
          d["min_gap"] = out.certificate->min_gap;
        }
        if (out.refutation) d["reason"] = out.refutation->reason;
        return d;
      },
      py::arg("coeffs"),
      "Certify that a polynomial has simple, strictly negative real roots.");

  m.def(
      "verify_interlace",
      [](const std::vector<std::string>& coeffs, int k) {
        const InterlaceOutcome out =
            verify_interlace(Polynomial(rationals_from(coeffs)), k);
        py::dict d;
        d["ok"] = out.ok();
        if (out.certificate) {
          d["sorted_roots"] = out.certificate->sorted_roots;
          d["part_of"] = out.certificate->part_of;
        }
        if (out.hypothesis_failure) d["reason"] = out.hypothesis_failure->reason;
        return d;
      },
      py::arg("coeffs"), py::arg("k"),
      "Certify the cyclic interlacing of the k-section parts of an NR "
      "polynomial.");

  m.def(
      "half_divide",
      [](const std::vector<std::string>& pmf) {
        return division_to(half_divide(law_from(pmf)));
      },
      py::arg("pmf"), "Law of floor(X/2)-or-ceil(X/2) by a fair coin.");

  m.def(
      "floor_divide",
      [](const std::vector<std::string>& pmf, int k) {
        return division_to(floor_divide(law_from(pmf), k));
      },
      py::arg("pmf"), py::arg("k"), "Law of floor(X/k), k >= 2.");

  m.def(
      "floor_scale_probe",
      [](const std::vector<std::string>& pmf, const std::string& ratio) {
        return division_to(floor_scale_probe(law_from(pmf), parse_rational(ratio)));
      },
      py::arg("pmf"), py::arg("ratio"),
      "Law of floor(a X) for rational 0 < a <= 1; reports real-rootedness "
      "of the result with no stability guarantee.");

  // --- joint pgfs and transforms ------------------------------------------

  m.def(
      "project",
      [](const py::dict& terms, int dim, const std::vector<int>& a) {
        return strings_from(project(pgf_from(terms, dim), a).coeffs());
      },
      py::arg("terms"), py::arg("dim"), py::arg("a"),
      "Coefficients of the one-dimensional projection f(z^a_1, ..., z^a_d).");

  m.def(
      "aggregate",
      [](const py::dict& terms, int dim, const std::vector<int>& grouping,
         int new_dim) {
        return pgf_to(aggregate(pgf_from(terms, dim), grouping, new_dim));
      },
      py::arg("terms"), py::arg("dim"), py::arg("grouping"), py::arg("new_dim"),
      "Group coordinates and sum them.");

  m.def(
      "polarize",
      [](const py::dict& terms, int dim, const std::vector<int>& n) {
        return pgf_to(polarize(pgf_from(terms, dim), n));
      },
      py::arg("terms"), py::arg("dim"), py::arg("n"),
      "Multiaffine polarization in sum(n_j) binary coordinates.");

  m.def(
      "smear",
      [](const py::dict& terms, int dim, const std::vector<std::string>& a) {
        return pgf_to(smear(pgf_from(terms, dim), rationals_from(a)));
      },
      py::arg("terms"), py::arg("dim"), py::arg("a"),
      "Independent thinning z_j := 1 - a_j + a_j z_j, exactly.");

  m.def(
      "marginal",
      [](const py::dict& terms, int dim, const std::vector<int>& keep) {
        return pgf_to(marginal(pgf_from(terms, dim), keep));
      },
      py::arg("terms"), py::arg("dim"), py::arg("keep"),
      "Keep the listed coordinates, marginalize the rest.");

  m.def(
      "pgf_product",
      [](const py::dict& f, const py::dict& g, int dim) {
        return pgf_to(pgf_product(pgf_from(f, dim), pgf_from(g, dim)));
      },
      py::arg("f"), py::arg("g"), py::arg("dim"),
      "pgf of the sum of independent vectors.");

  m.def(
      "mean_cov",
      [](const py::dict& terms, int dim) {
        const MomentSummary mc = mean_cov(pgf_from(terms, dim));
        py::dict d;
        d["mean"] = strings_from(mc.mean);
        py::list cov;
        for (const auto& row : mc.cov) cov.append(strings_from(row));
        d["cov"] = cov;
        return d;
      },
      py::arg("terms"), py::arg("dim"),
      "Exact mean vector and covariance matrix, as rational strings.");

  // --- stability ------------------------------------------------------------

  m.def(
      "test_stability",
      [](const py::dict& terms, int dim, int n_dirs, std::uint64_t seed) {
        const StabilityVerdict v = test_stability(pgf_from(terms, dim), n_dirs, seed);
        py::dict d;
        switch (v.status) {
          case StabilityStatus::stable_exact:
            d["status"] = "stable_exact";
            break;
          case StabilityStatus::stable_probabilistic:
            d["status"] = "stable_probabilistic";
            break;
          case StabilityStatus::unstable:
            d["status"] = "unstable";
            break;
        }
        d["trials"] = v.trials;
        if (v.witness) {
          py::dict w;
          w["base"] = strings_from(v.witness->base);
          w["direction"] = strings_from(v.witness->direction);
          w["nonreal_root"] = py::make_tuple(v.witness->nonreal_root.real(),
                                             v.witness->nonreal_root.imag());
          d["witness"] = w;
        }
        return d;
      },
      py::arg("terms"), py::arg("dim"), py::arg("n_dirs") = 200,
      py::arg("seed") = 0,
      "Randomized line-restriction stability test; refutations carry an "
      "exact witness.");

  m.def(
      "zero_free_disk_check",
      [](const py::dict& terms, int dim, const std::vector<int>& a) {
        const DiskCheck c = zero_free_disk_check(pgf_from(terms, dim), a);
        py::dict d;
        d["delta_bound"] = c.delta_bound;
        d["observed_gap"] = c.observed_gap;
        d["pass"] = c.pass;
        return d;
      },
      py::arg("terms"), py::arg("dim"), py::arg("a"),
      "Roots of the projection stay at distance >= sin(pi / max_j a_j) "
      "from 1.");

  // --- Gaussian approximation ------------------------------------------------

  m.def(
      "clt_report",
      [](const std::vector<std::string>& pmf) {
        return clt_report_to(report(law_from(pmf)));
      },
      py::arg("pmf"),
      "Kolmogorov distance to the Gaussian, with the N^{1/3}/sigma bound "
      "quantities.");

  m.def(
      "cramer_wold_battery",
      [](const py::dict& terms, int dim,
         const std::optional<std::vector<std::vector<double>>>& A, double scale,
         int max_den) {
        std::optional<RealMatrix> a_opt;
        if (A) a_opt = *A;
        py::list out;
        for (const auto& rep :
             cramer_wold_battery(pgf_from(terms, dim), a_opt, scale, max_den))
          out.append(clt_report_to(rep));
        return out;
      },
      py::arg("terms"), py::arg("dim"), py::arg("A") = py::none(),
      py::arg("scale") = 1.0, py::arg("max_den") = 6,
      "One Gaussian-approximation report per coprime direction.");

  m.def(
      "rate_study",
      [](const std::vector<py::dict>& family, int dim,
         const std::vector<double>& scales, const std::vector<int>& direction) {
        std::vector<JointPGF> fam;
        fam.reserve(family.size());
        for (const auto& t : family) fam.push_back(pgf_from(t, dim));
        const RateStudy st = rate_study(fam, scales, direction);
        py::dict d;
        d["fitted_exponent"] = st.fitted_exponent;
        d["scales"] = st.scales;
        d["distances"] = st.distances;
        d["ratios"] = st.ratios;
        d["sigmas"] = st.sigmas;
        return d;
      },
      py::arg("family"), py::arg("dim"), py::arg("scales"), py::arg("direction"),
      "Kolmogorov-distance decay along a family of pgfs.");

  m.def("coprime_directions", &coprime_directions, py::arg("dim"),
        py::arg("max_component"),
        "All coprime positive integer directions, lexicographic.");

  // --- covariance structure ---------------------------------------------------

  m.def(
      "check_hypotheses",
      [](const std::vector<std::vector<double>>& M) {
        const HypothesisCheck c = check_hypotheses(matrix_from(M));
        py::dict d;
        d["pass"] = c.pass;
        d["violations"] = c.violations;
        return d;
      },
      py::arg("M"),
      "Diagonal >= 0, off-diagonal <= 0, row sums >= 0 (within tolerance).");

  m.def(
      "partition",
      [](const std::vector<std::vector<double>>& M) {
        const CovariancePartition p = partition(matrix_from(M));
        py::dict d;
        d["T"] = p.T;
        d["S_list"] = p.S_list;
        d["null_basis"] = p.null_basis;
        d["warnings"] = p.warnings;
        return d;
      },
      py::arg("M"),
      "Split indices into a nonsingular part T and singular components "
      "S_alpha with all-ones null vectors.");

  m.def(
      "singular_directions",
      [](const std::vector<std::vector<double>>& M) {
        return singular_directions(matrix_from(M));
      },
      py::arg("M"),
      "0/1 indicator vectors spanning the null space of a legal limit "
      "covariance.");

  // --- determinantal corpus -----------------------------------------------------

  m.def(
      "dpp_pgf",
      [](const std::vector<std::vector<std::string>>& k_re,
         const std::vector<std::vector<std::string>>& k_im,
         const std::vector<std::vector<int>>& blocks) {
        DPPKernel ker;
        const std::size_t mu = k_re.size();
        if (k_im.size() != mu) throw InputError("k_re and k_im sizes differ");
        ker.K.assign(mu, {});
        for (std::size_t i = 0; i < mu; ++i) {
          if (k_re[i].size() != mu || k_im[i].size() != mu)
            throw InputError("kernel must be square");
          for (std::size_t j = 0; j < mu; ++j)
            ker.K[i].push_back(
                {parse_rational(k_re[i][j]), parse_rational(k_im[i][j])});
        }
        ker.blocks = blocks;
        return pgf_to(dpp_pgf(ker));
      },
      py::arg("k_re"), py::arg("k_im"), py::arg("blocks"),
      "Exact block-occupancy pgf of the determinantal point process with "
      "Hermitian kernel K (entries as rational strings, re/im split).");
}
