#include "stablepgf/cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stablepgf/errors.hpp"
#include "stablepgf/io.hpp"
#include "stablepgf/stability.hpp"
#include "stablepgf/stablearith.hpp"
#include "stablepgf/structure.hpp"

namespace stablepgf::cli {
namespace {

using io::json;

struct Global {
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::string out_path;
  std::string plot_path;
};

json with_meta(json report, const Global& g) {
  report["version"] = io::kVersion;
  report["seed"] = g.seed;
  report["tol"] = g.tol;
  return report;
}

void emit(json report, const Global& g, std::ostream& out) {
  const std::string text = io::dump_stable(with_meta(std::move(report), g)) + "\n";
  if (g.out_path.empty()) {
    out << text;
  } else {
    io::write_text_file(g.out_path, text);
  }
}

void maybe_plot(const Global& g, const std::string& svg) {
  if (!g.plot_path.empty()) io::write_text_file(g.plot_path, svg);
}

json roots_to_json(const RootSet& rs) {
  json values = json::array();
  for (const auto& e : rs.roots) {
    values.push_back(
        {{"re", e.value.real()}, {"im", e.value.imag()}, {"mult", e.multiplicity}});
  }
  return {{"certified_error", rs.certified_error}, {"values", std::move(values)}};
}

json opt_to_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json report_to_json(const CLTReport& r) {
  return {{"direction", r.direction},
          {"v_limit", opt_to_json(r.v_limit)},
          {"observed_v", opt_to_json(r.observed_v)},
          {"degenerate", r.degenerate},
          {"kolmogorov", opt_to_json(r.kolmogorov)},
          {"delta", r.delta},
          {"delta_bound", r.delta_bound},
          {"bound_quantity", opt_to_json(r.bound_quantity)},
          {"ratio", opt_to_json(r.ratio)},
          {"N", r.N},
          {"mean", r.mean},
          {"sigma", r.sigma}};
}

json rate_study_to_json(const RateStudy& st) {
  return {{"fitted_exponent", st.fitted_exponent},
          {"scales", st.scales},
          {"distances", st.distances},
          {"ratios", st.ratios},
          {"sigmas", st.sigmas}};
}

std::vector<std::string> rational_strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const Rational& q : v) out.push_back(rational_str(q));
  return out;
}

std::vector<int> one_based(const std::vector<int>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(i + 1);
  return out;
}

const char* status_name(StabilityStatus s) {
  switch (s) {
    case StabilityStatus::stable_exact:
      return "stable_exact";
    case StabilityStatus::stable_probabilistic:
      return "stable_probabilistic";
    default:
      return "unstable";
  }
}

/// A subcommand that forwards unknown flags (the globals) to the root app.
CLI::App* make_sub(CLI::App* parent, const std::string& name,
                   const std::string& desc) {
  CLI::App* sub = parent->add_subcommand(name, desc);
  sub->fallthrough(true);
  return sub;
}

CLTReport directed_report(const JointPGF& f, const std::vector<int>& direction,
                          const std::optional<RealMatrix>& A, double scale,
                          double tol) {
  const LatticeLaw law = LatticeLaw::from_pgf(project(f, direction));
  CLTReport r;
  r.direction = direction;
  r.N = law.N();
  r.mean = law.mean();
  r.sigma = law.sigma();
  const int max_a = *std::max_element(direction.begin(), direction.end());
  r.delta_bound = max_a <= 1 ? 0.0 : std::sin(M_PI / max_a);
  if (A) {
    double quad = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < direction.size(); ++i) {
      norm2 += static_cast<double>(direction[i]) * direction[i];
      for (std::size_t j = 0; j < direction.size(); ++j) {
        quad += direction[i] * (*A)[i][j] * direction[j];
      }
    }
    r.v_limit = quad / norm2;
  }
  r.observed_v = to_double(law.var_exact()) / (scale * scale);
  if (law.sigma() == 0.0 || (r.v_limit && *r.v_limit <= tol)) {
    r.degenerate = true;
    if (law.sigma() > 0.0) {
      r.kolmogorov = kolmogorov_distance(law);
    }
    return r;
  }
  const CLTReport base = report(law, tol);
  r.kolmogorov = base.kolmogorov;
  r.delta = base.delta;
  r.bound_quantity = base.bound_quantity;
  r.ratio = base.ratio;
  return r;
}

/// Univariate law as a one-dimensional pgf (zero-probability entries drop).
JointPGF law_as_pgf(const LatticeLaw& q) {
  std::vector<std::pair<std::vector<int>, Rational>> entries;
  for (int k = 0; k <= q.N(); ++k) {
    if (q.pmf()[k] > 0) entries.push_back({{k}, q.pmf()[k]});
  }
  return make_pgf(1, entries);
}

RealMatrix matrix_to_rows(const Eigen::MatrixXd& M) {
  RealMatrix rows(M.rows(), std::vector<double>(M.cols()));
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) rows[i][j] = M(i, j);
  }
  return rows;
}

int run(CLI::App& app, const std::vector<std::string>& args,
        std::function<int()>& action, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("stablepgf");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 0;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ConclusionError& e) {
    err << "conclusion violated (this is a bug, not bad input): " << e.what()
        << "\n";
    return 3;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"stablepgf: real stable probability generating functions — "
               "stability checks, Gaussian approximation, covariance "
               "structure, and stable division"};
  app.require_subcommand(1);
  app.fallthrough(true);
  app.set_version_flag("--version", io::kVersion);

  auto g = std::make_shared<Global>();
  app.add_option("--seed", g->seed, "random seed for sampled procedures");
  app.add_option("--tol", g->tol, "numerical tolerance (default 1e-9)");
  app.add_option("--out", g->out_path, "write the JSON report to this file");
  app.add_option("--plot", g->plot_path, "write an SVG plot to this file");

  std::function<int()> action;

  // ---------------------------------------------------------------- stability
  CLI::App* stability = make_sub(&app, "stability", "stability testing");
  stability->require_subcommand(1);
  {
    CLI::App* check = make_sub(stability, "check",
                               "test a pgf for real stability along random "
                               "rational lines");
    auto path = std::make_shared<std::string>();
    auto dirs = std::make_shared<int>(200);
    check->add_option("pgf", *path, "pgf JSON file")->required();
    check->add_option("--dirs", *dirs, "number of sampled lines (default 200)");
    check->callback([&action, g, path, dirs, &out]() {
      action = [g, path, dirs, &out]() {
        const JointPGF f = io::pgf_from_json(io::read_json_file(*path));
        const StabilityVerdict v = test_stability(f, *dirs, g->seed, g->tol);
        json j{{"status", status_name(v.status)}, {"trials", v.trials}};
        if (v.witness) {
          j["witness"] = {
              {"base", rational_strings(v.witness->base)},
              {"direction", rational_strings(v.witness->direction)},
              {"nonreal_root",
               {{"re", v.witness->nonreal_root.real()},
                {"im", v.witness->nonreal_root.imag()}}}};
        } else {
          j["witness"] = nullptr;
        }
        emit(std::move(j), *g, out);
        return v.status == StabilityStatus::unstable ? 1 : 0;
      };
    });
  }

  // ---------------------------------------------------------------------- pgf
  CLI::App* pgf_cmd = make_sub(&app, "pgf", "pgf transforms");
  pgf_cmd->require_subcommand(1);
  {
    CLI::App* sub = make_sub(pgf_cmd, "project",
                             "project onto <a, X> (one-dimensional pgf)");
    auto path = std::make_shared<std::string>();
    auto dir_text = std::make_shared<std::string>();
    sub->add_option("pgf", *path, "pgf JSON file")->required();
    sub->add_option("--direction", *dir_text,
                    "comma-separated nonnegative integers, e.g. 1,2")
        ->required();
    sub->callback([&action, g, path, dir_text, &out]() {
      action = [g, path, dir_text, &out]() {
        const JointPGF f = io::pgf_from_json(io::read_json_file(*path));
        const Polynomial p = project(f, io::parse_int_list(*dir_text));
        emit(io::poly_to_json(p), *g, out);
        return 0;
      };
    });
  }
  {
    CLI::App* sub = make_sub(pgf_cmd, "aggregate",
                             "sum coordinate groups (1-based group labels)");
    auto path = std::make_shared<std::string>();
    auto group_text = std::make_shared<std::string>();
    sub->add_option("pgf", *path, "pgf JSON file")->required();
    sub->add_option("--grouping", *group_text,
                    "group label per coordinate, e.g. 1,1,2")
        ->required();
    sub->callback([&action, g, path, group_text, &out]() {
      action = [g, path, group_text, &out]() {
        const JointPGF f = io::pgf_from_json(io::read_json_file(*path));
        std::vector<int> grouping = io::parse_int_list(*group_text);
        int new_dim = 0;
        for (int& v : grouping) {
          if (v < 1) throw InputError("group labels are 1-based");
          new_dim = std::max(new_dim, v--);
        }
        emit(io::pgf_to_json(aggregate(f, grouping, new_dim)), *g, out);
        return 0;
      };
    });
  }
  {
    CLI::App* sub = make_sub(pgf_cmd, "polarize",
                             "multi-affine polarization in fresh coordinates");
    auto path = std::make_shared<std::string>();
    auto levels_text = std::make_shared<std::string>();
    sub->add_option("pgf", *path, "pgf JSON file")->required();
    sub->add_option("--levels", *levels_text,
                    "copies per coordinate (default: the degree bounds)");
    sub->callback([&action, g, path, levels_text, &out]() {
      action = [g, path, levels_text, &out]() {
        const JointPGF f = io::pgf_from_json(io::read_json_file(*path));
        const std::vector<int> n = levels_text->empty()
                                       ? f.degree_bounds()
                                       : io::parse_int_list(*levels_text);
        emit(io::pgf_to_json(polarize(f, n)), *g, out);
        return 0;
      };
    });
  }
  {
    CLI::App* sub = make_sub(pgf_cmd, "smear",
                             "independent Bernoulli thinning z -> 1-a+az");
    auto path = std::make_shared<std::string>();
    auto probs_text = std::make_shared<std::string>();
    sub->add_option("pgf", *path, "pgf JSON file")->required();
    sub->add_option("--probs", *probs_text,
                    "keep-probability per coordinate, e.g. 1/2,1/3")
        ->required();
    sub->callback([&action, g, path, probs_text, &out]() {
      action = [g, path, probs_text, &out]() {
        const JointPGF f = io::pgf_from_json(io::read_json_file(*path));
        emit(io::pgf_to_json(smear(f, io::parse_rational_list(*probs_text))),
             *g, out);
        return 0;
      };
    });
  }

  // ---------------------------------------------------------------------- clt
  CLI::App* clt = make_sub(&app, "clt", "Gaussian approximation reports");
  clt->require_subcommand(1);
  {
    CLI::App* sub = make_sub(clt, "report",
                             "Kolmogorov distance report (one direction, or a "
                             "full Cramér–Wold battery)");
    auto path = std::make_shared<std::string>();
    auto dir_text = std::make_shared<std::string>();
    auto cov_path = std::make_shared<std::string>();
    auto scale = std::make_shared<double>(1.0);
    auto max_den = std::make_shared<int>(6);
    sub->add_option("pgf", *path, "pgf JSON file")->required();
    sub->add_option("--direction", *dir_text, "single projection direction");
    sub->add_option("--limit-cov", *cov_path,
                    "CSV limit covariance for degeneracy detection");
    sub->add_option("--scale", *scale, "normalizing scale s_n (default 1)");
    sub->add_option("--max-den", *max_den,
                    "battery direction component cap (default 6)");
    sub->callback([&action, g, path, dir_text, cov_path, scale, max_den, &out,
                   &err]() {
      action = [g, path, dir_text, cov_path, scale, max_den, &out, &err]() {
        const json doc = io::read_json_file(*path);
        const JointPGF f = doc.contains("dim")
                               ? io::pgf_from_json(doc)
                               : law_as_pgf(io::law_from_json(doc));
        std::optional<RealMatrix> A;
        if (!cov_path->empty()) {
          A = matrix_to_rows(io::read_matrix_csv(*cov_path));
        }
        if (!dir_text->empty() || f.dim() == 1) {
          const std::vector<int> dir = dir_text->empty()
                                           ? std::vector<int>{1}
                                           : io::parse_int_list(*dir_text);
          const CLTReport r = directed_report(f, dir, A, *scale, g->tol);
          emit(report_to_json(r), *g, out);
          if (!g->plot_path.empty()) {
            if (r.sigma > 0.0) {
              maybe_plot(*g, io::svg_cdf_overlay(LatticeLaw::from_pgf(
                                 project(f, dir))));
            } else {
              err << "note: no plot for a degenerate direction\n";
            }
          }
          return 0;
        }
        const auto reports =
            cramer_wold_battery(f, A, *scale, *max_den, g->tol);
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        emit(json{{"reports", std::move(arr)}}, *g, out);
        if (!g->plot_path.empty()) {
          err << "note: --plot applies to single-direction reports only\n";
        }
        return 0;
      };
    });
  }
  {
    CLI::App* sub = make_sub(clt, "family",
                             "rate study across a manifest of pgfs with "
                             "increasing scales");
    auto path = std::make_shared<std::string>();
    sub->add_option("manifest", *path, "manifest JSON file")->required();
    sub->callback([&action, g, path, &out]() {
      action = [g, path, &out]() {
        const std::string base_dir =
            std::filesystem::path(*path).parent_path().string();
        const io::RunManifest m =
            io::manifest_from_json(io::read_json_file(*path), base_dir);
        Global eff = *g;
        if (m.seed && eff.seed == 0) eff.seed = *m.seed;
        if (m.tol && eff.tol == kDefaultTol) eff.tol = *m.tol;
        if (m.out_path && eff.out_path.empty()) eff.out_path = *m.out_path;
        if (m.plot_path && eff.plot_path.empty()) eff.plot_path = *m.plot_path;
        if (m.direction.empty()) {
          throw InputError("manifest needs a 'direction' for the rate study");
        }
        std::vector<JointPGF> family;
        family.reserve(m.pgf_paths.size());
        for (const auto& p : m.pgf_paths) {
          family.push_back(io::pgf_from_json(io::read_json_file(p)));
        }
        const RateStudy st = rate_study(family, m.scales, m.direction, eff.tol);
        emit(rate_study_to_json(st), eff, out);
        maybe_plot(eff, io::svg_rate_trace(st));
        return 0;
      };
    });
  }

  // ---------------------------------------------------------------------- cov
  CLI::App* cov = make_sub(&app, "cov", "covariance structure analysis");
  cov->require_subcommand(1);
  {
    CLI::App* sub = make_sub(cov, "partition",
                             "split indices into a nonsingular part T and "
                             "singular components S with all-ones null vectors");
    auto path = std::make_shared<std::string>();
    sub->add_option("matrix", *path, "square CSV matrix")->required();
    sub->callback([&action, g, path, &out]() {
      action = [g, path, &out]() {
        const Eigen::MatrixXd M = io::read_matrix_csv(*path);
        const CovariancePartition part = partition(M, g->tol);
        json S = json::array();
        for (const auto& s : part.S_list) S.push_back(one_based(s));
        emit(json{{"T", one_based(part.T)},
                  {"S", std::move(S)},
                  {"null_basis", part.null_basis},
                  {"warnings", part.warnings}},
             *g, out);
        return 0;
      };
    });
  }

  // ------------------------------------------------------------------- divide
  {
    CLI::App* sub = make_sub(&app, "divide",
                             "stable division: floor(X/k), or the coin-flip "
                             "half construction");
    auto mode = std::make_shared<std::string>();
    auto path = std::make_shared<std::string>();
    auto k = std::make_shared<int>(0);
    sub->add_option("mode", *mode, "floor or half")
        ->required()
        ->check(CLI::IsMember({"floor", "half"}));
    sub->add_option("law", *path, "univariate law JSON (coeffs or dim-1 pgf)")
        ->required();
    sub->add_option("-k,--k", *k, "divisor for floor mode (>= 2)");
    sub->callback([&action, g, mode, path, k, &out, &err]() {
      action = [g, mode, path, k, &out, &err]() {
        const LatticeLaw q = io::law_from_json(io::read_json_file(*path));
        StableDivision sd = [&]() {
          if (*mode == "half") {
            if (*k != 0) err << "note: -k is ignored by 'divide half'\n";
            return half_divide(q);
          }
          if (*k < 2) {
            throw InputError("divide floor requires -k with a divisor >= 2");
          }
          return floor_divide(q, *k);
        }();
        json j{{"mode", *mode},
               {"coeffs", rational_strings(sd.law.pmf())},
               {"real_rooted", sd.real_rooted},
               {"roots", roots_to_json(sd.roots)}};
        if (*mode == "floor") j["k"] = *k;
        emit(std::move(j), *g, out);
        return 0;
      };
    });
  }

  // ---------------------------------------------------------------- decompose
  {
    CLI::App* sub = make_sub(&app, "decompose",
                             "k-section parts g_i with f(x) = sum x^i g_i(x^k), "
                             "plus the interlacing certificate for NR input");
    auto path = std::make_shared<std::string>();
    auto k = std::make_shared<int>(0);
    sub->add_option("poly", *path, "polynomial JSON file")->required();
    sub->add_option("-k,--k", *k, "section modulus (>= 2)")->required();
    sub->callback([&action, g, path, k, &out]() {
      action = [g, path, k, &out]() {
        const Polynomial f = io::poly_from_json(io::read_json_file(*path));
        const Decomposition dec = decompose(f, *k);
        json parts = json::array();
        for (const auto& p : dec.parts) parts.push_back(io::poly_to_json(p));
        json j{{"k", dec.k},
               {"source_degree", dec.source_degree},
               {"parts", std::move(parts)},
               {"section_sum", io::poly_to_json(dec.section_sum())}};
        const InterlaceOutcome outcome = verify_interlace(f, *k, g->tol);
        if (outcome.ok()) {
          json part_roots = json::array();
          for (const auto& c : outcome.certificate->part_certificates) {
            part_roots.push_back(c.sorted_roots);
          }
          j["certificate"] = {
              {"sorted_roots", outcome.certificate->sorted_roots},
              {"part_of", outcome.certificate->part_of},
              {"part_roots", std::move(part_roots)}};
          j["hypothesis_failure"] = nullptr;
        } else {
          j["certificate"] = nullptr;
          j["hypothesis_failure"] = outcome.hypothesis_failure->reason;
        }
        emit(std::move(j), *g, out);
        return 0;
      };
    });
  }

  // -------------------------------------------------------------------- probe
  CLI::App* probe = make_sub(&app, "probe", "exploratory constructions");
  probe->require_subcommand(1);
  {
    CLI::App* sub = make_sub(probe, "scale",
                             "floor(a X) for a rational ratio: reports "
                             "real-rootedness of the result (no guarantee)");
    auto path = std::make_shared<std::string>();
    auto ratio_text = std::make_shared<std::string>();
    sub->add_option("law", *path, "univariate law JSON (coeffs or dim-1 pgf)")
        ->required();
    sub->add_option("--ratio", *ratio_text, "scaling ratio p/q in (0, 1)")
        ->required();
    sub->callback([&action, g, path, ratio_text, &out]() {
      action = [g, path, ratio_text, &out]() {
        const LatticeLaw q = io::law_from_json(io::read_json_file(*path));
        const Rational a = parse_rational(*ratio_text);
        const StableDivision sd = floor_scale_probe(q, a);
        emit(json{{"ratio", rational_str(a)},
                  {"coeffs", rational_strings(sd.law.pmf())},
                  {"real_rooted", sd.real_rooted},
                  {"roots", roots_to_json(sd.roots)}},
             *g, out);
        return sd.real_rooted ? 0 : 1;
      };
    });
  }

  // ------------------------------------------------------------------- corpus
  CLI::App* corpus = make_sub(&app, "corpus", "stable pgf generators");
  corpus->require_subcommand(1);
  {
    CLI::App* sub = make_sub(corpus, "dpp",
                             "occupancy pgf of a determinantal point process");
    auto kernel_path = std::make_shared<std::string>();
    auto blocks_text = std::make_shared<std::string>();
    sub->add_option("--kernel", *kernel_path,
                    "CSV of complex entries written as re+imi")
        ->required();
    sub->add_option("--blocks", *blocks_text,
                    "1-based blocks, e.g. \"1;2,3\" (default: singletons)");
    sub->callback([&action, g, kernel_path, blocks_text, &out]() {
      action = [g, kernel_path, blocks_text, &out]() {
        DPPKernel kernel;
        kernel.K = io::read_kernel_csv(*kernel_path);
        if (blocks_text->empty()) {
          for (std::size_t i = 0; i < kernel.K.size(); ++i) {
            kernel.blocks.push_back({static_cast<int>(i)});
          }
        } else {
          kernel.blocks = io::parse_blocks(*blocks_text);
        }
        emit(io::pgf_to_json(dpp_pgf(kernel)), *g, out);
        return 0;
      };
    });
  }
  {
    CLI::App* sub = make_sub(corpus, "affine",
                             "normalized product of nonnegative affine forms");
    auto rows_path = std::make_shared<std::string>();
    auto dim = std::make_shared<int>(0);
    sub->add_option("--rows", *rows_path,
                    "CSV with rows (c_0, c_1, ..., c_d)")
        ->required();
    sub->add_option("--dim", *dim, "number of coordinates d")->required();
    sub->callback([&action, g, rows_path, dim, &out]() {
      action = [g, rows_path, dim, &out]() {
        emit(io::pgf_to_json(
                 affine_product(io::read_rational_csv(*rows_path), *dim)),
             *g, out);
        return 0;
      };
    });
  }
  {
    CLI::App* sub = make_sub(corpus, "nr",
                             "random law with simple strictly negative roots");
    auto n = std::make_shared<int>(0);
    auto range_text = std::make_shared<std::string>("100");
    sub->add_option("-n,--degree", *n, "degree (number of roots)")->required();
    sub->add_option("--range", *range_text,
                    "roots sampled inside (-range, -1/100); default 100");
    sub->callback([&action, g, n, range_text, &out]() {
      action = [g, n, range_text, &out]() {
        const LatticeLaw law =
            random_nr_law(*n, g->seed, parse_rational(*range_text));
        emit(io::law_to_json(law), *g, out);
        return 0;
      };
    });
  }
  {
    CLI::App* sub = make_sub(corpus, "power",
                             "family of exact powers base^n");
    auto base_path = std::make_shared<std::string>();
    auto exps_text = std::make_shared<std::string>();
    auto cap = std::make_shared<std::size_t>(500000);
    sub->add_option("--base", *base_path, "base pgf JSON file")->required();
    sub->add_option("--exponents", *exps_text, "e.g. 1,2,4,8")->required();
    sub->add_option("--cap", *cap, "support cap in terms (default 500000)");
    sub->callback([&action, g, base_path, exps_text, cap, &out]() {
      action = [g, base_path, exps_text, cap, &out]() {
        const JointPGF base = io::pgf_from_json(io::read_json_file(*base_path));
        const auto family =
            power_family(base, io::parse_int_list(*exps_text), *cap);
        json arr = json::array();
        for (const auto& f : family) arr.push_back(io::pgf_to_json(f));
        emit(json{{"family", std::move(arr)}}, *g, out);
        return 0;
      };
    });
  }

  return run(app, args, action, out, err);
}

}  // namespace stablepgf::cli
