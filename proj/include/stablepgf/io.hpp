#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stablepgf/clt.hpp"
#include "stablepgf/corpus.hpp"
#include "stablepgf/pgf.hpp"

namespace stablepgf::io {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Deterministic serialization: object keys sorted, strings escaped as by
/// nlohmann, floats printed with %.12g (12 significant digits), two-space
/// indentation. Identical values produce identical bytes.
std::string dump_stable(const json& j, int indent = 2);

/// pgf JSON form: {"dim": d, "terms": [{"exp": [r1,...,rd], "p": "num/den"},
/// ...]} with terms sorted lexicographically by exponent.
json pgf_to_json(const JointPGF& f);
JointPGF pgf_from_json(const json& j);

/// Polynomial JSON form: {"coeffs": ["num/den", ...]}, lowest degree first.
json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const json& j);

json law_to_json(const LatticeLaw& q);
/// Accepts {"coeffs": [...]} (pmf = pgf coefficients) or a one-dimensional
/// pgf object.
LatticeLaw law_from_json(const json& j);

/// Parse a JSON document from disk; parse failures become InputError.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Plain CSV square matrix of real numbers; cells may be rational or
/// decimal literals. Blank lines and lines starting with '#' are skipped.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// CSV of exact rational cells (for affine_product rows).
std::vector<std::vector<Rational>> read_rational_csv(const std::string& path);

/// Kernel CSV: rows of complex cells written as "re+imi" (e.g. "1/2+1/4i",
/// "0.5-0.25i", "3/4", "-i").
std::vector<std::vector<QComplex>> read_kernel_csv(const std::string& path);
QComplex parse_qcomplex(const std::string& text);

/// "1;2,3" -> {{0}, {1,2}}: semicolon-separated blocks of comma-separated
/// 1-based indices, returned 0-based.
std::vector<std::vector<int>> parse_blocks(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<Rational> parse_rational_list(const std::string& text);

/// Batch description for `clt family`: pgf files with their normalizing
/// scales (strictly increasing, at least one entry), a projection
/// direction, and optional defaults for seed/tol/output paths.
struct RunManifest {
  std::vector<std::string> pgf_paths;
  std::vector<double> scales;
  std::vector<int> direction;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> out_path;
  std::optional<std::string> plot_path;
};

/// Reads a manifest; relative pgf paths are resolved against base_dir.
RunManifest manifest_from_json(const json& j, const std::string& base_dir);

/// CDF overlay plot: normalized step CDF of the law against the standard
/// Gaussian. Rejects degenerate laws.
std::string svg_cdf_overlay(const LatticeLaw& q);

/// log-log rate trace: Kolmogorov distance against scale, with the fitted
/// power law drawn through the point cloud.
std::string svg_rate_trace(const RateStudy& study);

}  // namespace stablepgf::io
