#include "stablepgf/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stablepgf/errors.hpp"

namespace stablepgf::io {
namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void dump_rec(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // keys sorted by map
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_rec(item, out, indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::string:
      out += j.dump();
      return;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

/// Non-blank, non-comment lines of a text file.
std::vector<std::string> data_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    lines.push_back(t);
  }
  return lines;
}

int parse_index(const std::string& text, const char* what) {
  const std::string t = trim(text);
  try {
    std::size_t pos = 0;
    const int v = std::stoi(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("malformed ") + what + ": '" + t + "'");
  }
}

}  // namespace

std::string dump_stable(const json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  return out;
}

json pgf_to_json(const JointPGF& f) {
  json terms = json::array();
  for (const auto& [exp, p] : f.terms()) {  // std::map: lexicographic order
    terms.push_back({{"exp", exp}, {"p", rational_str(p)}});
  }
  return {{"dim", f.dim()}, {"terms", std::move(terms)}};
}

JointPGF pgf_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms")) {
    throw InputError("pgf JSON must be an object with 'dim' and 'terms'");
  }
  if (!j["dim"].is_number_integer()) {
    throw InputError("pgf JSON: 'dim' must be an integer");
  }
  const int dim = j["dim"].get<int>();
  std::vector<std::pair<std::vector<int>, Rational>> entries;
  for (const auto& term : j["terms"]) {
    if (!term.is_object() || !term.contains("exp") || !term.contains("p")) {
      throw InputError("pgf JSON: each term needs 'exp' and 'p'");
    }
    std::vector<int> exp;
    for (const auto& e : term["exp"]) {
      if (!e.is_number_integer()) {
        throw InputError("pgf JSON: exponents must be integers");
      }
      exp.push_back(e.get<int>());
    }
    entries.emplace_back(std::move(exp),
                         parse_rational(term["p"].get<std::string>()));
  }
  return make_pgf(dim, entries);
}

json poly_to_json(const Polynomial& p) {
  json coeffs = json::array();
  for (const Rational& c : p.coeffs()) coeffs.push_back(rational_str(c));
  return {{"coeffs", std::move(coeffs)}};
}

Polynomial poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw InputError("polynomial JSON must be an object with a 'coeffs' array");
  }
  std::vector<Rational> coeffs;
  for (const auto& c : j["coeffs"]) {
    if (c.is_string()) {
      coeffs.push_back(parse_rational(c.get<std::string>()));
    } else if (c.is_number()) {
      coeffs.push_back(parse_rational(c.dump()));
    } else {
      throw InputError("polynomial JSON: coefficients must be strings or numbers");
    }
  }
  return Polynomial(std::move(coeffs));
}

json law_to_json(const LatticeLaw& q) {
  json coeffs = json::array();
  for (const Rational& p : q.pmf()) coeffs.push_back(rational_str(p));
  return {{"coeffs", std::move(coeffs)}};
}

LatticeLaw law_from_json(const json& j) {
  if (j.is_object() && j.contains("coeffs")) {
    return LatticeLaw(poly_from_json(j).coeffs());
  }
  if (j.is_object() && j.contains("dim")) {
    const JointPGF f = pgf_from_json(j);
    if (f.dim() != 1) {
      throw InputError("expected a univariate law, got a pgf of dimension " +
                       std::to_string(f.dim()));
    }
    return LatticeLaw::from_pgf(project(f, {1}));
  }
  throw InputError("law JSON must carry 'coeffs' or be a univariate pgf");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open file for writing: " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  const auto lines = data_lines(path);
  if (lines.empty()) throw InputError("empty matrix file: " + path);
  const int n = static_cast<int>(lines.size());
  Eigen::MatrixXd M(n, 0);
  for (int i = 0; i < n; ++i) {
    const auto cells = split(lines[i], ',');
    if (i == 0) {
      M.resize(n, static_cast<int>(cells.size()));
    } else if (static_cast<int>(cells.size()) != M.cols()) {
      throw InputError("ragged CSV row " + std::to_string(i + 1) + " in " +
                       path);
    }
    for (int k = 0; k < M.cols(); ++k) {
      M(i, k) = to_double(parse_rational(trim(cells[k])));
    }
  }
  return M;
}

std::vector<std::vector<Rational>> read_rational_csv(const std::string& path) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& line : data_lines(path)) {
    std::vector<Rational> row;
    for (const auto& cell : split(line, ',')) {
      row.push_back(parse_rational(trim(cell)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

QComplex parse_qcomplex(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw InputError("empty complex literal");
  if (t.back() != 'i' && t.back() != 'I') {
    return QComplex(parse_rational(t), Rational(0));
  }
  const std::string body = t.substr(0, t.size() - 1);
  // Split "re+im" at the last sign that is not an exponent sign and not
  // the leading sign of the real part.
  std::size_t cut = std::string::npos;
  for (std::size_t k = 1; k < body.size(); ++k) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
        body[k - 1] != 'E') {
      cut = k;
    }
  }
  auto imag_part = [](const std::string& s) -> Rational {
    if (s.empty() || s == "+") return Rational(1);
    if (s == "-") return Rational(-1);
    return parse_rational(s[0] == '+' ? s.substr(1) : s);
  };
  if (cut == std::string::npos) {
    return QComplex(Rational(0), imag_part(body));
  }
  return QComplex(parse_rational(body.substr(0, cut)),
                  imag_part(body.substr(cut)));
}

std::vector<std::vector<QComplex>> read_kernel_csv(const std::string& path) {
  std::vector<std::vector<QComplex>> rows;
  for (const auto& line : data_lines(path)) {
    std::vector<QComplex> row;
    for (const auto& cell : split(line, ',')) {
      row.push_back(parse_qcomplex(cell));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("empty kernel file: " + path);
  return rows;
}

std::vector<std::vector<int>> parse_blocks(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  for (const auto& part : split(text, ';')) {
    std::vector<int> block;
    for (const auto& cell : split(part, ',')) {
      const int idx = parse_index(cell, "block index");
      if (idx < 1) {
        throw InputError("block indices are 1-based; got " +
                         std::to_string(idx));
      }
      block.push_back(idx - 1);
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& cell : split(text, ',')) {
    out.push_back(parse_index(cell, "integer list entry"));
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& cell : split(text, ',')) {
    out.push_back(parse_rational(trim(cell)));
  }
  return out;
}

RunManifest manifest_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object() || !j.contains("members") || !j["members"].is_array()) {
    throw InputError("manifest must be an object with a 'members' array");
  }
  RunManifest m;
  for (const auto& entry : j["members"]) {
    if (!entry.is_object() || !entry.contains("pgf") ||
        !entry.contains("scale")) {
      throw InputError("each manifest member needs 'pgf' and 'scale'");
    }
    std::filesystem::path p(entry["pgf"].get<std::string>());
    if (p.is_relative() && !base_dir.empty()) {
      p = std::filesystem::path(base_dir) / p;
    }
    m.pgf_paths.push_back(p.string());
    m.scales.push_back(entry["scale"].get<double>());
  }
  if (m.pgf_paths.empty()) {
    throw InputError("manifest must list at least one member");
  }
  for (std::size_t i = 1; i < m.scales.size(); ++i) {
    if (!(m.scales[i] > m.scales[i - 1])) {
      throw InputError("manifest scales must be strictly increasing (entry " +
                       std::to_string(i + 1) + ")");
    }
  }
  if (j.contains("direction")) {
    for (const auto& a : j["direction"]) m.direction.push_back(a.get<int>());
  }
  if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tol")) m.tol = j["tol"].get<double>();
  if (j.contains("out")) m.out_path = j["out"].get<std::string>();
  if (j.contains("plot")) m.plot_path = j["plot"].get<std::string>();
  return m;
}

namespace {

constexpr double kW = 640, kH = 400, kMargin = 56;

double map_x(double x, double lo, double hi) {
  return kMargin + (x - lo) / (hi - lo) * (kW - 2 * kMargin);
}

double map_y(double y, double lo, double hi) {
  return kH - kMargin - (y - lo) / (hi - lo) * (kH - 2 * kMargin);
}

std::string svg_header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"400\" viewBox=\"0 0 640 400\">\n"
         "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string svg_cdf_overlay(const LatticeLaw& q) {
  const double s = q.sigma();
  if (s == 0.0) throw InputError("svg_cdf_overlay: degenerate law");
  const double m = q.mean();
  const int N = q.N();
  const double x_lo = std::min(-4.0, (0 - m) / s - 0.5);
  const double x_hi = std::max(4.0, (N - m) / s + 0.5);

  std::string out = svg_header();
  // axes
  out += "<line x1=\"" + fmt(map_x(x_lo, x_lo, x_hi)) + "\" y1=\"" +
         fmt(map_y(0, 0, 1)) + "\" x2=\"" + fmt(map_x(x_hi, x_lo, x_hi)) +
         "\" y2=\"" + fmt(map_y(0, 0, 1)) +
         "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + fmt(map_x(0, x_lo, x_hi)) + "\" y1=\"" +
         fmt(map_y(0, 0, 1)) + "\" x2=\"" + fmt(map_x(0, x_lo, x_hi)) +
         "\" y2=\"" + fmt(map_y(1, 0, 1)) +
         "\" stroke=\"#999\" stroke-width=\"1\"/>\n";

  // Gaussian curve
  out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
         "points=\"";
  for (int k = 0; k <= 160; ++k) {
    const double x = x_lo + (x_hi - x_lo) * k / 160.0;
    out += fmt(map_x(x, x_lo, x_hi)) + "," + fmt(map_y(gaussian_cdf(x), 0, 1)) +
           " ";
  }
  out += "\"/>\n";

  // Step CDF
  out += "<path fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" d=\"M " +
         fmt(map_x(x_lo, x_lo, x_hi)) + " " + fmt(map_y(0, 0, 1));
  double cum = 0.0;
  for (int k = 0; k <= N; ++k) {
    const double xk = (k - m) / s;
    cum += to_double(q.pmf()[k]);
    out += " L " + fmt(map_x(xk, x_lo, x_hi)) + " " + fmt(map_y(cum, 0, 1));
    const double x_next = (k == N) ? x_hi : (k + 1 - m) / s;
    out += " L " + fmt(map_x(x_next, x_lo, x_hi)) + " " + fmt(map_y(cum, 0, 1));
  }
  out += "\"/>\n";
  out += "<text x=\"64\" y=\"28\" font-family=\"sans-serif\" font-size=\"13\" "
         "fill=\"#d62728\">normalized CDF</text>\n";
  out += "<text x=\"64\" y=\"46\" font-family=\"sans-serif\" font-size=\"13\" "
         "fill=\"#1f77b4\">standard Gaussian</text>\n";
  out += "</svg>\n";
  return out;
}

std::string svg_rate_trace(const RateStudy& study) {
  const std::size_t n = study.scales.size();
  if (n == 0) throw InputError("svg_rate_trace: empty study");
  std::vector<double> lx(n), ly(n);
  double lx_lo = 1e300, lx_hi = -1e300, ly_lo = 1e300, ly_hi = -1e300;
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log10(study.scales[i]);
    ly[i] = std::log10(std::max(study.distances[i], 1e-300));
    lx_lo = std::min(lx_lo, lx[i]);
    lx_hi = std::max(lx_hi, lx[i]);
    ly_lo = std::min(ly_lo, ly[i]);
    ly_hi = std::max(ly_hi, ly[i]);
  }
  if (lx_hi - lx_lo < 1e-9) lx_hi = lx_lo + 1;
  if (ly_hi - ly_lo < 1e-9) ly_hi = ly_lo + 1;
  const double padx = 0.08 * (lx_hi - lx_lo), pady = 0.08 * (ly_hi - ly_lo);
  lx_lo -= padx;
  lx_hi += padx;
  ly_lo -= pady;
  ly_hi += pady;

  std::string out = svg_header();
  // fitted power law through the centroid
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  const double slope = study.fitted_exponent;
  auto line_y = [&](double x) { return my + slope * (x - mx); };
  out += "<line x1=\"" + fmt(map_x(lx_lo, lx_lo, lx_hi)) + "\" y1=\"" +
         fmt(map_y(line_y(lx_lo), ly_lo, ly_hi)) + "\" x2=\"" +
         fmt(map_x(lx_hi, lx_lo, lx_hi)) + "\" y2=\"" +
         fmt(map_y(line_y(lx_hi), ly_lo, ly_hi)) +
         "\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += "<circle cx=\"" + fmt(map_x(lx[i], lx_lo, lx_hi)) + "\" cy=\"" +
           fmt(map_y(ly[i], ly_lo, ly_hi)) +
           "\" r=\"4\" fill=\"#d62728\"/>\n";
  }
  char label[96];
  std::snprintf(label, sizeof(label),
                "log10 distance vs log10 scale, slope %.4f", slope);
  out += "<text x=\"64\" y=\"28\" font-family=\"sans-serif\" "
         "font-size=\"13\" fill=\"#333\">" +
         std::string(label) + "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace stablepgf::io
