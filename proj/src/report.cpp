#include "conetrace/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace conetrace {

using nlohmann::json;

json fnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  if (v == 0.0) return 0.0;  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  // shortest round-trip of the rounded value never needs more than 15 digits
  return std::strtod(buf, nullptr);
}

json cjson(cplx z) { return json::array({fnum(z.real()), fnum(z.imag())}); }

json matrix_json(const CMatrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(cjson(M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json log_power_json(const LogPowerFunction& f) {
  json out = json::array();
  for (const auto& t : f.terms()) {
    json c = json::array();
    for (auto v : t.coeffs) c.push_back(cjson(v));
    out.push_back({{"exponent", cjson(t.exponent)}, {"real_power", fnum(t.real_power())}, {"log_coeffs", c}});
  }
  return out;
}

json fit_json(const FitResult& f) {
  json terms = json::array();
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const auto& t = f.terms[i];
    json e = {{"j", t.j}, {"k", t.k}, {"exponent", fnum(t.exponent)}, {"alpha", cjson(t.alpha)}, {"sigma", fnum(t.sigma)}};
    if (i < f.window_drift.size()) e["window_drift"] = fnum(f.window_drift[i]);
    terms.push_back(e);
  }
  return {{"terms", terms},
          {"log_caps", f.m_caps},
          {"residual_norm", fnum(f.residual_norm)},
          {"condition", fnum(f.condition)},
          {"peeled", f.peeled}};
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json envelope(const std::string& command, const AnalysisConfig& c) {
  return {{"command", command}, {"version", kVersion}, {"config_hash", hash_hex(c.hash)}};
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path);
  out << text;
}

namespace {
std::string g15(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}
}  // namespace

std::string samples_csv(const RaySamples& s) {
  std::string out = std::string(kSamplesHeader) + "\n";
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    const auto& t = s.samples[i];
    out += g15(s.r[i]) + "," + g15(t.value.real()) + "," + g15(t.value.imag()) + "," + g15(t.error_estimate) + "," +
           to_string(t.method) + "\n";
  }
  return out;
}

CsvSamples parse_samples_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ConfigError, "samples CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSamplesHeader) throw Error(ErrorCode::ConfigError, "samples CSV header must be " + std::string(kSamplesHeader));
  CsvSamples s;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 5) throw Error(ErrorCode::ConfigError, "samples CSV line " + std::to_string(lineno) + ": expected 5 fields");
    try {
      s.r.push_back(std::stod(f[0]));
      s.values.emplace_back(std::stod(f[1]), std::stod(f[2]));
      s.errors.push_back(std::stod(f[3]));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "samples CSV line " + std::to_string(lineno) + ": not a number");
    }
    s.methods.push_back(f[4]);
  }
  for (std::size_t i = 1; i < s.r.size(); ++i)
    if (!(s.r[i] > s.r[i - 1])) throw Error(ErrorCode::ConfigError, "samples CSV: r must be strictly increasing");
  return s;
}

CsvSamples read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open samples file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_samples_csv(ss.str());
}

std::string svg_loglog(const std::vector<PlotSeries>& series, const std::string& title, const std::string& xlabel,
                       const std::string& ylabel) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (s.x[i] > 0 && s.y[i] > 0 && std::isfinite(s.y[i])) {
        xlo = std::min(xlo, std::log10(s.x[i]));
        xhi = std::max(xhi, std::log10(s.x[i]));
        ylo = std::min(ylo, std::log10(s.y[i]));
        yhi = std::max(yhi, std::log10(s.y[i]));
      }
  if (xlo > xhi) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  xlo = std::floor(xlo), xhi = std::max(std::ceil(xhi), xlo + 1);
  ylo = std::floor(ylo), yhi = std::max(std::ceil(yhi), ylo + 1);
  auto px = [&](double v) { return L + (std::log10(v) - xlo) / (xhi - xlo) * (W - L - R); };
  auto py = [&](double v) { return H - B - (std::log10(v) - ylo) / (yhi - ylo) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  for (double e = xlo; e <= xhi; e += 1) {
    const double x = px(std::pow(10.0, e));
    o << "<line x1=\"" << x << "\" y1=\"" << T << "\" x2=\"" << x << "\" y2=\"" << H - B << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << x << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">1e" << static_cast<int>(e) << "</text>\n";
  }
  for (double e = ylo; e <= yhi; e += 1) {
    const double y = py(std::pow(10.0, e));
    o << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << W - R << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
  }
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  o << "<text transform=\"translate(16," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = colors[k % 5];
    std::ostringstream pts;
    pts.setf(std::ios::fixed);
    pts.precision(2);
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (s.x[i] > 0 && s.y[i] > 0 && std::isfinite(s.y[i])) pts << px(s.x[i]) << "," << py(s.y[i]) << " ";
    o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\"" << (s.markers ? " stroke-dasharray=\"4 3\"" : "")
      << " points=\"" << pts.str() << "\"/>\n";
    if (s.markers)
      for (std::size_t i = 0; i < s.x.size(); ++i)
        if (s.x[i] > 0 && s.y[i] > 0 && std::isfinite(s.y[i]))
          o << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"2.5\" fill=\"" << col << "\"/>\n";
    o << "<text x=\"" << W - R - 8 << "\" y=\"" << T + 16 + 16 * k << "\" text-anchor=\"end\" fill=\"" << col << "\">"
      << s.label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace conetrace
