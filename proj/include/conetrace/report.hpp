#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "conetrace/asymptotics.hpp"
#include "conetrace/config.hpp"

namespace conetrace {

inline constexpr const char* kVersion = "0.1.0";

/// Rounded to 15 significant digits; non-finite → null.
nlohmann::json fnum(double v);
nlohmann::json cjson(cplx z);
nlohmann::json matrix_json(const CMatrix& M);
nlohmann::json log_power_json(const LogPowerFunction& f);
nlohmann::json fit_json(const FitResult& f);

/// Common header: command, version, config hash.
nlohmann::json envelope(const std::string& command, const AnalysisConfig& c);
std::string hash_hex(std::uint64_t h);

/// Pretty, key-sorted, newline-terminated.
std::string dump_report(const nlohmann::json& j);
void write_file(const std::string& path, const std::string& text);

struct CsvSamples {
  std::vector<double> r;
  std::vector<cplx> values;
  std::vector<double> errors;
  std::vector<std::string> methods;
};

inline constexpr const char* kSamplesHeader = "r,re_value,im_value,error_estimate,method";
std::string samples_csv(const RaySamples& s);
CsvSamples parse_samples_csv(const std::string& text);
CsvSamples read_samples_csv(const std::string& path);

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
  bool markers = false;
};

/// Static log–log line plot.
std::string svg_loglog(const std::vector<PlotSeries>& series, const std::string& title, const std::string& xlabel,
                       const std::string& ylabel);

}  // namespace conetrace
