#include "conetrace/commands.hpp"

#include <algorithm>

namespace conetrace {

using nlohmann::json;

namespace {

const char* position_name(const ConeOperator& a, cplx sigma) {
  try {
    switch (classify_root(a, sigma)) {
      case StripPosition::Below: return "below";
      case StripPosition::Inside: return "inside";
      case StripPosition::Above: return "above";
    }
  } catch (const Error&) {
  }
  return "boundary";
}

const DomainChoice& first_domain(const AnalysisConfig& c) {
  if (c.domains.empty()) throw Error(ErrorCode::ConfigError, "$: this command needs a domain (or domains) block");
  return c.domains.front();
}

json domain_json(const ConeOperator& a, const DomainSpec& w, double tol) {
  json e = {{"label", w.label}, {"dimension", w.dimension()}, {"W", matrix_json(canonical_columns(w.W))}};
  try {
    const auto v = stationarity(a, w, tol);
    e["verdict"] = v.stationary ? "stationary" : "nonstationary";
    e["kappa_agrees"] = v.kappa_agrees;
    e["generator_residual"] = fnum(v.generator_residual);
  } catch (const Error& err) {
    e["verdict"] = "indeterminate";
    e["error"] = {{"code", to_string(err.code())}, {"message", err.what()}};
  }
  return e;
}

}  // namespace

CommandOutput cmd_analyze(const AnalysisConfig& c) {
  const ConeOperator a = build_operator(c);
  json r = envelope("analyze", c);
  r["operator"] = {{"m", a.order()},
                   {"depth", a.depth()},
                   {"weight", fnum(a.weight())},
                   {"x_independent", has_x_independent_coefficients(a)},
                   {"formally_symmetric", is_formally_symmetric(a)}};

  json spec = json::array();
  for (const auto& root : boundary_spectrum(a))
    spec.push_back({{"sigma", cjson(root.sigma)}, {"multiplicity", root.multiplicity}, {"position", position_name(a, root.sigma)}});
  r["spec_b"] = spec;

  const StripResult strip = strip_sigma(a);
  json sigma = json::array(), bases = json::array();
  for (const auto& root : strip.roots) {
    sigma.push_back({{"sigma", cjson(root.sigma)}, {"multiplicity", root.multiplicity}});
    json fs = json::array();
    for (const auto& f : wedge_singular_basis(a, root).basis) fs.push_back(log_power_json(f));
    bases.push_back({{"sigma", cjson(root.sigma)}, {"functions", fs}});
  }
  r["strip_roots"] = sigma;
  r["warnings"] = strip.warnings;
  r["singular_bases"] = bases;

  const int d = max_domain_dimension(a);
  r["d"] = d;
  if (d == 0) r["note"] = "D_min = D_max";

  json tails = json::array();
  const ThetaMap tm = theta_matrix(a);
  for (const auto& t : tm.tails) {
    json steps = json::array();
    for (const auto& s : t.steps) {
      if (s.value.is_zero()) continue;
      steps.push_back({{"vartheta", s.vartheta}, {"resonant", s.resonant}, {"log_depth", s.log_depth}, {"value", log_power_json(s.value)}});
    }
    tails.push_back({{"source", log_power_json(t.source)}, {"steps", steps}, {"any_resonant", t.any_resonant()}});
  }
  r["theta_tails"] = tails;
  return {r, {}};
}

CommandOutput cmd_domains(const AnalysisConfig& c) {
  const ConeOperator a = build_operator(c);
  const double tol = c.numerics.rank_tol;
  json r = envelope("domains", c);
  const int d = max_domain_dimension(a);
  r["d"] = d;
  json basis = json::array();
  for (const auto& b : canonical_basis(a)) basis.push_back({{"sigma", cjson(b.sigma)}, {"log_power", b.log_power}});
  r["basis"] = basis;
  r["generator"] = matrix_json(generator(a).T);

  json configured = json::array();
  for (const auto& choice : c.domains) configured.push_back(domain_json(a, resolve_domain(a, choice), tol));
  r["domains"] = configured;

  if (d > 0) {
    json lines = {{"dimension", d - 1}};
    try {
      const auto sd = stationary_domains(a, d - 1);
      lines["continuum"] = sd.continuum;
      if (!sd.continuum) {
        json ws = json::array();
        for (const auto& w : sd.domains) ws.push_back(matrix_json(canonical_columns(w.W)));
        lines["count"] = sd.domains.size();
        lines["domains"] = ws;
      }
    } catch (const Error& err) {
      lines["error"] = {{"code", to_string(err.code())}, {"message", err.what()}};
    }
    r["stationary_codim1"] = lines;
  }

  try {
    const DomainSpec f = friedrichs_domain(a);
    r["friedrichs"] = {{"W", matrix_json(canonical_columns(f.W))}, {"stationary", is_stationary(a, f, tol)}};
  } catch (const Error& err) {
    r["friedrichs"] = {{"error", {{"code", to_string(err.code())}, {"message", err.what()}}}};
  }
  return {r, {}};
}

CommandOutput cmd_trace_ray(const AnalysisConfig& c, const RunOptions& o) {
  const ConeOperator a = build_operator(c);
  first_domain(c);  // presence check
  const TraceOptions topt = trace_options(c);
  json r = envelope("trace-ray", c);
  r["theta0"] = fnum(c.sector.theta0);
  r["ell"] = c.ray.ell;
  const bool many = c.domains.size() > 1;
  CommandOutput out;
  std::vector<PlotSeries> series;
  json per = json::array();
  for (const auto& choice : c.domains) {
    const DomainSpec w = resolve_domain(a, choice);
    CharacteristicSystem sys(a, w, topt.engine);
    const RaySamples s = sample_ray(sys, c.ray.ell, phi_polynomial(c), c.sector.theta0, c.ray.r_min, c.ray.r_max,
                                    c.ray.points, topt, o.threads);
    json rows = json::array();
    PlotSeries ps{w.label, {}, {}, true};
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
      rows.push_back({{"r", fnum(s.r[i])}, {"value", cjson(s.samples[i].value)}, {"error_estimate", fnum(s.samples[i].error_estimate)},
                      {"method", to_string(s.samples[i].method)}});
      ps.x.push_back(s.r[i]);
      ps.y.push_back(std::abs(s.samples[i].value));
    }
    json fails = json::array();
    for (const auto& f : s.failures) fails.push_back({{"r", fnum(f.r)}, {"code", f.code}, {"message", f.message}});
    const std::string csv = many ? "samples_" + w.label + ".csv" : "samples.csv";
    per.push_back({{"label", w.label}, {"samples", rows}, {"failures", fails}, {"csv", csv}});
    out.files.emplace_back(csv, samples_csv(s));
    series.push_back(std::move(ps));
  }
  r["domains"] = per;
  if (o.plot || c.output.plot)
    out.files.emplace_back("trace.svg", svg_loglog(series, "|Tr φ(A_D − λ)^-ℓ| along the ray", "r = |λ|", "|trace|"));
  out.report = r;
  return out;
}

CommandOutput cmd_fit(const AnalysisConfig& c, const RunOptions& o) {
  std::vector<double> rs;
  std::vector<cplx> vs;
  std::string source;
  if (!o.samples_path.empty()) {
    const CsvSamples s = read_samples_csv(o.samples_path);
    rs = s.r, vs = s.values;
    source = o.samples_path;
  } else {
    const ConeOperator a = build_operator(c);
    const DomainSpec w = resolve_domain(a, first_domain(c));
    const TraceOptions topt = trace_options(c);
    CharacteristicSystem sys(a, w, topt.engine);
    const RaySamples s = sample_ray(sys, c.ray.ell, phi_polynomial(c), c.sector.theta0, c.ray.r_min, c.ray.r_max,
                                    c.ray.points, topt, o.threads);
    rs = s.r, vs = sample_values(s);
    source = "ray:" + w.label;
  }
  FitOptions fo;
  fo.r_min = c.fit.r_min;
  fo.peel = c.fit.peel;
  fo.condition_limit = c.fit.condition_limit;
  const auto basis = expansion_basis(c.m, c.ray.ell, c.fit.J, c.fit.log_caps);
  const FitResult fit = fit_basis(rs, vs, basis, fo);

  json r = envelope("fit", c);
  r["source"] = source;
  r["fit_window"] = {fnum(c.fit.r_min), fnum(rs.empty() ? 0.0 : rs.back())};
  r["fit"] = fit_json(fit);

  json logs = json::array();
  for (int j = 0; j <= c.fit.J; ++j) {
    json e = {{"j", j}};
    try {
      const LogDetection ld = detect_logs(rs, vs, c.m, c.ray.ell, c.fit.J, c.fit.log_caps, j, c.fit.detect_threshold, 2, fo);
      e["m_j"] = ld.m_j;
      json ratios = json::array();
      for (double q : ld.ratios) ratios.push_back(fnum(q));
      e["ratios"] = ratios;
      e["status"] = "ok";
    } catch (const Error& err) {
      e["status"] = err.code() == ErrorCode::Inconclusive ? "inconclusive" : to_string(err.code());
      e["message"] = err.what();
    }
    logs.push_back(e);
  }
  r["log_detection"] = logs;

  CommandOutput out{r, {}};
  if (o.plot || c.output.plot) {
    PlotSeries data{"samples", rs, {}, true}, model{"fit", {}, {}, false};
    for (auto v : vs) data.y.push_back(std::abs(v));
    for (double x : rs)
      if (x >= c.fit.r_min) model.x.push_back(x), model.y.push_back(std::abs(fit(x)));
    out.files.emplace_back("fit.svg", svg_loglog({data, model}, "Ray samples and fitted expansion", "r = |λ|", "|trace|"));
  }
  return out;
}

std::vector<double> lowest_eigenvalues(const CharacteristicSystem& sys, int count, double lambda_min) {
  std::vector<double> out;
  double lo = lambda_min, hi = std::max(lambda_min + 1.0, 100.0);
  while (static_cast<int>(out.size()) < count) {
    for (const auto& e : eigenvalues(sys, Region::interval(lo, hi), count - static_cast<int>(out.size())))
      if (out.empty() || e.value.real() > out.back() + 1e-12 * std::abs(out.back())) out.push_back(e.value.real());
    if (hi > 1e12) throw Error(ErrorCode::RootFindingFailed, "too few eigenvalues below 1e12");
    lo = hi, hi *= 4.0;
  }
  return out;
}

CommandOutput cmd_zeta(const AnalysisConfig& c, const RunOptions& o) {
  const ConeOperator a = build_operator(c);
  const DomainSpec w = resolve_domain(a, first_domain(c));
  CharacteristicSystem sys(a, w, engine_options(c));
  const std::vector<double> eigs = lowest_eigenvalues(sys, c.heat.eigenvalues, c.heat.lambda_min);
  if (eigs.front() <= 0.0)
    throw Error(ErrorCode::VerificationFailed, "A_D has a non-positive eigenvalue; zeta needs a positive spectrum");

  TailOptions tail;
  const auto grid = geometric_grid(c.heat.t_min, c.heat.t_max, c.heat.points);
  const auto heat = heat_trace(eigs, c.m, grid, tail);
  std::vector<double> probes = c.heat.probes;
  if (probes.empty()) probes.push_back(-0.5 / c.m);
  const FitResult hf = fit_heat(heat, c.m, c.heat.J, c.heat.log_caps, probes);
  ZetaOptions zo;
  zo.tail = tail;
  zo.residue_tol = c.heat.residue_tol;
  const ZetaReport z = zeta_report(eigs, c.m, hf, c.heat.s_grid, zo);

  json r = envelope("zeta", c);
  r["domain"] = w.label;
  json ev = json::array();
  for (double e : eigs) ev.push_back(fnum(e));
  r["eigenvalues"] = ev;
  json hs = json::array();
  for (const auto& h : heat) hs.push_back({{"t", fnum(h.t)}, {"value", fnum(h.value)}, {"error_estimate", fnum(h.error_estimate)}});
  r["heat_trace"] = hs;
  r["heat_fit"] = fit_json(hf);
  json poles = json::array();
  for (const auto& p : z.poles)
    poles.push_back({{"s", fnum(p.s)}, {"order", p.order}, {"residue", cjson(p.residue)}, {"uncertainty", fnum(p.uncertainty)},
                     {"status", p.status}, {"j", p.j}, {"k", p.k}});
  r["poles"] = poles;
  json vals = json::array();
  for (const auto& v : z.values)
    vals.push_back({{"s", fnum(v.s)}, {"value", fnum(v.value)}, {"error_estimate", fnum(v.error_estimate)}, {"method", v.method}});
  r["values"] = vals;

  CommandOutput out{r, {}};
  if (o.plot || c.output.plot) {
    PlotSeries ps{"heat trace", grid, {}, true};
    for (const auto& h : heat) ps.y.push_back(h.value);
    out.files.emplace_back("heat.svg", svg_loglog({ps}, "Heat trace", "t", "Tr exp(-t A_D)"));
  }
  return out;
}

}  // namespace conetrace
