#include "lpomega/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lpomega {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json omega_to_json(const OmegaPoint& w) {
  return json{{"alpha_plus", w.alpha_plus()},
              {"alpha_minus", w.alpha_minus()},
              {"gamma1", w.gamma1()},
              {"delta", w.delta()},
              {"tail_eps", w.tail_eps()}};
}

OmegaPoint omega_from(const json& j) {
  return OmegaPoint(j.value("alpha_plus", std::vector<double>{}),
                    j.value("alpha_minus", std::vector<double>{}), j.value("gamma1", 0.0),
                    j.value("delta", 0.0), j.value("tail_eps", 0.0));
}

std::complex<double> complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j.at(0).get<double>(), j.at(1).get<double>()};
  throw std::invalid_argument("expected a number or [re, im] pair");
}

json ensemble_to_json(const EnsembleSpec& spec) {
  json j{{"model", to_string(spec.model)}, {"n", spec.n},      {"beta", spec.beta},
         {"eta", spec.eta},                {"s", {spec.s.real(), spec.s.imag()}},
         {"k_trunc", spec.k_trunc},        {"mcmc_steps", spec.mcmc_steps},
         {"mcmc_step_scale", spec.mcmc_step_scale}};
  if (spec.model == ModelTag::Ergodic) j["omega"] = omega_to_json(spec.omega);
  return j;
}

EnsembleSpec ensemble_from(const json& j) {
  EnsembleSpec spec;
  spec.model = model_tag_from_string(j.value("model", "gue"));
  spec.n = j.value("n", 1);
  spec.beta = j.value("beta", 2.0);
  spec.eta = j.value("eta", 0.0);
  if (j.contains("s")) spec.s = complex_from(j.at("s"));
  if (j.contains("omega")) spec.omega = omega_from(j.at("omega"));
  spec.k_trunc = j.value("k_trunc", 0);
  spec.mcmc_steps = j.value("mcmc_steps", 10000L);
  spec.mcmc_step_scale = j.value("mcmc_step_scale", 0.0);
  spec.validate();
  return spec;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("invalid JSON");
  return j;
}

}  // namespace

std::string to_json_string(const OmegaPoint& w) { return omega_to_json(w).dump(); }

OmegaPoint omega_from_json(const std::string& text) { return omega_from(parse(text)); }

std::string to_json_string(const EnsembleSpec& spec) { return ensemble_to_json(spec).dump(); }

EnsembleSpec ensemble_from_json(const std::string& text) { return ensemble_from(parse(text)); }

ExperimentConfig config_from_json(const std::string& text) {
  const json j = parse(text);
  ExperimentConfig c;
  c.experiment = j.value("experiment", "");
  if (j.contains("omega")) c.omega = omega_from(j.at("omega"));
  if (j.contains("ensemble")) c.ensemble = ensemble_from(j.at("ensemble"));
  c.n_schedule = j.value("n_schedule", std::vector<int>{});
  c.trials = j.value("trials", 50);
  c.radius = j.value("radius", 2.0);
  c.seed = j.value("seed", std::uint64_t{1});
  c.threads = j.value("threads", 0);
  c.bound_pairs_scale = j.value("bound_pairs_scale", 1.0);
  if (j.contains("probe_z")) c.probe_z = complex_from(j.at("probe_z"));
  return c;
}

std::string to_json_string(const OVReport& rep) {
  return json{{"alpha_plus_limit", rep.alpha_plus_limit},
              {"alpha_minus_limit", rep.alpha_minus_limit},
              {"gamma1_limit", rep.gamma1_limit},
              {"delta_limit", rep.delta_limit},
              {"alpha_residual", rep.alpha_residual},
              {"gamma1_residual", rep.gamma1_residual},
              {"delta_residual", rep.delta_residual},
              {"tol", rep.tol},
              {"converged", rep.converged}}
      .dump();
}

std::string to_json_string(const ConsistencyReport& rep) {
  return json{{"statistic", rep.statistic}, {"n", rep.n},
              {"trials", rep.trials},       {"mean_a", rep.mean_direct},
              {"mean_b", rep.mean_projected}, {"z", rep.z_score},
              {"ks", rep.ks_stat},          {"p", rep.ks_pvalue}}
      .dump();
}

std::string to_json_string(const ConvergenceReport& rep) {
  return json{{"n_values", rep.n_values},
              {"q25", rep.q25},
              {"q50", rep.q50},
              {"q75", rep.q75},
              {"per_trial", rep.per_trial},
              {"omega_estimate",
               {{"alpha_plus", rep.omega_estimate.alpha_plus},
                {"alpha_minus", rep.omega_estimate.alpha_minus},
                {"gamma1", rep.omega_estimate.gamma1},
                {"delta", rep.omega_estimate.delta}}},
              {"median_decreasing", rep.median_decreasing},
              {"trial_decrease_fraction", rep.trial_decrease_fraction},
              {"pass", rep.pass}}
      .dump();
}

std::string to_json_string(const AiryReport& rep) {
  return json{{"n_values", rep.n_values},
              {"gamma1_median", rep.gamma1_median},
              {"delta_median", rep.delta_median},
              {"probe_ks", rep.probe_ks},
              {"fitted_exponent", rep.fitted_exponent},
              {"delta_top_octave_drift", rep.delta_top_octave_drift},
              {"renorm_at_zero_exact", rep.renorm_at_zero_exact},
              {"pass", rep.pass}}
      .dump();
}

std::string to_json_string(const BoundSweepReport& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations) {
    violations.push_back(json{{"omega", omega_to_json(v.w)},
                              {"omega_tilde", omega_to_json(v.wt)},
                              {"z", {v.z.real(), v.z.imag()}},
                              {"lhs", v.lhs},
                              {"rhs", v.rhs}});
  }
  return json{{"pairs", rep.pairs},
              {"grid_points", rep.grid_points},
              {"max_slack", rep.max_slack},
              {"violations", violations},
              {"pass", rep.pass}}
      .dump();
}

std::string to_json_string(const InterlacingArray& arr) {
  json rows = json::array();
  for (const auto& row : arr.rows) rows.push_back(row.entries());
  return json{{"rows", rows}}.dump();
}

std::string to_json_string(const PvResult& pv) {
  json products = json::array();
  for (const auto& p : pv.diagnostics.partial_products) {
    products.push_back({p.real(), p.imag()});
  }
  return json{{"value", {pv.value.real(), pv.value.imag()}},
              {"thresholds", pv.diagnostics.thresholds},
              {"partial_products", products},
              {"pv_sums", pv.diagnostics.pv_sums},
              {"gamma1_gap", pv.diagnostics.gamma1_gap},
              {"gamma1_consistent", pv.diagnostics.gamma1_consistent}}
      .dump();
}

EvalRequest eval_request_from_json(const std::string& text) {
  const json j = parse(text);
  EvalRequest req;
  if (j.contains("omega")) req.omega = omega_from(j.at("omega"));
  if (j.contains("z")) req.z = complex_from(j.at("z"));
  req.eps = j.value("eps", 1e-10);
  return req;
}

std::string spectra_csv(const std::vector<WeylVector>& spectra) {
  std::string out = "trial,index,value\n";
  for (std::size_t t = 0; t < spectra.size(); ++t) {
    for (int i = 0; i < spectra[t].size(); ++i) {
      out += std::to_string(t) + "," + std::to_string(i) + "," + fmt(spectra[t][i]) + "\n";
    }
  }
  return out;
}

std::string grid_eval_csv(const DiskGrid& grid, const std::vector<std::complex<double>>& values,
                          const std::vector<double>& err_bounds) {
  if (values.size() != grid.points.size() || err_bounds.size() != grid.points.size()) {
    throw std::invalid_argument("grid_eval_csv: size mismatch");
  }
  std::string out = "re_z,im_z,re_e,im_e,err_bound\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += fmt(grid.points[i].real()) + "," + fmt(grid.points[i].imag()) + "," +
           fmt(values[i].real()) + "," + fmt(values[i].imag()) + "," + fmt(err_bounds[i]) + "\n";
  }
  return out;
}

std::string convergence_csv(const ConvergenceReport& rep) {
  std::string out = "n,q25,q50,q75\n";
  for (std::size_t k = 0; k < rep.q50.size(); ++k) {
    // thm44 reports one fewer column than rows; index from the tail.
    const std::size_t n_idx = rep.n_values.size() - rep.q50.size() + k;
    out += std::to_string(rep.n_values[n_idx]) + "," + fmt(rep.q25[k]) + "," + fmt(rep.q50[k]) +
           "," + fmt(rep.q75[k]) + "\n";
  }
  out += "trial";
  for (std::size_t k = 0; k < rep.q50.size(); ++k) out += ",d" + std::to_string(k);
  out += "\n";
  for (std::size_t t = 0; t < rep.per_trial.size(); ++t) {
    out += std::to_string(t);
    for (double v : rep.per_trial[t]) out += "," + fmt(v);
    out += "\n";
  }
  return out;
}

std::string airy_csv(const AiryReport& rep) {
  std::string out = "n,gamma1_median,delta_median\n";
  for (std::size_t k = 0; k < rep.n_values.size(); ++k) {
    out += std::to_string(rep.n_values[k]) + "," + fmt(rep.gamma1_median[k]) + "," +
           fmt(rep.delta_median[k]) + "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace lpomega
