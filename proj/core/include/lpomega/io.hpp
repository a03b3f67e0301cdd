#pragma once

#include <complex>
#include <string>
#include <vector>

#include "lpomega/experiments.hpp"
#include "lpomega/interlace.hpp"
#include "lpomega/lpfun.hpp"
#include "lpomega/models.hpp"
#include "lpomega/omega.hpp"

namespace lpomega {

// JSON round trips. The JSON dialect is handled entirely inside the
// implementation; parse errors surface as std::invalid_argument.

std::string to_json_string(const OmegaPoint& w);
OmegaPoint omega_from_json(const std::string& text);

std::string to_json_string(const EnsembleSpec& spec);
EnsembleSpec ensemble_from_json(const std::string& text);

ExperimentConfig config_from_json(const std::string& text);

std::string to_json_string(const OVReport& rep);
std::string to_json_string(const ConsistencyReport& rep);
std::string to_json_string(const ConvergenceReport& rep);
std::string to_json_string(const AiryReport& rep);
std::string to_json_string(const BoundSweepReport& rep);
std::string to_json_string(const InterlacingArray& arr);
std::string to_json_string(const PvResult& pv);

/// {"omega": ..., "z": [re, im], "eps": ...}
struct EvalRequest {
  OmegaPoint omega;
  std::complex<double> z{0.0, 0.0};
  double eps = 1e-10;
};
EvalRequest eval_request_from_json(const std::string& text);

// Plot-ready CSV emitters. All numbers print with round-trip precision, so
// identical data gives identical bytes.

std::string spectra_csv(const std::vector<WeylVector>& spectra);  // trial,index,value
std::string grid_eval_csv(const DiskGrid& grid, const std::vector<std::complex<double>>& values,
                          const std::vector<double>& err_bounds);
std::string convergence_csv(const ConvergenceReport& rep);
std::string airy_csv(const AiryReport& rep);

void write_file(const std::string& path, const std::string& content);

}  // namespace lpomega
