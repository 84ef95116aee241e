#pragma once

#include "config.hpp"

#include <ostream>

namespace experiment {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,    // a certificate failed, or a witness against certified constants
  kRejected = 2,  // invalid configuration or jump scale above rho
  kInternal = 3,  // constants could not be derived or certified
};

/// Each command writes its artifacts under cfg.output_dir and a short
/// human summary to `log`.
int run_shadowing(const ExperimentConfig& cfg, std::ostream& log);
int run_falsify(const ExperimentConfig& cfg, std::ostream& log);
int run_constants(const ExperimentConfig& cfg, std::ostream& log);
int run_gen(const ExperimentConfig& cfg, std::ostream& log);

int run(Command cmd, const ExperimentConfig& cfg, std::ostream& log);

}  // namespace experiment
