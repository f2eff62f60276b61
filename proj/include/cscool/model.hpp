#pragma once
//
// End-to-end assembly: configuration -> derived parameters -> reservoir
// integrals -> self-consistent displacements at the requested detuning ->
// renormalized coefficients -> noise rates.  This is the single entry point
// the CLI and the analysis drivers use.

#include <string>
#include <vector>

#include "cscool/config.hpp"
#include "cscool/displacements.hpp"
#include "cscool/noise.hpp"
#include "cscool/params.hpp"
#include "cscool/pv.hpp"
#include "cscool/renorm.hpp"

namespace cscool {

struct Model {
    SystemConfig cfg;
    DerivedParams prm;
    PvConstants pv;
    double delta_tilde = 0;
    int detuning_iterations = 0;
    Displacements disp;
    ModelCoefficients mc;
    NoiseRates nr;
    std::vector<std::string> warnings;
};

// Build the full model.  Throws ConfigError / PhysicsError from the stages.
// Non-fatal conditions are collected into warnings:
//   PoleOutsideCutoff  - scattering-pole frequency above the reservoir cutoff
//   AmbiguousRoot      - displacement root selection had close competitors
//   UpsilonTruncated   - |Upsilon| > 1% of |g_z'| while excluded from dynamics
Model build_model(const SystemConfig& cfg);

} // namespace cscool
