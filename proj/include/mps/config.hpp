#pragma once
// Flat key=value run configuration. '#' starts a comment, blank lines are
// ignored, keys may appear once. Unknown keys are rejected so typos fail
// loudly instead of silently running defaults.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mps/dynamics.hpp"

namespace mps {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    ModelSpec spec;
    int n = 0;
    GalerkinCutoff cutoff;
    StepperConfig stepper;
    std::uint64_t seed = 0;

    std::string init = "taylor_green";  // or "random"
    double amplitude = 0.1;
    double spectrum_slope = -2.0;
    double kmax = 0.0;   // 0 = n/3 default for random data
    double s_norm = 2.6; // Sobolev index monitored as "s"

    std::vector<double> alpha_list, beta_list;  // sweep cells

    std::string raw;  // exact file text, hashed into checkpoint headers
    std::uint64_t config_hash() const;
    std::uint64_t spec_hash() const;
};

// Required keys: model, n, dt, t_end; g is required exactly when the model
// is logarithmic and rejected otherwise. Everything else has defaults
// (coefficients come from the model's defaults). Throws ConfigError with the
// offending key named.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace mps
