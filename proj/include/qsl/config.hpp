#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsl/dot.hpp"
#include "qsl/jc.hpp"
#include "qsl/qsl.hpp"

namespace qsl {

// One run's parameters. Defaults reproduce the reference figure settings
// (lambda = 1, tau = 10 sweep; N1 = N2 = 500, delta_eps = 0.5, coupling
// 0.02, tau = 8 dot runs). Precedence: CLI flag > config file > default.
struct RunConfig {
    // damped JC model
    double gamma0 = 10.0;
    double lambda = 1.0;
    double omega0 = 1.0;
    double gamma0_min = 0.05;  // sweep grid (log-spaced)
    double gamma0_max = 50.0;
    int sweep_points = 120;
    double tau = 10.0;   // driving time / trajectory window
    int n_steps = 0;     // 0 = auto from the grid-density rule

    // dot model
    std::uint64_t n1 = 500, n2 = 500;
    double delta_eps = 0.5;
    double delta_e = 1.0;
    double coupling = 0.02;
    std::string dot_kind = "excited";  // excited | coherent
    double dot_tau = 8.0;
    int dot_steps = 0;   // 0 = auto by kind

    // shared
    std::vector<double> betas = {1.0, 0.72};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::string out_dir = ".";
    std::string norm_flavor = "op";  // op | tr | hs
    std::string h_spread = "half";   // full (2 delta_e) | half (delta_e)
    int jobs = 1;

    // inequality campaign
    int trials = 500;
    int max_dim = 8;
    std::uint64_t seed = 1;

    bool operator==(const RunConfig&) const = default;

    JCParams jc_params() const { return {gamma0, lambda, omega0}; }
    DotParams dot_params(std::uint64_t s) const;
    DotInitialState dot_state_kind() const;    // throws config_error
    NormFlavor flavor() const;                 // throws config_error
    double h_spread_value() const;             // full: 2 delta_e, half: delta_e
    void validate() const;                     // throws config_error
};

// JSON (de)serialization; unknown keys are rejected with config_error so a
// config file round-trips losslessly.
std::string config_to_json(const RunConfig& c);
RunConfig config_from_json(const std::string& text);
RunConfig load_config_file(const std::string& path);

} // namespace qsl
