#pragma once

#include <string>

namespace cgvs {

/// Pipeline parameters. Defaults run the model as benchmarked; everything is
/// overridable from a flat `key = value` config file and from CLI flags.
struct RunConfig {
    double sigma_edge = 2.0;        // smoothing scale for channels + edges
    double ridge_quantile = 0.8;    // dominant-edge cut on nonzero magnitudes
    double d_r_factor = 1.0 / 3.0;  // voting disk radius, fraction of min(W,H)
    double sigma_c_factor = 1.0 / 3.0;  // center-bias std, fraction of min(W,H)
    int iterations = 2;             // refinement rounds after round 0
    int working_resolution_cap = 400;   // max processing side length
    int histogram_bins = 32;        // likelihood histogram resolution
    int inhibit_radius = 3;         // mask dilation radius for the search
    double residual_stop = 0.05;    // search stops below this residual peak

    /// Throws std::invalid_argument when a value is out of range.
    void validate() const;
};

/// Parse a flat `key = value` file ('#' starts a comment). Unknown keys and
/// malformed lines are errors.
RunConfig load_config_file(const std::string& path, RunConfig base = RunConfig{});

}  // namespace cgvs
