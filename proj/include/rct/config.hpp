#pragma once

#include <filesystem>
#include <string>

namespace rct {

/// All tunables of the tracking pipeline. One set of values is used for
/// every sequence; fields map 1:1 onto config-file keys and CLI flags.
struct TrackerConfig {
    double lambda = 0.001;        // filter regularization weight
    double eta = 0.013;           // model learning rate
    int num_scales = 5;           // scale pyramid size, odd
    double scale_step = 1.01;     // ratio between adjacent scales
    int cell_size = 4;            // pixels per feature cell
    double proposal_ratio = 0.05; // target fraction P of above-threshold pixels
    double ratio_tolerance = 0.03;// allowed |P_f - P| gap G
    double area_threshold = 0.20; // min surviving component area, as a target-area fraction
    double search_padding = 8.0;  // window area = (1 + padding) * target area
    int admm_iterations = 2;
    double admm_penalty_init = 1.0;
    double admm_penalty_scale = 10.0;
    double admm_penalty_max = 1000.0;
    bool use_mask = true;         // false disables response masking (ablation)

    /// Throws FormatError when a field violates its constraints.
    void validate() const;
};

/// Stock defaults shared by every sequence.
TrackerConfig default_config();

/// Read `key = value` lines over the given defaults. Blank lines and
/// `#` comments are skipped; unknown keys are errors.
TrackerConfig load_config(const std::filesystem::path& path,
                          const TrackerConfig& base = default_config());

/// Apply a single `key=value` assignment (CLI override path).
void set_config_field(TrackerConfig& cfg, const std::string& key, const std::string& value);

}  // namespace rct
