#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgvs/config.hpp"

namespace cgvs::cli {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitPartialFailure = 2;

/// CLI flag values; anything unset falls through to the config file and then
/// to the built-in defaults.
struct FlagOverrides {
    std::optional<double> sigma_edge, ridge_quantile, d_r_factor, sigma_c_factor,
        residual_stop;
    std::optional<int> iterations, working_resolution_cap, histogram_bins,
        inhibit_radius;
};

/// defaults -> config file (if given) -> flags, validated.
RunConfig resolve_config(const std::string& config_file, const FlagOverrides& flags);

enum class Task { fixation, object };

struct DatasetEntry {
    std::string image_path;
    std::string annotation_path;  // ground-truth mask or fixation CSV
};

struct DatasetIndex {
    std::vector<DatasetEntry> entries;
    Task task = Task::object;
};

/// CSV lines `image_path,annotation_path`; '#' starts a comment.
DatasetIndex load_index(const std::string& path, Task task);

int cmd_detect(const std::string& image_path, const RunConfig& cfg,
               const std::string& output_path);

int cmd_transform(const std::string& image_path, const std::string& map_path,
                  const RunConfig& cfg, const std::string& output_path);

int cmd_search(const std::string& image_path, const RunConfig& cfg, int k_max,
               const std::string& output_dir);

int cmd_eval(const std::string& pred_dir, const std::string& index_path,
             Task task, const std::string& report_path);

int cmd_sweep(const std::string& index_path, const RunConfig& cfg,
              const std::string& output_csv);

}  // namespace cgvs::cli
