#include "cgvs/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cgvs {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::validate() const {
    if (sigma_edge <= 0.0)
        throw std::invalid_argument("config: sigma_edge must be > 0");
    if (ridge_quantile <= 0.0 || ridge_quantile >= 1.0)
        throw std::invalid_argument("config: ridge_quantile must be in (0,1)");
    if (d_r_factor <= 0.0 || d_r_factor > 1.0)
        throw std::invalid_argument("config: d_r_factor must be in (0,1]");
    if (sigma_c_factor <= 0.0 || sigma_c_factor > 1.0)
        throw std::invalid_argument("config: sigma_c_factor must be in (0,1]");
    if (iterations < 0)
        throw std::invalid_argument("config: iterations must be >= 0");
    if (working_resolution_cap < 16)
        throw std::invalid_argument("config: working_resolution_cap must be >= 16");
    if (histogram_bins < 2 || histogram_bins > 4096)
        throw std::invalid_argument("config: histogram_bins must be in [2,4096]");
    if (inhibit_radius < 0)
        throw std::invalid_argument("config: inhibit_radius must be >= 0");
    if (residual_stop < 0.0 || residual_stop > 1.0)
        throw std::invalid_argument("config: residual_stop must be in [0,1]");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot open " + path);

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: missing '=' at " + path + ":" +
                                     std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        try {
            if (key == "sigma_edge") base.sigma_edge = std::stod(value);
            else if (key == "ridge_quantile") base.ridge_quantile = std::stod(value);
            else if (key == "d_r_factor") base.d_r_factor = std::stod(value);
            else if (key == "sigma_c_factor") base.sigma_c_factor = std::stod(value);
            else if (key == "iterations") base.iterations = std::stoi(value);
            else if (key == "working_resolution_cap") base.working_resolution_cap = std::stoi(value);
            else if (key == "histogram_bins") base.histogram_bins = std::stoi(value);
            else if (key == "inhibit_radius") base.inhibit_radius = std::stoi(value);
            else if (key == "residual_stop") base.residual_stop = std::stod(value);
            else
                throw std::runtime_error("config: unknown key '" + key + "' at " +
                                         path + ":" + std::to_string(lineno));
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("config: bad value for '" + key + "' at " +
                                     path + ":" + std::to_string(lineno));
        }
    }
    base.validate();
    return base;
}

}  // namespace cgvs
