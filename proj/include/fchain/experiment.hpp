#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fchain/profiles.hpp"

namespace fchain {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed experiment description: which profiles, chain size, fillings and
/// command-specific options. One command per figure family.
struct ExperimentConfig {
    std::vector<HoppingProfile> profiles;
    int n_sites = 400;
    std::vector<double> fillings;
    std::vector<double> h_list;        // strongsweep
    std::vector<int> mode_indices;     // modes
    std::optional<double> mu0;         // mimic; empty = auto (|eps_F|)
    bool dump_spectrum = false;
    std::filesystem::path outdir = "out";
    int jobs = 1;
};

ExperimentConfig load_config(const std::filesystem::path& path);

// filling -> particle count; throws ConfigError unless nu*N is an integer in (0,N).
int particles_for(const ExperimentConfig& cfg, double filling);

void cmd_density(const ExperimentConfig& cfg);
void cmd_modes(const ExperimentConfig& cfg);
void cmd_strongsweep(const ExperimentConfig& cfg);
void cmd_compensate(const ExperimentConfig& cfg);
void cmd_mimic(const ExperimentConfig& cfg);
void cmd_entropy(const ExperimentConfig& cfg);

}  // namespace fchain
