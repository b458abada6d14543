#pragma once

#include "gsx/models.hpp"

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace gsx::cli {

// Everything needed to reproduce one run. Kind and mode names are kept as text so
// that validation can report them verbatim.
struct CommandConfig {
    std::string subcommand;          // sweep | spectrum | scaling | ee | oracle-check
    std::string model = "kitaev";
    int n = 124;
    std::optional<double> delta;
    std::optional<double> h;
    std::uint64_t seed = 1;
    int chiral_sign = -1;
    std::string mode = "fixed_ref";
    double epsilon = 0.002;
    double ref_delta = -1.0;
    double delta_min = -1.0;
    double delta_max = 1.0;
    double step = 0.005;
    std::vector<std::string> models;  // scaling
    std::string sizes = "8:124";      // scaling
    std::string reference = "fock";   // scaling
    std::string sites;                // ee; empty means every prefix 1..l
    std::string covariance;           // ee; block | interleaved dumps Gamma instead
    int cases = 100;                  // oracle-check
    std::optional<int> threads;
    std::string out;
    std::string format = "csv";
};

nlohmann::json to_json(const CommandConfig& c);
CommandConfig config_from_json(const nlohmann::json& j);

std::vector<std::string> validate(const CommandConfig& c);

// "8:124" doubles from 8 while below 124 and ends at 124; "8,16" lists sizes.
std::vector<int> parse_sizes(const std::string& s);
// "ssh:1", "kitaev:-0.5", "rainbow:1", "random_chain" or "random_chain:42" (seed).
models::ModelSpec parse_model_token(const std::string& token, std::uint64_t seed, int chiral_sign);
// "1-4", "1,3,5" or mixtures; 1-based.
std::vector<int> parse_sites(const std::string& s);

struct Outcome {
    int exit_code = 0;
    std::string summary;
};

// Executes a validated config, writing the data file and its sidecar.
Outcome execute(const CommandConfig& c);

int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

} // namespace gsx::cli
