#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpslab/sampler.hpp"

#include <json.hpp>

namespace gpslab {

// malformed / mistyped configuration input (CLI exit 2)
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// filesystem trouble (CLI exit 4)
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunSpec {
    std::string name;
    SamplerConfig sampler;  // T copied from the schedule; seed filled per task
};

struct ExperimentConfig {
    int dimension = 0;
    int T = 0;
    double beta_start = 0.0;
    double beta_end = 0.0;
    std::vector<MixtureComponent> model;
    std::vector<std::uint64_t> seeds;
    std::vector<RunSpec> runs;
    std::string output_dir;  // may be empty; resolution handled by the CLI
    bool emit_plots = false;
    int reference_resolution = 10;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_json_file(const std::filesystem::path& path);

    MixtureModel make_model() const;       // validates the mixture
    NoiseSchedule make_schedule() const;   // validates the schedule
    void validate() const;                 // cross-field invariants
};

// JSON (de)serialization used by the experiment config; round-trip stable.
nlohmann::json sampler_config_to_json(const SamplerConfig& cfg);
SamplerConfig sampler_config_from_json(const nlohmann::json& j, int T);
nlohmann::json guidance_to_json(const GuidanceSpec& g);
GuidanceSpec guidance_from_json(const nlohmann::json& j);
nlohmann::json schedule_spec_to_json(const ScheduleSpec& s);
ScheduleSpec schedule_spec_from_json(const nlohmann::json& j);

struct RunResult {
    std::string run;
    std::uint64_t seed = 0;
    Trajectory traj;
    DivergenceStats stats;
    double final_offset = 0.0;
    double cumulative_tau2 = 0.0;
    double cumulative_tau2_literal = 0.0;
};

// Execute every (run x seed) task. The OpenMP variant partitions tasks across
// up to `workers` threads; results are identical to the serial variant.
std::vector<RunResult> execute_runs(const ExperimentConfig& cfg, int workers);
std::vector<RunResult> execute_runs_serial(const ExperimentConfig& cfg);

// CSV serializations (deterministic, %.17g doubles, no timestamps).
std::string trajectory_csv(const Trajectory& traj, int dimension);
std::string summary_csv(const ExperimentConfig& cfg, const std::vector<RunResult>& results);

// Subcommand bodies. Write files under out_dir; return paths written.
std::vector<std::filesystem::path> cmd_run(const ExperimentConfig& cfg,
                                           const std::filesystem::path& out_dir, int workers);
std::vector<std::filesystem::path> cmd_ablate_scheduler(const ExperimentConfig& cfg,
                                                        const std::filesystem::path& out_dir,
                                                        int workers);
std::vector<std::filesystem::path> cmd_plot(const std::filesystem::path& csv_dir);

}  // namespace gpslab
