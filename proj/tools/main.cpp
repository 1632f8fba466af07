#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpslab/harness.hpp"

namespace {

// --out flag > config output_dir > GPSLAB_OUT env > ./out
std::filesystem::path resolve_out_dir(const std::string& flag_out,
                                      const std::string& config_out) {
    if (!flag_out.empty()) return flag_out;
    if (!config_out.empty()) return config_out;
    if (const char* env = std::getenv("GPSLAB_OUT"); env != nullptr && *env != '\0') {
        return env;
    }
    return "out";
}

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gpslab: deterministic diffusion sampling laboratory on analytic "
                 "Gaussian-mixture models"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_flag;
    int workers = 0;  // 0 = library default (all cores)

    auto* run = app.add_subcommand("run", "execute every (run x seed) in a config");
    run->add_option("config", config_path, "experiment config (json)")->required();
    run->add_option("--out", out_flag, "output directory override");
    run->add_option("--workers", workers, "parallel worker count")->check(CLI::Range(1, 1024));

    auto* ablate = app.add_subcommand("ablate-scheduler",
                                      "run the gps scheduler ablation families");
    ablate->add_option("config", config_path, "experiment config (json)")->required();
    ablate->add_option("--out", out_flag, "output directory override");
    ablate->add_option("--workers", workers, "parallel worker count")
        ->check(CLI::Range(1, 1024));

    std::string plot_dir;
    auto* plot = app.add_subcommand("plot", "render svg charts from trajectory csv files");
    plot->add_option("dir", plot_dir, "directory of csv files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed() || ablate->parsed()) {
            const auto cfg = gpslab::ExperimentConfig::from_json_file(config_path);
            const auto out_dir = resolve_out_dir(out_flag, cfg.output_dir);
            const auto written = run->parsed()
                                     ? gpslab::cmd_run(cfg, out_dir, workers)
                                     : gpslab::cmd_ablate_scheduler(cfg, out_dir, workers);
            for (const auto& p : written) std::cout << p.string() << '\n';
        } else if (plot->parsed()) {
            const auto written = gpslab::cmd_plot(plot_dir);
            for (const auto& p : written) std::cout << p.string() << '\n';
        }
    } catch (const gpslab::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const gpslab::io_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
