#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>

#include "recirc/config.hpp"
#include "recirc/output.hpp"
#include "recirc/simulation.hpp"
#include "verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

int run_simulate(const std::string& config_path, const std::string& scenario,
                 const std::string& out_dir, int snapshot_every) {
    recirc::RunConfig cfg = recirc::load_config(config_path);
    if (!scenario.empty()) {
        cfg.schedule.preset = scenario;
        cfg.schedule.rows.clear();
    }
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (snapshot_every >= 0) cfg.output.snapshot_every = snapshot_every;

    std::unique_ptr<recirc::DirLock> lock;
    std::filesystem::path dir;
    if (!cfg.output.dir.empty()) {
        dir = cfg.output.dir;
        lock = std::make_unique<recirc::DirLock>(dir.string());
    }

    recirc::SnapshotCallback on_snapshot;
    if (!dir.empty() && cfg.output.snapshot_every > 0) {
        on_snapshot = [dir](int step, const recirc::Mesh& mesh, const recirc::DofMap& dm,
                            const recirc::Vector& theta, const recirc::Vector& v,
                            const recirc::Vector& p) {
            char name[64];
            std::snprintf(name, sizeof name, "snapshot_%05d", step);
            recirc::write_vtk_snapshot(mesh, dm, theta, v, p,
                                       (dir / (std::string(name) + ".vtk")).string());
            recirc::write_rcf1(theta, v, p, (dir / (std::string(name) + ".rcf1")).string());
        };
    }

    const recirc::ScenarioResult result = recirc::run_simulation(cfg, on_snapshot);
    if (!dir.empty())
        recirc::write_timeseries_csv(result, (dir / "timeseries.csv").string());

    if (!result.completed) {
        std::fprintf(stderr, "simulation aborted at step %d: %s\n", result.failed_step,
                     result.failure.c_str());
        return kExitSolver;
    }

    const auto& last = result.rows.back();
    std::printf("steps: %d  final time: %g s\n", last.step, last.time_s);
    std::printf("mean upper-layer temperature: %.6f K\n", last.mean_upper_K);
    std::printf("theta range: [%.6f, %.6f] K\n", last.theta_min_K, last.theta_max_K);
    if (!dir.empty()) std::printf("diagnostics: %s\n", (dir / "timeseries.csv").c_str());
    return kExitOk;
}

int run_preset_list() {
    for (const auto& name : recirc::preset_names()) {
        const recirc::PumpSchedule s = recirc::scenario_preset(name);
        std::printf("%s:", name.c_str());
        for (int k = 0; k < s.n_pumps; ++k) std::printf(" g%d=%+.1e", k + 1, s.rate(k, 1));
        std::printf("  (dt=%g s, N=%d)\n", s.dt, s.steps);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D finite-element simulator for artificial water recirculation in reservoirs"};
    app.require_subcommand(1);

    std::string config_path, scenario, out_dir;
    int snapshot_every = -1;

    auto* simulate = app.add_subcommand("simulate", "Run a scenario from a config file");
    simulate->add_option("--config", config_path, "Config file (section.key = value lines)")
        ->required();
    simulate->add_option("--scenario", scenario,
                         "Override the schedule with a preset (NNNN, TTTT, PPPP, TPTP, PTPT)");
    simulate->add_option("--out", out_dir, "Output directory for diagnostics and snapshots");
    simulate->add_option("--snapshot-every", snapshot_every, "Write VTK/RCF1 every N steps");

    auto* verify = app.add_subcommand("verify", "Run the built-in verification checks");

    bool list_presets = false;
    auto* preset = app.add_subcommand("preset", "Inspect scenario presets");
    preset->add_flag("--list", list_presets, "List the five reference scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed())
            return run_simulate(config_path, scenario, out_dir, snapshot_every);
        if (verify->parsed()) {
            const bool ok = recirc::tools::run_verification([](const std::string& name, bool pass) {
                std::printf("[%s] %s\n", pass ? "PASS" : "FAIL", name.c_str());
            });
            return ok ? kExitOk : kExitSolver;
        }
        if (preset->parsed()) {
            if (list_presets) return run_preset_list();
            std::fprintf(stderr, "preset: nothing to do (try --list)\n");
            return kExitConfig;
        }
    } catch (const recirc::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const recirc::param_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const recirc::solver_error& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolver;
    } catch (const recirc::numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kExitSolver;
    } catch (const recirc::io_error& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kExitIo;
    }
    return kExitOk;
}
