#include "pdeiss/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "pdeiss/csv.hpp"
#include "pdeiss/errors.hpp"
#include "pdeiss/norms.hpp"

namespace pdeiss::harness {

namespace {

namespace fs = std::filesystem;
using csvio::format_double;

struct ScenarioOutputs {
    // Named trajectories in a fixed order plus the evaluated reports.
    std::vector<std::pair<std::string, const Trajectory*>> trajectories;
    std::vector<bounds::BoundReport> reports;
};

bool wants(const ScenarioConfig& cfg, const std::string& name) {
    return std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
}

RunCheckSummary summarize(const bounds::BoundReport& rep) {
    RunCheckSummary s;
    s.name = rep.name;
    s.min_margin = rep.min_margin;
    s.satisfied = rep.satisfied;
    s.tol = rep.tol;
    s.relative = rep.relative;
    s.admissibility = rep.admissibility;
    return s;
}

void write_summary_csv(const std::vector<RunCheckSummary>& checks, bool pass,
                       const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file " + path.string());
    out << "check,min_margin,satisfied,tol,relative,admissibility_value,"
           "admissibility_threshold,admissible\n";
    for (const auto& c : checks) {
        out << c.name << ',' << format_double(c.min_margin) << ',' << (c.satisfied ? 1 : 0)
            << ',' << format_double(c.tol) << ',' << (c.relative ? 1 : 0) << ',';
        if (c.admissibility) {
            out << format_double(c.admissibility->value) << ','
                << format_double(c.admissibility->threshold) << ','
                << (c.admissibility->pass ? 1 : 0);
        } else {
            out << ",,";
        }
        out << '\n';
    }
    out << "overall,," << (pass ? 1 : 0) << ",,,,,\n";
}

ScenarioOutputs execute(const ScenarioConfig& cfg, bool run_checks,
                        std::vector<Trajectory>& storage) {
    ScenarioOutputs out;
    const Grid1D grid = make_grid(cfg.n_nodes);
    const double horizon = inf_order;
    storage.reserve(4);

    switch (cfg.system) {
        case SystemKind::burgers: {
            burgers::SimOptions opts;
            opts.output_stride = cfg.output_stride;
            storage.push_back(burgers::simulate(cfg.burgers_params(), cfg.u0, cfg.d, cfg.f,
                                                cfg.t_end, cfg.dt, grid, opts));
            const Trajectory& u = storage.back();
            out.trajectories.push_back({"trajectory", &u});
            if (!run_checks) break;
            const double u0_l2 = l2_norm(cfg.u0.realize(grid), grid);
            if (wants(cfg, "theorem1")) {
                auto rep = bounds::evaluate_theorem1(u, u0_l2, cfg.burgers_params(),
                                                     cfg.tol_bounds);
                rep.admissibility = bounds::admissibility_theorem1(
                    cfg.d, cfg.f, cfg.burgers_params(), horizon);
                out.reports.push_back(std::move(rep));
            }
            if (wants(cfg, "theorem2")) {
                auto rep = bounds::evaluate_theorem2(u, u0_l2, cfg.burgers_params(), cfg.eps,
                                                     cfg.tol_bounds);
                rep.admissibility =
                    bounds::admissibility_theorem2(cfg.d, cfg.burgers_params(), horizon);
                out.reports.push_back(std::move(rep));
            }
            break;
        }
        case SystemKind::burgers_split_a:
        case SystemKind::burgers_split_b: {
            burgers::SimOptions opts;
            opts.output_stride = cfg.output_stride;
            const bool split_a = cfg.system == SystemKind::burgers_split_a;
            auto st = split_a
                          ? burgers::simulate_splitting_a(cfg.burgers_params(), cfg.u0, cfg.d,
                                                          cfg.f, cfg.t_end, cfg.dt, grid, opts)
                          : burgers::simulate_splitting_b(cfg.burgers_params(), cfg.u0, cfg.d,
                                                          cfg.f, cfg.t_end, cfg.dt, grid, opts);
            storage.push_back(std::move(st.w));
            storage.push_back(std::move(st.v));
            const Trajectory& w = storage[storage.size() - 2];
            const Trajectory& v = storage.back();
            out.trajectories.push_back({"trajectory_w", &w});
            out.trajectories.push_back({"trajectory_v", &v});
            if (!run_checks) break;
            const double u0_l2 = l2_norm(cfg.u0.realize(grid), grid);
            if (wants(cfg, "lemma4")) {
                out.reports.push_back(
                    bounds::evaluate_lemma4(w, cfg.burgers_params(), cfg.tol_bounds));
            }
            if (wants(cfg, "lemma6")) {
                out.reports.push_back(
                    bounds::evaluate_lemma6(w, cfg.burgers_params(), cfg.tol_bounds));
            }
            if (wants(cfg, "lemma5")) {
                auto rep = bounds::evaluate_lemma5(v, u0_l2, cfg.burgers_params(),
                                                   cfg.tol_bounds);
                rep.admissibility = bounds::admissibility_theorem1(
                    cfg.d, cfg.f, cfg.burgers_params(), horizon);
                out.reports.push_back(std::move(rep));
            }
            if (wants(cfg, "lemma7")) {
                auto rep = bounds::evaluate_lemma7(v, u0_l2, cfg.burgers_params(), cfg.eps,
                                                   cfg.tol_bounds);
                rep.admissibility =
                    bounds::admissibility_theorem2(cfg.d, cfg.burgers_params(), horizon);
                out.reports.push_back(std::move(rep));
            }
            break;
        }
        case SystemKind::reaction_diffusion_closed_loop: {
            const auto rd = cfg.rd_params();
            backstepping::KernelOptions kopts;
            const auto k = backstepping::solve_kernel(rd, grid, kopts);
            backstepping::SimOptions opts;
            opts.output_stride = cfg.output_stride;

            ScalarField u0;
            if (cfg.u0.family == InitialFamily::compatible_bump) {
                u0 = backstepping::make_compatible_initial(cfg.u0.amplitude, k, grid);
            } else {
                u0 = cfg.u0.realize(grid);
            }
            storage.push_back(backstepping::simulate_closed_loop(
                rd, u0, cfg.u0.derivative_at1(), k, cfg.d, cfg.f, cfg.t_end, cfg.dt, grid,
                opts));
            const Trajectory& u = storage.back();
            out.trajectories.push_back({"trajectory", &u});
            if (!run_checks) break;
            if (wants(cfg, "prop2")) {
                backstepping::KernelOptions lopts;
                lopts.build_transform_weights = false;  // only the gain maxima are needed
                const auto l = backstepping::solve_inverse_kernel(rd, grid, lopts);
                const auto gains = backstepping::gain_constants(k, l);
                out.reports.push_back(bounds::evaluate_prop2(u, max_abs(u0), gains, rd,
                                                             cfg.tol_bounds));
            }
            break;
        }
        case SystemKind::reaction_diffusion_open_loop: {
            backstepping::SimOptions opts;
            opts.output_stride = cfg.output_stride;
            storage.push_back(backstepping::simulate_open_loop(
                cfg.rd_params(), cfg.u0, cfg.d, cfg.f, cfg.t_end, cfg.dt, grid, opts));
            out.trajectories.push_back({"trajectory", &storage.back()});
            break;
        }
        case SystemKind::target_split: {
            backstepping::SimOptions opts;
            opts.output_stride = cfg.output_stride;
            auto ts = backstepping::simulate_target_split(cfg.rd_params(), cfg.u0.realize(grid),
                                                          cfg.d, cfg.f, cfg.t_end, cfg.dt,
                                                          grid, opts);
            storage.push_back(std::move(ts.g));
            storage.push_back(std::move(ts.h));
            const Trajectory& g = storage[storage.size() - 2];
            const Trajectory& h = storage.back();
            out.trajectories.push_back({"trajectory_g", &g});
            out.trajectories.push_back({"trajectory_h", &h});
            if (!run_checks) break;
            if (wants(cfg, "lyapunov")) {
                for (int p : {1, 2, 4, 8}) {
                    out.reports.push_back(bounds::lyapunov_lp_decay(h, cfg.rd_params(), p));
                }
                out.reports.push_back(bounds::sup_norm_decay(h, cfg.rd_params()));
            }
            break;
        }
    }
    return out;
}

}  // namespace

RunArtifacts run_scenario(const ScenarioConfig& cfg, const fs::path& out_dir,
                          bool run_checks, bool quiet) {
    const auto t0 = std::chrono::steady_clock::now();
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    std::vector<Trajectory> storage;
    ScenarioOutputs outputs = execute(cfg, run_checks, storage);

    RunArtifacts art;
    art.out_dir = out_dir;
    for (const auto& [name, traj] : outputs.trajectories) {
        const fs::path p = out_dir / (name + ".csv");
        csvio::write_trajectory_csv(*traj, p);
        art.trajectory_csvs.push_back(p);
        if (!run_checks) {
            csvio::write_fields_csv(*traj, out_dir / ("fields_" + name + ".csv"), 101);
        }
    }

    std::vector<std::string> manifest;
    for (const auto& rep : outputs.reports) {
        const fs::path p = out_dir / ("report_" + rep.name + ".csv");
        csvio::write_bound_report_csv(rep, p);
        art.report_csvs.push_back(p);
        for (auto& f : csvio::write_plot_pair(rep, out_dir / "plots")) {
            manifest.push_back(rep.name + " " + f);
        }
        art.checks.push_back(summarize(rep));
        const bool admissible = !rep.admissibility || rep.admissibility->pass;
        art.pass = art.pass && rep.satisfied && admissible;
    }
    if (!manifest.empty()) {
        std::ofstream mf(out_dir / "plots" / "manifest.txt", std::ios::binary);
        for (const auto& line : manifest) mf << line << '\n';
    }
    if (run_checks) {
        write_summary_csv(art.checks, art.pass, out_dir / "summary.csv");
    }

    if (!quiet) {
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        std::cout << "system " << to_string(cfg.system) << ": " << outputs.reports.size()
                  << " check(s), wall " << secs << " s\n";
        for (const auto& c : art.checks) {
            std::cout << "  " << c.name << ": min_margin=" << format_double(c.min_margin)
                      << (c.relative ? " (relative)" : "")
                      << (c.satisfied ? " satisfied" : " VIOLATED");
            if (c.admissibility) {
                std::cout << ", admissibility " << format_double(c.admissibility->value)
                          << (c.admissibility->pass ? " < " : " >= ")
                          << format_double(c.admissibility->threshold);
            }
            std::cout << '\n';
        }
    }
    return art;
}

namespace {

const std::set<std::string> kSweepableKeys = {
    "params.mu",          "params.nu",      "params.a0",           "params.a1",
    "grid.n_nodes",       "time.dt",        "time.t_end",          "output.stride",
    "initial.amplitude",  "disturbance.amplitude", "disturbance.omega",
    "forcing.amplitude",  "forcing.omega",  "eps",                 "seed",
    "tol.bounds",
};

}  // namespace

SweepResult sweep(const std::string& base_config_text, const std::string& param,
                  std::vector<double> values, const fs::path& out_dir, bool quiet,
                  Exec exec) {
    if (kSweepableKeys.count(param) == 0) {
        throw ConfigError("sweep parameter '" + param + "' is not a numeric config key",
                          param, 0);
    }
    // Base config must itself be valid before any row runs.
    (void)parse_config(base_config_text);

    std::sort(values.begin(), values.end());
    SweepResult result;
    result.param = param;
    result.rows.resize(values.size());

    const bool par = exec == Exec::parallel;
    const long count = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic) if (par)
    for (long idx = 0; idx < count; ++idx) {
        SweepRow& row = result.rows[static_cast<std::size_t>(idx)];
        row.value = values[static_cast<std::size_t>(idx)];
        const std::string text = base_config_text + "\n" + param + " = " +
                                 format_double(row.value) + "\n";
        char dir_name[32];
        std::snprintf(dir_name, sizeof(dir_name), "row_%03ld", idx);
        try {
            const ScenarioConfig cfg = parse_config(text);
            const RunArtifacts art = run_scenario(cfg, out_dir / dir_name, true, true);
            row.ok = true;
            row.pass = art.pass;
            row.checks = art.checks;
        } catch (const std::exception& e) {
            row.ok = false;
            row.pass = false;
            row.error = e.what();
        }
    }

    result.all_pass = true;
    for (const auto& row : result.rows) result.all_pass = result.all_pass && row.pass;

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    result.table_csv = out_dir / "sweep.csv";
    std::ofstream out(result.table_csv, std::ios::binary);
    if (!out) throw Error("cannot open output file " + result.table_csv.string());
    out << "value,ok,pass,check,min_margin,satisfied,admissibility_value,"
           "admissibility_threshold,admissible,error\n";
    for (const auto& row : result.rows) {
        if (!row.ok || row.checks.empty()) {
            std::string msg = row.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << format_double(row.value) << ',' << (row.ok ? 1 : 0) << ','
                << (row.pass ? 1 : 0) << ",,,,,,," << msg << '\n';
            continue;
        }
        for (const auto& c : row.checks) {
            out << format_double(row.value) << ',' << (row.ok ? 1 : 0) << ','
                << (row.pass ? 1 : 0) << ',' << c.name << ',' << format_double(c.min_margin)
                << ',' << (c.satisfied ? 1 : 0) << ',';
            if (c.admissibility) {
                out << format_double(c.admissibility->value) << ','
                    << format_double(c.admissibility->threshold) << ','
                    << (c.admissibility->pass ? 1 : 0);
            } else {
                out << ",,";
            }
            out << ",\n";
        }
    }

    if (!quiet) {
        std::cout << "sweep " << param << ": " << result.rows.size() << " row(s), "
                  << (result.all_pass ? "all pass" : "violations or errors present") << '\n';
    }
    return result;
}

}  // namespace pdeiss::harness
