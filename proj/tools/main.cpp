// pdeiss: simulate the disturbed Burgers / stabilized reaction-diffusion
// systems and verify the named stability estimates against the runs.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdeiss/bounds.hpp"
#include "pdeiss/csv.hpp"
#include "pdeiss/errors.hpp"
#include "pdeiss/inequalities.hpp"
#include "pdeiss/random_fields.hpp"
#include "pdeiss/runner.hpp"

namespace {

namespace fs = std::filesystem;
using namespace pdeiss;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string(), path.string(), 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

harness::ScenarioConfig parse_with_overrides(const std::string& text, double tol_override) {
    std::string t = text;
    if (tol_override > 0.0) {
        t += "\ntol.bounds = " + csvio::format_double(tol_override) + "\n";
    }
    return harness::parse_config(t);
}

int run_verify(const std::string& config_path, const std::string& out_dir, double tol,
               bool quiet, bool with_checks) {
    const std::string text = read_file(config_path);
    const harness::ScenarioConfig cfg = parse_with_overrides(text, tol);
    const harness::RunArtifacts art =
        harness::run_scenario(cfg, out_dir, with_checks, quiet);
    if (!with_checks) return 0;
    return art.pass ? 0 : 1;
}

int run_kernel(const std::string& config_path, const std::string& out_dir, bool quiet) {
    const harness::ScenarioConfig cfg = harness::parse_config(read_file(config_path));
    if (cfg.system != harness::SystemKind::reaction_diffusion_closed_loop &&
        cfg.system != harness::SystemKind::reaction_diffusion_open_loop &&
        cfg.system != harness::SystemKind::target_split) {
        throw ConfigError("kernel synthesis requires a reaction-diffusion system", "system",
                          0);
    }
    const Grid1D grid = make_grid(cfg.n_nodes);
    const auto rd = cfg.rd_params();
    backstepping::KernelOptions kopts;
    kopts.build_transform_weights = false;  // triangular values and gains only
    const auto k = backstepping::solve_kernel(rd, grid, kopts);
    const auto l = backstepping::solve_inverse_kernel(rd, grid, kopts);
    const auto gains = backstepping::gain_constants(k, l);

    auto diag = [&](double x) {
        // k(x,x) = -(1/(2 mu)) int_0^x (nu - a(y)) dy
        return -((rd.nu - rd.a.a0) * x - 0.5 * rd.a.a1 * x * x) / (2.0 * rd.mu);
    };
    const double res_k = k.diagonal_residual(diag);
    const double res_l = l.diagonal_residual(diag);

    fs::create_directories(out_dir);
    csvio::write_kernel_csv(k, fs::path(out_dir) / "kernel_k.csv");
    csvio::write_kernel_csv(l, fs::path(out_dir) / "kernel_l.csv");
    std::ofstream gf(fs::path(out_dir) / "gains.csv", std::ios::binary);
    gf << "max_k,max_l,C1,C0,diag_residual_k,diag_residual_l\n"
       << csvio::format_double(gains.max_k) << ',' << csvio::format_double(gains.max_l)
       << ',' << csvio::format_double(gains.C1) << ',' << csvio::format_double(gains.C0)
       << ',' << csvio::format_double(res_k) << ',' << csvio::format_double(res_l) << '\n';
    if (!quiet) {
        std::cout << "kernels on " << cfg.n_nodes << " nodes: max|k|=" << gains.max_k
                  << " max|l|=" << gains.max_l << " C1=" << gains.C1 << " C0=" << gains.C0
                  << " diag residuals " << res_k << ", " << res_l << '\n';
    }
    return 0;
}

int run_check_inequalities(int seeds, const std::string& family, bool quiet) {
    const Grid1D grid = make_grid(2001);
    const std::vector<double> orders{1.0, 2.0, 4.0, 8.0};
    Lcg64 rng(20240901ULL);
    bool all_pass = true;

    auto report = [&](const std::string& name, double min_margin, bool pass) {
        all_pass = all_pass && pass;
        if (!quiet) {
            std::cout << "  " << name << ": min_margin=" << min_margin
                      << (pass ? " pass" : " FAIL") << '\n';
        }
    };

    if (family == "all" || family == "trig") {
        double min_embed = 1e300;
        double min_point = 1e300;
        bool pass_embed = true;
        bool pass_point = true;
        for (int s = 0; s < seeds; ++s) {
            const ScalarField u = random_trig_field(grid, 8, rng);
            const double a = -1.0 + rng.next_uniform();
            const double b = a + 0.5 + 2.0 * rng.next_uniform();
            const double c = a + (b - a) * rng.next_uniform();
            for (double p : orders) {
                const auto m = inequalities::check_embedding(u, grid, a, b, p);
                min_embed = std::min(min_embed, m.margin);
                pass_embed = pass_embed && m.satisfied;
            }
            const auto mp = inequalities::check_pointwise(u, grid, a, b, c);
            min_point = std::min(min_point, mp.margin);
            pass_point = pass_point && mp.satisfied;
        }
        report("embedding (trig, p in {1,2,4,8})", min_embed, pass_embed);
        report("pointwise (trig)", min_point, pass_point);
    }

    if (family == "all" || family == "sine") {
        double min_poincare = 1e300;
        bool pass_poincare = true;
        for (int s = 0; s < seeds; ++s) {
            const ScalarField v = random_sine_field(grid, 8, rng);
            const auto m = inequalities::check_poincare_dirichlet(v, grid);
            min_poincare = std::min(min_poincare, m.margin);
            pass_poincare = pass_poincare && m.satisfied;
        }
        report("poincare (sine series)", min_poincare, pass_poincare);
    }

    // Level-set formula monotonicity in M and phi(k0).
    {
        bool mono = true;
        for (int s = 0; s < 100; ++s) {
            inequalities::DeGiorgiHypothesis h;
            h.M = 0.1 + 5.0 * rng.next_uniform();
            h.alpha = 0.1 + 3.0 * rng.next_uniform();
            h.beta = 1.0 + 1e-3 + 3.0 * rng.next_uniform();
            h.phi_k0 = 2.0 * rng.next_uniform();
            auto bigger_m = h;
            bigger_m.M += 0.5;
            auto bigger_phi = h;
            bigger_phi.phi_k0 += 0.5;
            mono = mono && inequalities::degiorgi_l0(bigger_m) >= inequalities::degiorgi_l0(h);
            mono = mono &&
                   inequalities::degiorgi_l0(bigger_phi) >= inequalities::degiorgi_l0(h);
        }
        report("degiorgi_l0 monotonicity (100 hypotheses)", 0.0, mono);
    }

    if (!quiet) {
        std::cout << (all_pass ? "inequality suites: pass" : "inequality suites: FAIL")
                  << '\n';
    }
    return all_pass ? 0 : 1;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PDE stability-estimate verification harness"};
    app.require_subcommand(1);

    std::string out_dir = "./out";
    double tol = 0.0;
    bool quiet = false;
    app.add_option("--out", out_dir, "output directory (default ./out)");
    app.add_option("--tol", tol, "override the bound tolerance");
    app.add_flag("--quiet", quiet, "suppress console output");

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "run a scenario without checks");
    sim->add_option("config", config_path, "scenario config file")->required();

    auto* ver = app.add_subcommand("verify", "run a scenario and its checks");
    ver->add_option("config", config_path, "scenario config file")->required();

    auto* ker = app.add_subcommand("kernel", "synthesize and dump the transform kernels");
    ker->add_option("config", config_path, "scenario config file")->required();

    int seeds = 200;
    std::string family = "all";
    auto* chk = app.add_subcommand("check-inequalities", "run the inequality property suites");
    chk->add_option("--seeds", seeds, "number of random fields (default 200)");
    chk->add_option("--family", family, "field family: all|trig|sine");

    std::string sweep_param;
    std::string sweep_values;
    auto* swp = app.add_subcommand("sweep", "run a scenario across parameter values");
    swp->add_option("config", config_path, "scenario config file")->required();
    swp->add_option("--param", sweep_param, "numeric config key to vary")->required();
    swp->add_option("--values", sweep_values, "comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return run_verify(config_path, out_dir, tol, quiet, false);
        if (ver->parsed()) return run_verify(config_path, out_dir, tol, quiet, true);
        if (ker->parsed()) return run_kernel(config_path, out_dir, quiet);
        if (chk->parsed()) return run_check_inequalities(seeds, family, quiet);
        if (swp->parsed()) {
            const auto values = parse_values(sweep_values);
            if (values.empty()) {
                if (!quiet) std::cout << "sweep: empty value list, nothing to do\n";
                return 0;
            }
            const auto result = harness::sweep(read_file(config_path), sweep_param, values,
                                               out_dir, quiet);
            return result.all_pass ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
