#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <json.hpp>

#include "zikaoc/config.hpp"
#include "zikaoc/csv.hpp"
#include "zikaoc/svg.hpp"
#include "zikaoc/verify.hpp"

namespace {

using namespace zikaoc;

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string mode;  // empty = take the mode from the configuration
    std::size_t steps = 0;
    double tol = 0.0;
    std::size_t max_iters = 0;
    std::uint64_t seed = 1;
    bool strict = false;
    std::size_t samples = 1000;
    std::size_t min_samples = 200;
    std::size_t grid_res = 201;
};

RunConfig assemble_config(const CliOptions& opt) {
    RunConfig cfg = opt.config_path.empty() ? default_run_config() : load_config(opt.config_path);
    if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
    if (opt.steps) cfg.grid.n_steps = opt.steps;
    if (opt.tol > 0.0) cfg.fbsm.rel_tol = opt.tol;
    if (opt.max_iters) cfg.fbsm.max_iters = opt.max_iters;
    validate(cfg);
    std::filesystem::create_directories(cfg.output_dir);
    return cfg;
}

std::string sanitize(const std::string& label) {
    std::string out;
    for (char c : label)
        out += (std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '_';
    return out;
}

void export_result(const ScenarioResult& res, const std::string& out_dir) {
    write_csv(res, out_dir + "/" + sanitize(res.label) + ".csv");
}

int run_simulate(const CliOptions& opt) {
    const RunConfig cfg = assemble_config(opt);
    std::cout << effective_params_report(cfg);
    const ScenarioResult res = run_scenario(make_scenario(cfg, ControlMode::none, "none"));
    export_result(res, cfg.output_dir);
    emit_plots({res}, cfg.output_dir);
    std::cout << format_comparison_table(comparison_table({res}));
    return 0;
}

int run_optimize(const CliOptions& opt) {
    const RunConfig cfg = assemble_config(opt);
    std::cout << effective_params_report(cfg);
    const ControlMode mode =
        opt.mode.empty() ? cfg.mode : control_mode_from_string(opt.mode);
    const ScenarioResult res = run_scenario(make_scenario(cfg, mode, to_string(mode)));
    export_result(res, cfg.output_dir);
    emit_plots({res}, cfg.output_dir);
    std::cout << format_comparison_table(comparison_table({res}));
    std::printf("iterations: %zu  converged: %s  J = %.8g\n", res.solution.iterations,
                res.solution.converged ? "yes" : "no", res.solution.objective);
    if (opt.strict && !res.solution.converged) {
        std::cerr << "error: sweep did not converge within " << cfg.fbsm.max_iters
                  << " iterations (strict mode)\n";
        return 2;
    }
    return 0;
}

int run_compare(const CliOptions& opt) {
    const RunConfig cfg = assemble_config(opt);
    std::cout << effective_params_report(cfg);
    const ControlMode modes[4] = {ControlMode::none, ControlMode::u1_only,
                                  ControlMode::u2_only, ControlMode::both};
    std::vector<std::future<ScenarioResult>> jobs;
    for (ControlMode m : modes)
        jobs.push_back(std::async(std::launch::async, [&cfg, m] {
            return run_scenario(make_scenario(cfg, m, to_string(m)));
        }));
    std::vector<ScenarioResult> results;
    results.reserve(4);
    for (auto& j : jobs) results.push_back(j.get());
    for (const auto& r : results) export_result(r, cfg.output_dir);
    emit_plots(results, cfg.output_dir);
    std::cout << format_comparison_table(comparison_table(results));
    bool all = true;
    for (const auto& r : results) all = all && r.solution.converged;
    if (opt.strict && !all) {
        std::cerr << "error: at least one scenario did not converge (strict mode)\n";
        return 2;
    }
    return 0;
}

int run_sweep(const CliOptions& opt, const std::vector<double>& values_flag) {
    RunConfig cfg = assemble_config(opt);
    if (!values_flag.empty()) cfg.sweep_values = values_flag;
    validate(cfg);
    std::cout << effective_params_report(cfg);
    const ControlMode mode =
        opt.mode.empty() ? cfg.mode : control_mode_from_string(opt.mode);
    ScenarioSpec base = make_scenario(cfg, mode, "sweep " + to_string(mode));
    const std::vector<ScenarioResult> results = weight_sweep(base, cfg.sweep_values);
    for (const auto& r : results)
        if (!r.solution.states.empty()) export_result(r, cfg.output_dir);
    emit_plots(results, cfg.output_dir);
    std::cout << format_comparison_table(comparison_table(results));
    return 0;
}

int run_verify(const CliOptions& opt) {
    const RunConfig cfg = assemble_config(opt);
    const ModelParams p = cfg.effective_params();

    const FdAdjointReport fd =
        fd_adjoint_check(p, cfg.weights, opt.samples, opt.seed, cfg.fbsm.u_max);
    std::printf("[%s] fd_adjoint_check: max rel error %.3g over %zu samples (tol %.1g)\n",
                fd.pass ? "PASS" : "FAIL", fd.max_rel_error, fd.samples, fd.tolerance);

    const MinimalityReport mini = minimality_check(p, cfg.weights, opt.min_samples,
                                                   opt.grid_res, opt.seed, cfg.fbsm.u_max);
    std::printf("[%s] minimality_check: worst excess %.3g, %zu failures over %zu samples "
                "(%zux%zu grid)\n",
                mini.pass ? "PASS" : "FAIL", mini.worst_excess, mini.failures, mini.samples,
                mini.grid_resolution, mini.grid_resolution);

    const OrderReport ord = order_check(p, cfg.initial, cfg.grid.t_f);
    if (ord.skipped)
        std::printf("[SKIP] order_check: %s\n", ord.note.c_str());
    else
        std::printf("[%s] order_check: estimated order %.3f (diffs %.3g, %.3g)\n",
                    ord.pass ? "PASS" : "FAIL", ord.order, ord.err_coarse, ord.err_fine);

    nlohmann::json summary = {
        {"fd_adjoint",
         {{"pass", fd.pass},
          {"max_rel_error", fd.max_rel_error},
          {"tolerance", fd.tolerance},
          {"samples", fd.samples}}},
        {"minimality",
         {{"pass", mini.pass},
          {"worst_excess", mini.worst_excess},
          {"failures", mini.failures},
          {"samples", mini.samples},
          {"grid_resolution", mini.grid_resolution}}},
        {"order",
         {{"pass", ord.pass},
          {"skipped", ord.skipped},
          {"estimate", ord.order},
          {"note", ord.note}}},
    };
    const bool all = fd.pass && mini.pass && ord.pass;
    summary["pass"] = all;
    std::ofstream json_out(cfg.output_dir + "/verify_summary.json");
    json_out << summary.dump(2) << "\n";
    std::printf("summary written to %s/verify_summary.json\n", cfg.output_dir.c_str());
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal control of vertical Zika transmission: simulation, "
                 "forward-backward sweep optimization and scenario studies"};
    app.require_subcommand(1);

    CliOptions opt;
    std::vector<double> sweep_values;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "configuration file (defaults built in)");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--steps", opt.steps, "override grid step count");
        sub->add_option("--tol", opt.tol, "override sweep convergence tolerance");
        sub->add_option("--max-iters", opt.max_iters, "override sweep iteration cap");
        sub->add_option("--seed", opt.seed, "seed for the verification sampling");
        sub->add_flag("--strict", opt.strict, "exit 2 when the sweep does not converge");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "uncontrolled forward run");
    add_common(simulate);
    CLI::App* optimize = app.add_subcommand("optimize", "forward-backward sweep for one mode");
    add_common(optimize);
    optimize->add_option("--mode", opt.mode, "none | u1_only | u2_only | both");
    CLI::App* compare =
        app.add_subcommand("compare", "full matrix: none / u1_only / u2_only / both");
    add_common(compare);
    CLI::App* sweep = app.add_subcommand("sweep", "weight sweep for w3/w4");
    add_common(sweep);
    sweep->add_option("--mode", opt.mode, "both | u1_only | u2_only");
    sweep->add_option("--values", sweep_values, "weight values (ascending)")->delimiter(',');
    CLI::App* verify = app.add_subcommand("verify", "adjoint, minimality and order checks");
    add_common(verify);
    verify->add_option("--samples", opt.samples, "finite-difference sample count");
    verify->add_option("--min-samples", opt.min_samples, "minimality sample count");
    verify->add_option("--grid-res", opt.grid_res, "minimality grid resolution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (simulate->parsed()) return run_simulate(opt);
        if (optimize->parsed()) return run_optimize(opt);
        if (compare->parsed()) return run_compare(opt);
        if (sweep->parsed()) return run_sweep(opt, sweep_values);
        if (verify->parsed()) return run_verify(opt);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "usage: see `" << argv[0] << " --help`\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
