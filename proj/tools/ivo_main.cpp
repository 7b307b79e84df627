#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ivo/catalog.hpp"
#include "ivo/config.hpp"
#include "ivo/report.hpp"
#include "ivo/riop.hpp"
#include "ivo/suite.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string fault;
};

ivo::RunConfig resolve_config(const CliOptions& opts) {
    ivo::RunConfig cfg;
    if (!opts.config_path.empty()) cfg = ivo::load_config(opts.config_path);
    // Seed precedence: --seed flag, then IVO_SEED, then the config file.
    if (const char* env = std::getenv("IVO_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw ivo::ConfigError("IVO_SEED is not a valid integer");
        }
    }
    if (opts.seed) cfg.seed = *opts.seed;
    if (!opts.out.empty()) cfg.out = opts.out;
    if (!opts.fault.empty()) cfg.fault = opts.fault;
    cfg.validate();
    return cfg;
}

void emit_report(const ivo::SuiteReport& rep, const std::string& out_path) {
    const std::string text = ivo::report_to_json(rep).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ivo::ConfigError("cannot open output path '" + out_path + "'");
        out << text;
    }
}

void print_summary(const ivo::SuiteReport& rep) {
    for (const auto& o : rep.outcomes) {
        std::cerr << (o.ok ? "      ok " : "MISMATCH ") << o.report.name << ": "
                  << to_string(o.report.verdict) << " (expected "
                  << to_string(o.expected) << ")\n";
    }
    std::cerr << rep.outcomes.size() << " checks, " << rep.mismatches()
              << " mismatches\n";
}

int run_modules(const CliOptions& opts, const std::string& module_filter) {
    const ivo::RunConfig cfg = resolve_config(opts);
    const ivo::SuiteReport rep = ivo::run_checks(cfg, module_filter);
    emit_report(rep, cfg.out);
    print_summary(rep);
    return rep.mismatches() == 0 ? 0 : 1;
}

// The solve command additionally runs the configured scalarization and
// embeds the result record next to the solve-module checks.
int run_solve(const CliOptions& opts) {
    const ivo::RunConfig cfg = resolve_config(opts);
    const ivo::SuiteReport rep = ivo::run_checks(cfg, "solve");

    ivo::RioProblem problem;
    problem.f = ivo::catalog_fn(cfg.problem);
    ivo::SolverSettings settings;
    settings.lambda1 = cfg.lambda1;
    settings.lambda2 = cfg.lambda2;
    settings.max_iters = cfg.max_iters;
    settings.grad_tol = cfg.grad_tol;

    ivo::ManifoldPoint init;
    if (cfg.x_init) {
        Eigen::VectorXd coords(cfg.x_init->size());
        for (std::size_t i = 0; i < cfg.x_init->size(); ++i)
            coords(static_cast<Eigen::Index>(i)) = (*cfg.x_init)[i];
        init = ivo::ManifoldPoint{problem.f.model, coords};
    } else {
        ivo::CounterRng rng = ivo::CounterRng::keyed(cfg.seed, "solve", "x_init", 0);
        init = problem.f.sample(rng);
    }

    ivo::SolveResult best;
    bool have_best = false;
    const int starts = std::max(1, cfg.multistart);
    for (int s = 0; s < starts; ++s) {
        ivo::ManifoldPoint x0 = init;
        if (s > 0) {
            ivo::CounterRng rng = ivo::CounterRng::keyed(cfg.seed, "solve", "multistart", s);
            x0 = problem.f.sample(rng);
        }
        const ivo::SolveResult r = ivo::solve_scalarized(problem, settings, x0);
        if (!have_best || r.h_value < best.h_value) {
            best = r;
            have_best = true;
        }
    }

    ivo::Certificate eff = ivo::is_efficient_sampled(
        problem, best.point,
        ivo::CertifyParams{cfg.efficiency_samples, cfg.eq_tol, {}, false, false, true},
        ivo::StreamKey{cfg.seed, "solve", "cli_efficiency"});

    nlohmann::ordered_json j = ivo::report_to_json(rep);
    j["solve_result"] = ivo::solve_result_to_json(best);
    j["solve_result"]["certificates"] =
        nlohmann::ordered_json::array({ivo::certificate_to_json(eff)});
    const std::string text = j.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out);
        if (!out) throw ivo::ConfigError("cannot open output path '" + cfg.out + "'");
        out << text;
    }
    print_summary(rep);
    std::cerr << "solve: " << to_string(best.status) << " at h = " << best.h_value
              << " after " << best.iters << " iterations\n";

    if (best.status != ivo::SolveStatus::Converged) return 3;
    return rep.mismatches() == 0 ? 0 : 1;
}

int run_catalog() {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : ivo::catalog()) {
        arr.push_back(nlohmann::ordered_json{{"key", e.key},
                                             {"kind", e.kind},
                                             {"model", e.model},
                                             {"description", e.description},
                                             {"anchor", e.anchor}});
    }
    std::cout << arr.dump(2) << "\n";
    return 0;
}

int run_replay(const CliOptions& opts, const std::string& check_name, long sample) {
    const ivo::RunConfig cfg = resolve_config(opts);
    const ivo::CheckDef* def = ivo::find_check(check_name);
    if (!def) {
        std::cerr << "replay: unknown check '" << check_name << "'\n";
        return 2;
    }
    const ivo::CheckReport rep = def->run(cfg);
    nlohmann::ordered_json j;
    j["check"] = check_name;
    j["verdict"] = to_string(rep.verdict);
    j["witnesses"] = nlohmann::ordered_json::array();
    bool reproduced = false;
    for (const auto& w : rep.witnesses) {
        if (sample >= 0 && w.sample_index != sample) continue;
        reproduced = true;
        j["witnesses"].push_back(nlohmann::ordered_json{{"what", w.what},
                                                        {"sample", w.sample_index},
                                                        {"residual", w.residual},
                                                        {"data", w.data}});
    }
    j["reproduced"] = reproduced;
    std::cout << j.dump(2) << "\n";
    if (sample < 0) return rep.verdict == ivo::Verdict::Fail ? 0 : 1;
    return reproduced ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval optimization suites on Hadamard manifolds"};
    app.require_subcommand(1);

    CliOptions opts;
    std::string replay_check;
    long replay_sample = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "JSON config file");
        cmd->add_option("--seed", opts.seed, "override the run seed");
        cmd->add_option("--out", opts.out, "write the JSON report to this path");
        cmd->add_option("--fault", opts.fault,
                        "inject a named defect (testing aid): gh_diff");
    };

    std::vector<std::pair<CLI::App*, std::string>> module_cmds;
    for (const std::string& module_name : ivo::suite_module_names()) {
        if (module_name == "solve") continue;
        CLI::App* cmd =
            app.add_subcommand(module_name, "run the " + module_name + " checks");
        add_common(cmd);
        module_cmds.emplace_back(cmd, module_name);
    }
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "run the solve checks plus the configured problem");
    add_common(solve_cmd);
    CLI::App* suite_cmd = app.add_subcommand("suite", "run every check");
    add_common(suite_cmd);
    CLI::App* catalog_cmd = app.add_subcommand("catalog", "list the problem catalog");
    CLI::App* replay_cmd =
        app.add_subcommand("replay", "re-execute one check and reproduce a witness");
    add_common(replay_cmd);
    replay_cmd->add_option("--check", replay_check, "check name, e.g. laws/metric_scale")
        ->required();
    replay_cmd->add_option("--sample", replay_sample,
                           "witness sample index; -1 reproduces any failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // CLI usage problems are config errors
    }

    try {
        for (const auto& [cmd, module_name] : module_cmds)
            if (cmd->parsed()) return run_modules(opts, module_name);
        if (solve_cmd->parsed()) return run_solve(opts);
        if (suite_cmd->parsed()) return run_modules(opts, "");
        if (catalog_cmd->parsed()) return run_catalog();
        if (replay_cmd->parsed()) return run_replay(opts, replay_check, replay_sample);
    } catch (const ivo::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
