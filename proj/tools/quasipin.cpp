// Configuration-interaction engine for the lithium isoelectronic series
// with natural-occupation analysis: generalized Pauli (Klyachko)
// constraints, quasi-pinning diagnostics, fermionic entanglement measures
// and pinned-subspace projection bounds.
//
// Subcommands: solve, zscan, tables, selftest.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "quasipin/report.hpp"
#include "quasipin/selftest.hpp"

namespace {

// Flat key = value file; CLI flags override file values.
struct ConfigDefaults {
    std::map<std::string, std::string> kv;

    void apply_string(const CLI::App& app, const char* flag, const char* key, std::string& target) const {
        if (app.count(flag) == 0 && kv.count(key))
            target = kv.at(key);
    }
    void apply_int(const CLI::App& app, const char* flag, const char* key, int& target) const {
        if (app.count(flag) == 0 && kv.count(key))
            target = std::stoi(kv.at(key));
    }
    void apply_real(const CLI::App& app, const char* flag, const char* key,
                    std::optional<double>& target) const {
        if (app.count(flag) == 0 && kv.count(key))
            target = std::stod(kv.at(key));
    }
    void apply_flag(const CLI::App& app, const char* flag, const char* key, bool& target) const {
        if (app.count(flag) == 0 && kv.count(key))
            target = kv.at(key) == "true" || kv.at(key) == "1" || kv.at(key) == "yes";
    }
};

int fail_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CI ground states and generalized-Pauli-constraint analysis for Li-like ions"};
    app.require_subcommand(1);

    std::string rank_str = "6b";
    std::string format_str = "json";
    std::string config_path;
    qpin::RunConfig config;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--rank", rank_str, "basis rank: 3s|3p|3d|5|6a|6b|7|8");
        cmd->add_option("--z", config.z, "nuclear charge");
        cmd->add_option("--alpha", config.alpha, "inner screening exponent");
        cmd->add_option("--gamma", config.gamma, "outer screening exponent");
        cmd->add_flag("--optimize", config.optimize, "optimize (alpha, gamma) variationally");
        cmd->add_option("--format", format_str, "output format: json|csv");
        cmd->add_option("--out", config.out, "output path (directory for `tables`)");
        cmd->add_option("--config", config_path, "key = value configuration file");
        cmd->add_flag("--quadrature-check", config.quadrature_check,
                      "validate analytic integrals against the quadrature oracle");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve one rank and report the full analysis");
    add_common(solve);

    CLI::App* zscan =
        app.add_subcommand("zscan", "optimized rank-6b quasi-pinning across nuclear charges");
    add_common(zscan);
    zscan->add_option("--z-min", config.z_min, "first nuclear charge (>= 3)");
    zscan->add_option("--z-max", config.z_max, "last nuclear charge (<= 12)");

    CLI::App* tables = app.add_subcommand(
        "tables", "reproduce the reference tables, polytope and dimension data at Z = 3");
    add_common(tables);

    qpin::SelftestConfig selftest_config;
    CLI::App* selftest = app.add_subcommand("selftest", "run the oracle and invariant suites");
    selftest->add_option("--filter", selftest_config.filter, "run only suites matching substring");
    selftest->add_option("--inject-integral-error", selftest_config.fault_injection,
                         "perturb analytic integrals (testing aid; must cause failure)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
        return 2;
    }

    if (selftest->parsed())
        return qpin::run_selftest(selftest_config, std::cout);

    CLI::App* active = solve->parsed() ? solve : (zscan->parsed() ? zscan : tables);

    if (!config_path.empty()) {
        try {
            ConfigDefaults defaults{qpin::parse_config_file(config_path)};
            defaults.apply_string(*active, "--rank", "rank", rank_str);
            defaults.apply_int(*active, "--z", "z", config.z);
            defaults.apply_real(*active, "--alpha", "alpha", config.alpha);
            defaults.apply_real(*active, "--gamma", "gamma", config.gamma);
            defaults.apply_flag(*active, "--optimize", "optimize", config.optimize);
            defaults.apply_string(*active, "--format", "format", format_str);
            defaults.apply_string(*active, "--out", "out", config.out);
            defaults.apply_flag(*active, "--quadrature-check", "quadrature-check",
                                config.quadrature_check);
            if (zscan->parsed()) {
                defaults.apply_int(*active, "--z-min", "z-min", config.z_min);
                defaults.apply_int(*active, "--z-max", "z-max", config.z_max);
            }
        } catch (const std::exception& e) {
            return fail_usage(e.what());
        }
    }

    const auto rank = qpin::parse_rank(rank_str);
    if (!rank)
        return fail_usage("unknown rank '" + rank_str + "'");
    config.rank = *rank;

    if (format_str == "json")
        config.format = qpin::RunConfig::Format::json;
    else if (format_str == "csv")
        config.format = qpin::RunConfig::Format::csv;
    else
        return fail_usage("unknown format '" + format_str + "'");

    if (config.z < 1)
        return fail_usage("z must be a positive integer");
    if (config.alpha && !(*config.alpha > 0.0))
        return fail_usage("alpha must be positive");
    if (config.gamma && !(*config.gamma > 0.0))
        return fail_usage("gamma must be positive");
    if (solve->parsed() && !config.optimize && !(config.alpha && config.gamma))
        return fail_usage("give --alpha and --gamma together, or use --optimize");

    if (solve->parsed())
        return qpin::cmd_solve(config);
    if (zscan->parsed())
        return qpin::cmd_zscan(config);
    return qpin::cmd_tables(config);
}
