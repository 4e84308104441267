#include "lqdc/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using lqdc::Json;

struct Options {
    uint64_t seed = 0;
    std::string out_dir = "reports";
    std::string format = "json";
    bool float_mode = false;
};

std::string render_value(const std::string& v, bool float_mode) {
    if (!float_mode) return v;
    // Exact "p/q" strings become decimals in float mode.
    const auto slash = v.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 >= v.size()) return v;
    try {
        return lqdc::float_str(lqdc::rat_double(lqdc::rat_parse(v)));
    } catch (const std::exception&) {
        return v;
    }
}

void write_report(const lqdc::ScenarioReport& rep, const Options& opt) {
    lqdc::ScenarioReport out = rep;
    if (opt.float_mode)
        for (auto& c : out.checks) {
            c.lhs = render_value(c.lhs, true);
            c.rhs = render_value(c.rhs, true);
        }
    std::filesystem::create_directories(opt.out_dir);
    const std::string base = opt.out_dir + "/" + out.scenario;
    if (opt.format == "json") {
        std::ofstream f(base + ".json");
        f << lqdc::report_to_json(out).dump(2) << '\n';
    } else {
        std::ofstream f(base + ".csv");
        f << lqdc::report_to_csv(out);
    }
}

int run_family(const std::vector<std::string>& ids, const Options& opt) {
    bool all = true;
    for (const auto& id : ids) {
        const lqdc::ScenarioReport rep = lqdc::run_scenario(id, Json(), opt.seed);
        write_report(rep, opt);
        int passed = 0;
        for (const auto& c : rep.checks) passed += c.pass;
        std::cout << id << ": " << (rep.all_pass ? "PASS" : "FAIL") << " (" << passed << "/"
                  << rep.checks.size() << " checks)\n";
        all = all && rep.all_pass;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator and verifier for locally decodable codes, one-query "
                 "quantum decoding, and private information retrieval"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--seed", opt.seed, "Seed for seeded corruption patterns and samples");
    app.add_option("--out", opt.out_dir, "Report output directory");
    app.add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    bool exact_mode = true;
    auto* fl = app.add_flag("--float", "Render probabilities as decimals in reports");
    app.add_flag("--exact", exact_mode, "Keep exact p/q strings in reports (default)");

    const std::map<std::string, std::vector<std::string>> families = {
        {"gadget", {"gadget-exactness", "xor-gadget"}},
        {"ldc", {"hadamard-ldc", "kt-smoothing", "alphabet-binarize"}},
        {"lqdc", {"compiler-identity"}},
        {"rac", {"rac-recovery", "nayak-ledger"}},
        {"pir", {"pir-xor2", "pir-cube", "pir-rac", "pir-smooth"}},
        {"bounds", {"bounds-negative"}},
    };
    const std::map<std::string, std::string> family_help = {
        {"gadget", "One-query function evaluation and the XOR extraction"},
        {"ldc", "Classical decoding, smoothing, and alphabet reduction"},
        {"lqdc", "Two-classical-queries-to-one-quantum-query compilation"},
        {"rac", "Random access codes from quantum decoders, entropy ledger"},
        {"pir", "Multi-server schemes, quantum reductions, extractions"},
        {"bounds", "Closed-form length bounds and negative controls"},
    };
    for (const auto& [name, ids] : families)
        app.add_subcommand(name, family_help.at(name));

    auto* run = app.add_subcommand("run", "Run a scenario from a JSON config file");
    std::string config_path;
    run->add_option("config", config_path, "Config file: {scenario, params, seed}")
        ->required();

    auto* table = app.add_subcommand("bound-table", "Emit the bound formulas over a grid");
    std::vector<std::string> tbl_formulas = {"ldc2", "ldc2_xor"};
    std::vector<std::string> tbl_eps = {"1/8", "1/4", "1/2"};
    std::vector<std::string> tbl_delta = {"1/4"};
    int tbl_n = 64;
    int tbl_ell = 1;
    table->add_option("--formulas", tbl_formulas, "Formula ids");
    table->add_option("--eps", tbl_eps, "Advantage grid");
    table->add_option("--delta", tbl_delta, "Corruption grid");
    table->add_option("--n", tbl_n, "Message length");
    table->add_option("--ell", tbl_ell, "Symbol width (alphabet formula)");

    auto* list = app.add_subcommand("list", "List scenario ids");

    CLI11_PARSE(app, argc, argv);
    opt.float_mode = fl->count() > 0;

    try {
        if (list->parsed()) {
            for (const auto& id : lqdc::scenario_ids()) std::cout << id << '\n';
            return 0;
        }
        if (table->parsed()) {
            std::vector<double> eps_grid, delta_grid;
            for (const auto& e : tbl_eps) eps_grid.push_back(lqdc::rat_double(lqdc::rat_parse(e)));
            for (const auto& d : tbl_delta)
                delta_grid.push_back(lqdc::rat_double(lqdc::rat_parse(d)));
            const std::string csv =
                lqdc::bound_table_csv(tbl_formulas, eps_grid, delta_grid, tbl_n, tbl_ell);
            std::filesystem::create_directories(opt.out_dir);
            std::ofstream f(opt.out_dir + "/bound-table.csv");
            f << csv;
            std::cout << csv;
            return 0;
        }
        if (run->parsed()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "cannot open config: " << config_path << '\n';
                return 2;
            }
            Json config;
            try {
                config = Json::parse(f);
            } catch (const Json::exception& e) {
                std::cerr << "config parse error: " << e.what() << '\n';
                return 2;
            }
            lqdc::ScenarioReport rep;
            try {
                rep = lqdc::run_scenario_config(config);
            } catch (const lqdc::ConfigError& e) {
                std::cerr << "config error: " << e.what() << '\n';
                return 2;
            }
            write_report(rep, opt);
            int passed = 0;
            for (const auto& c : rep.checks) passed += c.pass;
            std::cout << rep.scenario << ": " << (rep.all_pass ? "PASS" : "FAIL") << " ("
                      << passed << "/" << rep.checks.size() << " checks)\n";
            return rep.all_pass ? 0 : 1;
        }
        for (const auto& [name, ids] : families)
            if (app.get_subcommand(name)->parsed()) return run_family(ids, opt);
    } catch (const lqdc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
