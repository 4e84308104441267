#pragma once

#include "lqdc/serialize.hpp"

#include <string>
#include <vector>

namespace lqdc {

struct CheckRow {
    std::string name;
    std::string lhs;
    std::string relation;  // "==", ">=", "<="
    std::string rhs;
    bool pass = false;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<std::string> claims;  // what the run certifies, in words
    Json params;
    std::vector<CheckRow> checks;
    bool all_pass = false;

    void add(std::string name, std::string lhs, std::string rel, std::string rhs, bool pass);
    void recompute();
};

// Thrown on malformed configs (unknown scenario, bad parameter types).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<std::string> scenario_ids();

// Fills defaults, runs the named scenario. Throws ConfigError on schema
// problems; check failures are reported, not thrown.
ScenarioReport run_scenario(const std::string& id, const Json& params, uint64_t seed);

// Config file schema: {"scenario": id, "params": {...}, "seed": int}.
ScenarioReport run_scenario_config(const Json& config);

Json report_to_json(const ScenarioReport& r);
std::string report_to_csv(const ScenarioReport& r);

// One row per (formula, eps, delta) over the grid.
std::string bound_table_csv(const std::vector<std::string>& formulas,
                            const std::vector<double>& eps_grid,
                            const std::vector<double>& delta_grid, int n, int ell);

}  // namespace lqdc
