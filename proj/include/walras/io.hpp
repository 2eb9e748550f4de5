#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "walras/economy.hpp"
#include "walras/harness.hpp"
#include "walras/monotonicity.hpp"
#include "walras/regions.hpp"
#include "walras/vi.hpp"

namespace walras {

/// Malformed or inconsistent problem / catalog description.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ProblemFile {
    std::string label = "problem";
    ExcessDemandModel model;
    ConvexRegion region;
    SolverOptions solver;
    std::optional<PriceVector> start;
    PlanConfig plan;
    double grid_spacing = 0.01;
    double lipschitz = 1.0;
};

ConvexRegion parse_region(const nlohmann::json& j);
ProblemFile parse_problem(const nlohmann::json& j);
ProblemFile load_problem(const std::string& path);

struct CatalogFile {
    std::vector<Fixture> fixtures;
    HarnessConfig config;
};

CatalogFile parse_catalog(const nlohmann::json& j);
CatalogFile load_catalog(const std::string& path);

nlohmann::json to_json(const VISolveResult& r, bool include_trace = false);
VISolveResult solve_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MonotonicityReport& r);
MonotonicityReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolutionSetEstimate& est);

/// "iteration,residual" rows with 17 significant digits.
void write_trace_csv(std::ostream& os, const std::vector<double>& trace);

}  // namespace walras
