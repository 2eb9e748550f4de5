#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "walras/economy.hpp"
#include "walras/monotonicity.hpp"
#include "walras/vi.hpp"

namespace walras {

enum class TheoremId { L2_1, L2_2, T4_1, T4_2, T4_3 };

std::string_view to_string(TheoremId id);

struct HarnessConfig {
    PlanConfig plan;
    double grid_spacing = 0.01;
    SolverOptions solver;
};

/// Everything the theorem checks need for one fixture, computed once.
struct FixtureAnalysis {
    std::string label;
    SamplePlan plan;
    std::map<MonotonicityClass, MonotonicityReport> reports;
    bool positive = false;
    SolutionSetEstimate estimate;
    std::vector<Cluster> stampacchia;
    std::vector<Cluster> minty;
    VISolveResult solve;
};

FixtureAnalysis analyze(const Fixture& fixture, const HarnessConfig& cfg = {});

struct Premise {
    std::string name;
    bool established = false;
};

struct TheoremCheckResult {
    TheoremId theorem_id = TheoremId::L2_1;
    std::string fixture_label;
    std::vector<Premise> premises_established;
    bool premises_hold = false;
    bool conclusion_verified = false;
    /// Evidence-only checks (the T4_3 agreement triple) never gate.
    bool gating = true;
    nlohmann::json details;

    bool vacuous() const { return !premises_hold; }
    bool contradicted() const { return gating && premises_hold && !conclusion_verified; }
};

TheoremCheckResult check_lemma_2_1(const FixtureAnalysis& a);
TheoremCheckResult check_lemma_2_2(const FixtureAnalysis& a);
TheoremCheckResult check_theorem_4_1(const FixtureAnalysis& a);
TheoremCheckResult check_theorem_4_2(const FixtureAnalysis& a);
TheoremCheckResult check_theorem_4_3(const FixtureAnalysis& a);

TheoremCheckResult check_lemma_2_2(const Fixture& f, const HarnessConfig& cfg = {});
TheoremCheckResult check_theorem_4_1(const Fixture& f, const HarnessConfig& cfg = {});
TheoremCheckResult check_theorem_4_2(const Fixture& f, const HarnessConfig& cfg = {});
TheoremCheckResult check_theorem_4_3(const Fixture& f, const HarnessConfig& cfg = {});

struct CatalogRun {
    std::vector<TheoremCheckResult> results;  // five per fixture, fixture order preserved
    std::vector<FixtureAnalysis> analyses;
};

CatalogRun run_catalog(const std::vector<Fixture>& catalog, const HarnessConfig& cfg = {});

std::size_t count_contradictions(const std::vector<TheoremCheckResult>& results);

/// Theorem x fixture grid: ✓ / ✗ / vacuous, and agree / differ for T4_3.
std::string summary_table(const std::vector<TheoremCheckResult>& results);

nlohmann::json to_json(const TheoremCheckResult& r);
nlohmann::json summary_json(const std::vector<TheoremCheckResult>& results);

}  // namespace walras
