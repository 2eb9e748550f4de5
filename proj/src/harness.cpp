#include "walras/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <sstream>

namespace walras {

namespace {

using MC = MonotonicityClass;

bool holds(const FixtureAnalysis& a, MC c) { return a.reports.at(c).verdict == Verdict::holds_on_samples; }

std::string verdict_name(const FixtureAnalysis& a, MC c) {
    return holds(a, c) ? "holds_on_samples" : "refuted";
}

nlohmann::json cluster_summary(const FixtureAnalysis& a, const std::vector<Cluster>& clusters) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : clusters)
        out.push_back({{"representative", a.estimate.grid_points[c.representative].coords()},
                       {"size", c.members.size()},
                       {"diameter", c.diameter}});
    return out;
}

TheoremCheckResult base(TheoremId id, const FixtureAnalysis& a) {
    TheoremCheckResult r;
    r.theorem_id = id;
    r.fixture_label = a.label;
    return r;
}

}  // namespace

std::string_view to_string(TheoremId id) {
    switch (id) {
        case TheoremId::L2_1: return "L2_1";
        case TheoremId::L2_2: return "L2_2";
        case TheoremId::T4_1: return "T4_1";
        case TheoremId::T4_2: return "T4_2";
        case TheoremId::T4_3: return "T4_3";
    }
    return "unknown";
}

FixtureAnalysis analyze(const Fixture& fixture, const HarnessConfig& cfg) {
    FixtureAnalysis a;
    a.label = fixture.label;
    a.plan = make_sample_plan(fixture.region, cfg.plan);
    for (auto c : kAllClasses) a.reports.emplace(c, check_class(c, fixture.model, fixture.region, a.plan));
    a.positive = is_positive(fixture.model, fixture.region, a.plan.base_points, a.plan.eps_strict);
    const VIProblem prob(fixture.model, fixture.region);
    a.estimate = enumerate_solutions(prob, cfg.grid_spacing, fixture.lipschitz);
    a.stampacchia = stampacchia_clusters(a.estimate);
    a.minty = minty_clusters(a.estimate);
    a.solve = solve_extragradient(prob, fixture.region.anchor(), cfg.solver);
    return a;
}

TheoremCheckResult check_lemma_2_1(const FixtureAnalysis& a) {
    auto r = base(TheoremId::L2_1, a);
    r.premises_established = {{"continuous", true}, {"bounded_convex_region", true}};
    r.premises_hold = true;
    r.conclusion_verified = !a.estimate.stampacchia_members.empty();
    r.details = {{"stampacchia_members", a.estimate.stampacchia_members.size()},
                 {"solver_converged", a.solve.status == SolveStatus::converged},
                 {"solver_residual", a.solve.residual}};
    return r;
}

TheoremCheckResult check_lemma_2_2(const FixtureAnalysis& a) {
    auto r = base(TheoremId::L2_2, a);
    r.premises_hold = holds(a, MC::strict_pseudo);
    r.premises_established = {{"strict_pseudo", r.premises_hold}};
    const bool unique = single_tight_cluster(a.stampacchia, a.estimate.grid_spacing);
    const bool converged = a.solve.status == SolveStatus::converged;
    double gap = std::numeric_limits<double>::infinity();
    if (!a.stampacchia.empty()) gap = distance_to_cluster(a.estimate, a.stampacchia.front(), a.solve.solution);
    r.conclusion_verified = unique && converged && gap <= 2.0 * a.estimate.grid_spacing;
    r.details = {{"unique_cluster", unique},
                 {"clusters", cluster_summary(a, a.stampacchia)},
                 {"solver_converged", converged},
                 {"solver_solution", a.solve.solution.coords()},
                 {"solver_to_cluster", std::isfinite(gap) ? nlohmann::json(gap) : nlohmann::json()}};
    if (!r.premises_hold) r.details["witness_class"] = "strict_pseudo";
    return r;
}

TheoremCheckResult check_theorem_4_1(const FixtureAnalysis& a) {
    auto r = base(TheoremId::T4_1, a);
    const bool checker_holds = holds(a, MC::proper_quasi);
    const bool minty_nonempty = !a.estimate.minty_members.empty();
    r.premises_established = {{"continuous", true}, {"proper_quasi_on_samples", checker_holds}};
    r.premises_hold = true;
    // Certified direction: a Minty member rules out a refutation, and vice versa.
    r.conclusion_verified = !(minty_nonempty && !checker_holds);
    r.details = {{"minty_members", a.estimate.minty_members.size()},
                 {"proper_quasi", verdict_name(a, MC::proper_quasi)},
                 {"minty_clusters", cluster_summary(a, a.minty)},
                 {"biconditional_on_samples", minty_nonempty == checker_holds}};
    return r;
}

TheoremCheckResult check_theorem_4_2(const FixtureAnalysis& a) {
    auto r = base(TheoremId::T4_2, a);
    r.premises_hold = holds(a, MC::strict_proper_quasi);
    r.premises_established = {{"strict_proper_quasi", r.premises_hold}};
    r.conclusion_verified = a.stampacchia.size() <= 1;
    double widest = 0.0;
    for (const auto& c : a.stampacchia) widest = std::max(widest, c.diameter);
    r.details = {{"stampacchia_clusters", a.stampacchia.size()},
                 {"widest_cluster", widest},
                 {"clusters", cluster_summary(a, a.stampacchia)}};
    return r;
}

TheoremCheckResult check_theorem_4_3(const FixtureAnalysis& a) {
    auto r = base(TheoremId::T4_3, a);
    r.gating = false;
    r.premises_hold = a.positive;
    r.premises_established = {{"continuous", true}, {"positive_on_samples", a.positive}};
    const bool sa = holds(a, MC::strict_proper_quasi);
    // No grid probe lies strictly between a point and its cell neighbours, so the
    // whole cell neighbourhood of a Minty solution passes; allow its diagonal.
    const double n = static_cast<double>(a.solve.solution.size());
    const bool sb = single_tight_cluster(a.minty, a.estimate.grid_spacing * std::sqrt(n));
    const bool sc = single_tight_cluster(a.stampacchia, a.estimate.grid_spacing);
    r.conclusion_verified = sa == sb && sb == sc;
    r.details = {{"a_strict_proper_quasi", sa},
                 {"b_unique_minty", sb},
                 {"c_unique_stampacchia", sc},
                 {"minty_clusters", cluster_summary(a, a.minty)},
                 {"stampacchia_clusters", cluster_summary(a, a.stampacchia)}};
    return r;
}

TheoremCheckResult check_lemma_2_2(const Fixture& f, const HarnessConfig& cfg) { return check_lemma_2_2(analyze(f, cfg)); }
TheoremCheckResult check_theorem_4_1(const Fixture& f, const HarnessConfig& cfg) {
    return check_theorem_4_1(analyze(f, cfg));
}
TheoremCheckResult check_theorem_4_2(const Fixture& f, const HarnessConfig& cfg) {
    return check_theorem_4_2(analyze(f, cfg));
}
TheoremCheckResult check_theorem_4_3(const Fixture& f, const HarnessConfig& cfg) {
    return check_theorem_4_3(analyze(f, cfg));
}

CatalogRun run_catalog(const std::vector<Fixture>& catalog, const HarnessConfig& cfg) {
    CatalogRun run;
    for (const auto& f : catalog) {
        run.analyses.push_back(analyze(f, cfg));
        const auto& a = run.analyses.back();
        run.results.push_back(check_lemma_2_1(a));
        run.results.push_back(check_lemma_2_2(a));
        run.results.push_back(check_theorem_4_1(a));
        run.results.push_back(check_theorem_4_2(a));
        run.results.push_back(check_theorem_4_3(a));
    }
    return run;
}

std::size_t count_contradictions(const std::vector<TheoremCheckResult>& results) {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const auto& r) { return r.contradicted(); }));
}

std::string summary_table(const std::vector<TheoremCheckResult>& results) {
    const std::vector<TheoremId> ids{TheoremId::L2_1, TheoremId::L2_2, TheoremId::T4_1, TheoremId::T4_2,
                                     TheoremId::T4_3};
    std::vector<std::string> labels;
    for (const auto& r : results)
        if (std::find(labels.begin(), labels.end(), r.fixture_label) == labels.end())
            labels.push_back(r.fixture_label);
    std::size_t width = 8;
    for (const auto& l : labels) width = std::max(width, l.size());

    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width + 2)) << "fixture";
    for (auto id : ids) os << std::setw(10) << to_string(id);
    os << '\n';
    for (const auto& l : labels) {
        os << std::setw(static_cast<int>(width + 2)) << l;
        for (auto id : ids) {
            std::string cell = "-";
            for (const auto& r : results) {
                if (r.fixture_label != l || r.theorem_id != id) continue;
                if (r.vacuous())
                    cell = "vacuous";
                else if (!r.gating)
                    cell = r.conclusion_verified ? "agree" : "differ";
                else
                    cell = r.conclusion_verified ? "✓" : "✗";
            }
            // Pad by code points so the check marks line up.
            const std::size_t shown = cell == "✓" || cell == "✗" ? 1 : cell.size();
            os << cell << std::string(10 - std::min<std::size_t>(10, shown), ' ');
        }
        os << '\n';
    }
    os << "contradictions: " << count_contradictions(results) << '\n';
    return os.str();
}

nlohmann::json to_json(const TheoremCheckResult& r) {
    nlohmann::json premises = nlohmann::json::array();
    for (const auto& p : r.premises_established) premises.push_back({{"name", p.name}, {"established", p.established}});
    return {{"theorem_id", to_string(r.theorem_id)},
            {"fixture_label", r.fixture_label},
            {"premises_established", premises},
            {"premises_hold", r.premises_hold},
            {"vacuous", r.vacuous()},
            {"gating", r.gating},
            {"conclusion_verified", r.conclusion_verified},
            {"contradicted", r.contradicted()},
            {"details", r.details}};
}

nlohmann::json summary_json(const std::vector<TheoremCheckResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    return {{"results", arr}, {"contradictions", count_contradictions(results)}, {"checks", results.size()}};
}

}  // namespace walras
