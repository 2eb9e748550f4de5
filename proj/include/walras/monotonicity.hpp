#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "walras/economy.hpp"
#include "walras/monotonicity_class.hpp"
#include "walras/regions.hpp"

namespace walras {

// Checkers are falsifiers: "refuted" carries a replayable certificate,
// "holds_on_samples" only says no sampled instance violated the definition.

struct PlanConfig {
    std::size_t samples = 24;       // low-discrepancy points, in addition to vertices
    std::size_t tuple_size_max = 3;
    std::size_t weight_steps = 11;  // grid values per weight axis, 0 and 1 included
    double eps_strict = 1e-9;
};

/// Discretized quantifiers: base points in X and a uniform weight grid.
struct SamplePlan {
    std::vector<PriceVector> base_points;
    std::size_t tuple_size_max = 3;
    std::size_t weight_steps = 11;
    double eps_strict = 1e-9;
    double tol_feas = Tolerances{}.feas;

    /// Throws std::invalid_argument if the plan is unusable for region.
    void validate(const ConvexRegion& region) const;
};

/// Region vertices followed by low-discrepancy samples, deduplicated.
SamplePlan make_sample_plan(const ConvexRegion& region, const PlanConfig& cfg = {});

/// All weight vectors with entries k / (steps - 1) summing to one, in
/// lexicographic order. interior_only drops vectors with a zero entry.
std::vector<std::vector<double>> weight_grid(std::size_t m, std::size_t steps, bool interior_only);

enum class Verdict { holds_on_samples, refuted };

struct Witness {
    std::vector<std::size_t> indices;  // into plan.base_points
    std::vector<PriceVector> points;
    std::vector<double> weights;       // empty for the pair checks
    std::optional<PriceVector> combined;
    /// Pair checks: {E(x)^T(y-x), E(y)^T(y-x)}. Tuple checks: E(p_j)^T(p_j - p) per member.
    std::vector<double> dots;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct MonotonicityReport {
    MonotonicityClass class_checked = MonotonicityClass::pseudo;
    Verdict verdict = Verdict::holds_on_samples;
    std::optional<Witness> witness;
    std::size_t samples_used = 0;
    /// Refuted: amount by which the witness misses the tolerance-adjusted test.
    /// Holds: smallest slack seen over all checked instances (infinite if none).
    double margin = 0.0;

    friend bool operator==(const MonotonicityReport&, const MonotonicityReport&) = default;
};

MonotonicityReport check_pseudomonotone(const ExcessDemandModel& e, const ConvexRegion& x, const SamplePlan& plan);
MonotonicityReport check_strictly_pseudomonotone(const ExcessDemandModel& e, const ConvexRegion& x,
                                                 const SamplePlan& plan);
MonotonicityReport check_properly_quasimonotone(const ExcessDemandModel& e, const ConvexRegion& x,
                                                const SamplePlan& plan);
/// Existential characterization: the hull of every tuple holds a point meeting all members.
/// Solved exactly as a small linear program over the hull weights.
MonotonicityReport check_properly_quasimonotone_dual(const ExcessDemandModel& e, const ConvexRegion& x,
                                                     const SamplePlan& plan);
MonotonicityReport check_strict_properly_quasimonotone(const ExcessDemandModel& e, const ConvexRegion& x,
                                                       const SamplePlan& plan);

MonotonicityReport check_class(MonotonicityClass c, const ExcessDemandModel& e, const ConvexRegion& x,
                               const SamplePlan& plan);

/// Re-evaluates a refuted report's witness from scratch. True iff the
/// violation is reproduced with the recorded margin.
bool replay_witness(const MonotonicityReport& report, const ExcessDemandModel& e, const SamplePlan& plan);

}  // namespace walras
