#pragma once

#include <cstddef>
#include <vector>

#include "walras/economy.hpp"
#include "walras/regions.hpp"

namespace walras {

/// Pairing of an excess-demand model with a bounded, nonempty region.
class VIProblem {
public:
    VIProblem(ExcessDemandModel model, ConvexRegion region);

    const ExcessDemandModel& model() const noexcept { return model_; }
    const ConvexRegion& region() const noexcept { return region_; }
    std::size_t dim() const noexcept { return region_.dim(); }

private:
    ExcessDemandModel model_;
    ConvexRegion region_;
};

struct SolverOptions {
    double step = 0.1;
    std::size_t budget = 100000;
    double tol = 1e-8;
};

enum class SolveStatus { converged, budget_exhausted };

struct VISolveResult {
    PriceVector solution;
    double residual = 0.0;
    double minty_gap = 0.0;
    std::size_t iterations = 0;
    std::vector<double> trace;  // residual after each iteration
    SolveStatus status = SolveStatus::budget_exhausted;

    friend bool operator==(const VISolveResult&, const VISolveResult&) = default;
};

/// Korpelevich extragradient: y = P(x - s E(x)), x = P(x - s E(y)).
/// Returns the best iterate seen when the budget runs out.
VISolveResult solve_extragradient(const VIProblem& prob, const PriceVector& start, const SolverOptions& opts = {});

/// Natural-map residual ||x - P(x - E(x))||.
double residual(const VIProblem& prob, const PriceVector& x);

/// max(0, max_p E(p)^T (x - p)) over the probe set.
double minty_gap(const VIProblem& prob, const PriceVector& x, const std::vector<PriceVector>& probe);

/// Probe set used for reported Minty gaps: vertices plus 64 low-discrepancy points.
std::vector<PriceVector> default_probe(const ConvexRegion& region);

struct VerifyResult {
    bool holds = false;
    double worst = 0.0;  // minimum of the tested products
    PriceVector worst_point;
};

/// min over probe of E(x)^T (p - x) >= -tol.
VerifyResult verify_stampacchia(const VIProblem& prob, const PriceVector& x, const std::vector<PriceVector>& probe,
                                double tol);
/// min over probe of E(p)^T (p - x) >= -tol.
VerifyResult verify_minty(const VIProblem& prob, const PriceVector& x, const std::vector<PriceVector>& probe,
                          double tol);

/// Feasible lattice of a bounded region. `extreme` indexes points whose convex
/// hull contains the whole grid, so linear functions attain their grid minimum there.
struct RegionGrid {
    std::vector<PriceVector> points;
    std::vector<std::size_t> extreme;
    double spacing = 0.0;
};

RegionGrid region_grid(const ConvexRegion& region, double spacing);

struct SolutionSetEstimate {
    std::vector<PriceVector> grid_points;
    std::vector<std::size_t> stampacchia_members;  // indices into grid_points
    std::vector<std::size_t> minty_members;
    std::vector<double> stampacchia_worst;  // per grid point
    std::vector<double> minty_worst;
    double grid_spacing = 0.0;
    double tolerance = 0.0;
};

/// Dimension cap for exhaustive enumeration.
inline constexpr std::size_t kOracleMaxDim = 3;

/// Classifies every grid point against both inequalities with the full grid as
/// probe and tolerance grid_spacing * lipschitz.
SolutionSetEstimate enumerate_solutions(const VIProblem& prob, double grid_spacing, double lipschitz);

struct Cluster {
    std::vector<std::size_t> members;
    std::size_t representative = 0;  // member with the smallest violation
    double diameter = 0.0;
};

/// Single-linkage clusters of a member set with linkage threshold 2 * grid_spacing.
std::vector<Cluster> cluster_members(const SolutionSetEstimate& est, const std::vector<std::size_t>& members,
                                     const std::vector<double>& worst);

std::vector<Cluster> stampacchia_clusters(const SolutionSetEstimate& est);
std::vector<Cluster> minty_clusters(const SolutionSetEstimate& est);

/// One cluster with diameter at most 2 * grid_spacing.
bool single_tight_cluster(const std::vector<Cluster>& clusters, double grid_spacing);

bool uniqueness_probe(const SolutionSetEstimate& est);
bool uniqueness_probe(const VIProblem& prob, double grid_spacing, double lipschitz);

/// Distance from x to the nearest member of the cluster.
double distance_to_cluster(const SolutionSetEstimate& est, const Cluster& c, const PriceVector& x);

/// Worker count for parallel enumeration; WALRAS_VI_THREADS caps it.
std::size_t worker_count();

}  // namespace walras
