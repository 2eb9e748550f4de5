#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "walras/price_vector.hpp"

namespace walras {

/// Default feasibility and projection tolerances. Both are configuration values.
struct Tolerances {
    double feas = 1e-10;
    double proj = 1e-8;
};

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

class EmptyRegionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The unit simplex {x : x_j >= 0, sum x_j = 1}.
class Simplex {
public:
    explicit Simplex(std::size_t n);
    std::size_t dim() const noexcept { return n_; }

private:
    std::size_t n_;
};

/// Box {x : a_j <= x_j <= b_j}. Upper bounds may be kUnbounded.
class Box {
public:
    Box(std::vector<double> lower, std::vector<double> upper);

    std::size_t dim() const noexcept { return lower_.size(); }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }
    bool bounded() const noexcept;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

struct HalfSpace {
    std::vector<double> normal;  // unit length
    double offset;               // normal . x <= offset
};

struct DykstraOptions {
    std::size_t max_cycles = 200000;
    /// Stop once a full cycle moves the iterate by less than this.
    double stall = 1e-15;
};

/// Intersection of half-spaces A x <= b, optionally with per-coordinate
/// bounds folded in as extra rows. Nonemptiness is certified at construction.
class Polyhedron {
public:
    Polyhedron(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
               std::vector<double> lower = {}, std::vector<double> upper = {},
               Tolerances tol = {});

    std::size_t dim() const noexcept { return n_; }
    const std::vector<HalfSpace>& rows() const noexcept { return rows_; }
    const PriceVector& feasible_point() const noexcept { return feasible_; }
    const std::vector<double>& bbox_lower() const noexcept { return bbox_lower_; }
    const std::vector<double>& bbox_upper() const noexcept { return bbox_upper_; }
    bool bounded() const noexcept;
    /// Vertices, when the region is bounded and small enough to enumerate.
    const std::vector<PriceVector>& vertices() const noexcept { return vertices_; }

private:
    std::size_t n_ = 0;
    std::vector<HalfSpace> rows_;
    PriceVector feasible_;
    std::vector<double> bbox_lower_;
    std::vector<double> bbox_upper_;
    std::vector<PriceVector> vertices_;
};

/// Best iterate and diagnostics when the Dykstra budget runs out.
class ProjectionBudgetError : public std::runtime_error {
public:
    ProjectionBudgetError(PriceVector best, double residual);
    const PriceVector& best() const noexcept { return best_; }
    double residual() const noexcept { return residual_; }

private:
    PriceVector best_;
    double residual_;
};

struct DykstraResult {
    PriceVector point;
    std::size_t cycles = 0;
    double max_violation = 0.0;
    double last_change = 0.0;
    bool converged = false;
};

enum class RegionKind { simplex, box, polyhedron };

/// A feasible set: simplex, box, or polyhedron. Immutable.
class ConvexRegion {
public:
    ConvexRegion(Simplex s) : impl_(std::move(s)) {}
    ConvexRegion(Box b) : impl_(std::move(b)) {}
    ConvexRegion(Polyhedron p) : impl_(std::move(p)) {}

    std::size_t dim() const noexcept;
    RegionKind kind() const noexcept { return static_cast<RegionKind>(impl_.index()); }
    std::string kind_name() const;
    bool bounded() const noexcept;

    const Simplex* as_simplex() const noexcept { return std::get_if<Simplex>(&impl_); }
    const Box* as_box() const noexcept { return std::get_if<Box>(&impl_); }
    const Polyhedron* as_polyhedron() const noexcept { return std::get_if<Polyhedron>(&impl_); }

    /// Axis-aligned bounding box; entries are infinite along unbounded directions.
    std::vector<double> bbox_lower() const;
    std::vector<double> bbox_upper() const;

    /// A point guaranteed to lie in the region.
    PriceVector anchor() const;

private:
    std::variant<Simplex, Box, Polyhedron> impl_;
};

PriceVector project_simplex(const PriceVector& x, const Simplex& s);
PriceVector project_box(const PriceVector& x, const Box& k);
/// Throws ProjectionBudgetError when the cycle budget is exhausted.
PriceVector project_polyhedron(const PriceVector& x, const Polyhedron& p, const DykstraOptions& opts = {});
DykstraResult project_polyhedron_detailed(const PriceVector& x, const Polyhedron& p,
                                          const DykstraOptions& opts = {});

/// Euclidean projection onto any region kind.
PriceVector project(const ConvexRegion& region, const PriceVector& x);

bool contains(const ConvexRegion& region, const PriceVector& x, double tol = Tolerances{}.feas);

/// Finitely many points with weights on the probability simplex.
class ConvexCombination {
public:
    ConvexCombination(std::vector<PriceVector> points, std::vector<double> weights,
                      double tol = Tolerances{}.feas);

    const std::vector<PriceVector>& points() const noexcept { return points_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    PriceVector value() const;

private:
    std::vector<PriceVector> points_;
    std::vector<double> weights_;
};

PriceVector combine(const ConvexCombination& c);

/// Extreme points of a bounded region (simplex vertices, box corners,
/// enumerated polyhedron vertices). Empty when not enumerable.
std::vector<PriceVector> vertices(const ConvexRegion& region);

/// Radical-inverse value of index in the given base.
double radical_inverse(std::size_t index, unsigned base);

/// Deterministic Halton-sequence points inside a bounded region.
std::vector<PriceVector> low_discrepancy_points(const ConvexRegion& region, std::size_t count);

/// Halton points filling the box [lo, hi]^n, not restricted to any region.
std::vector<PriceVector> halton_cube(std::size_t n, std::size_t count, double lo, double hi,
                                     std::size_t skip = 1);

}  // namespace walras
