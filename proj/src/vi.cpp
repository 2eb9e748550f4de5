#include "walras/vi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace walras {

namespace {

constexpr std::size_t kMaxGridPoints = 4'000'000;
constexpr double kLinkSlack = 1e-9;

std::vector<double> axis_values(double lo, double hi, double spacing) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("grid needs a bounded region");
    if (hi - lo <= 0.0) return {lo};
    const auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / spacing - 1e-9));
    std::vector<double> out(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k)
        out[k] = k == intervals ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(intervals);
    return out;
}

// Cartesian product of per-axis values, last axis fastest.
std::vector<PriceVector> product_grid(const std::vector<std::vector<double>>& axes) {
    std::size_t total = 1;
    for (const auto& a : axes) {
        total *= a.size();
        if (total > kMaxGridPoints) throw std::invalid_argument("oracle grid too large; use a coarser spacing");
    }
    std::vector<PriceVector> out;
    out.reserve(total);
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t t = 0; t < total; ++t) {
        std::vector<double> x(axes.size());
        for (std::size_t j = 0; j < axes.size(); ++j) x[j] = axes[j][idx[j]];
        out.emplace_back(std::move(x));
        for (std::size_t j = axes.size(); j-- > 0;) {
            if (++idx[j] < axes[j].size()) break;
            idx[j] = 0;
        }
    }
    return out;
}

template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, count / 64));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct DisjointSet {
    std::vector<std::size_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

VIProblem::VIProblem(ExcessDemandModel model, ConvexRegion region)
    : model_(std::move(model)), region_(std::move(region)) {
    if (model_.dim() != region_.dim()) throw DimensionMismatch(region_.dim(), model_.dim());
    if (!region_.bounded()) throw std::invalid_argument("variational inequality needs a bounded region");
}

double residual(const VIProblem& prob, const PriceVector& x) {
    return distance(x, project(prob.region(), x - prob.model()(x)));
}

double minty_gap(const VIProblem& prob, const PriceVector& x, const std::vector<PriceVector>& probe) {
    double gap = 0.0;
    for (const auto& p : probe) gap = std::max(gap, directional(prob.model()(p), p, x));
    return gap;
}

std::vector<PriceVector> default_probe(const ConvexRegion& region) {
    auto out = vertices(region);
    for (auto& p : low_discrepancy_points(region, 64)) out.push_back(std::move(p));
    return out;
}

VISolveResult solve_extragradient(const VIProblem& prob, const PriceVector& start, const SolverOptions& opts) {
    if (start.size() != prob.dim()) throw DimensionMismatch(prob.dim(), start.size());
    if (!contains(prob.region(), start, 1e-9)) throw std::invalid_argument("solver start point is not feasible");
    if (!(opts.step > 0.0)) throw std::invalid_argument("solver step must be positive");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
    const auto& e = prob.model();
    const auto& region = prob.region();

    VISolveResult res;
    PriceVector x = start;
    double r = residual(prob, x);
    PriceVector best = x;
    double best_r = r;
    res.status = r <= opts.tol ? SolveStatus::converged : SolveStatus::budget_exhausted;
    while (res.status != SolveStatus::converged && res.iterations < opts.budget) {
        const PriceVector y = project(region, x - opts.step * e(x));
        x = project(region, x - opts.step * e(y));
        r = residual(prob, x);
        ++res.iterations;
        res.trace.push_back(r);
        if (r < best_r) {
            best_r = r;
            best = x;
        }
        if (r <= opts.tol) res.status = SolveStatus::converged;
    }
    res.solution = res.status == SolveStatus::converged ? x : best;
    res.residual = res.status == SolveStatus::converged ? r : best_r;
    res.minty_gap = minty_gap(prob, res.solution, default_probe(region));
    return res;
}

VerifyResult verify_stampacchia(const VIProblem& prob, const PriceVector& x, const std::vector<PriceVector>& probe,
                                double tol) {
    if (probe.empty()) throw std::invalid_argument("verification needs a nonempty probe set");
    const PriceVector field = prob.model()(x);
    VerifyResult out{false, std::numeric_limits<double>::infinity(), probe.front()};
    for (const auto& p : probe) {
        const double v = directional(field, x, p);
        if (v < out.worst) {
            out.worst = v;
            out.worst_point = p;
        }
    }
    out.holds = out.worst >= -tol;
    return out;
}

VerifyResult verify_minty(const VIProblem& prob, const PriceVector& x, const std::vector<PriceVector>& probe,
                          double tol) {
    if (probe.empty()) throw std::invalid_argument("verification needs a nonempty probe set");
    VerifyResult out{false, std::numeric_limits<double>::infinity(), probe.front()};
    for (const auto& p : probe) {
        const double v = directional(prob.model()(p), x, p);
        if (v < out.worst) {
            out.worst = v;
            out.worst_point = p;
        }
    }
    out.holds = out.worst >= -tol;
    return out;
}

RegionGrid region_grid(const ConvexRegion& region, double spacing) {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("grid spacing must be positive");
    if (!region.bounded()) throw std::invalid_argument("grid needs a bounded region");
    const std::size_t n = region.dim();
    RegionGrid g;
    g.spacing = spacing;
    if (region.as_simplex()) {
        const auto k = static_cast<std::size_t>(std::ceil(1.0 / spacing - 1e-9));
        std::vector<std::size_t> parts(n, 0);
        auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
            if (g.points.size() > kMaxGridPoints) throw std::invalid_argument("oracle grid too large");
            if (pos + 1 == n) {
                parts[pos] = left;
                std::vector<double> x(n);
                for (std::size_t j = 0; j < n; ++j)
                    x[j] = static_cast<double>(parts[j]) / static_cast<double>(k);
                if (std::count(parts.begin(), parts.end(), std::size_t{0}) + 1 == static_cast<long>(n) || n == 1)
                    g.extreme.push_back(g.points.size());
                g.points.emplace_back(std::move(x));
                return;
            }
            for (std::size_t v = 0; v <= left; ++v) {
                parts[pos] = v;
                self(self, pos + 1, left - v);
            }
        };
        rec(rec, 0, k);
        return g;
    }
    const auto lo = region.bbox_lower();
    const auto hi = region.bbox_upper();
    std::vector<std::vector<double>> axes;
    for (std::size_t j = 0; j < n; ++j) axes.push_back(axis_values(lo[j], hi[j], spacing));
    if (const auto* b = region.as_box()) {
        g.points = product_grid(axes);
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            bool corner = true;
            for (std::size_t j = 0; j < n && corner; ++j)
                corner = g.points[i][j] == b->lower()[j] || g.points[i][j] == b->upper()[j];
            if (corner) g.extreme.push_back(i);
        }
        return g;
    }
    for (auto& p : product_grid(axes))
        if (contains(region, p, 1e-9)) g.points.push_back(std::move(p));
    const auto verts = vertices(region);
    for (const auto& v : verts) {
        std::size_t at = g.points.size();
        for (std::size_t i = 0; i < g.points.size(); ++i)
            if (distance(g.points[i], v) < 1e-9) at = i;
        if (at == g.points.size()) g.points.push_back(v);
        g.extreme.push_back(at);
    }
    if (verts.empty()) {
        g.extreme.resize(g.points.size());
        std::iota(g.extreme.begin(), g.extreme.end(), 0);
    }
    return g;
}

SolutionSetEstimate enumerate_solutions(const VIProblem& prob, double grid_spacing, double lipschitz) {
    if (prob.dim() > kOracleMaxDim)
        throw std::invalid_argument("exhaustive enumeration is limited to dimension " + std::to_string(kOracleMaxDim));
    if (!(lipschitz > 0.0) || !std::isfinite(lipschitz))
        throw std::invalid_argument("Lipschitz constant must be positive");
    RegionGrid grid = region_grid(prob.region(), grid_spacing);
    if (grid.points.empty()) throw std::invalid_argument("oracle grid contains no feasible points");

    SolutionSetEstimate est;
    est.grid_spacing = grid_spacing;
    est.tolerance = grid_spacing * lipschitz;
    const std::size_t g = grid.points.size();
    const std::size_t n = prob.dim();
    std::vector<PriceVector> fields(g);
    parallel_for(g, [&](std::size_t i) { fields[i] = prob.model()(grid.points[i]); });

    est.stampacchia_worst.assign(g, 0.0);
    est.minty_worst.assign(g, 0.0);
    const auto& pts = grid.points;
    parallel_for(g, [&](std::size_t i) {
        const auto& x = pts[i];
        double s = std::numeric_limits<double>::infinity();
        for (std::size_t k : grid.extreme) s = std::min(s, directional(fields[i], x, pts[k]));
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < g; ++k) {
            double v = 0.0;
            for (std::size_t j = 0; j < n; ++j) v += fields[k][j] * (pts[k][j] - x[j]);
            m = std::min(m, v);
        }
        est.stampacchia_worst[i] = s;
        est.minty_worst[i] = m;
    });
    for (std::size_t i = 0; i < g; ++i) {
        if (est.stampacchia_worst[i] >= -est.tolerance) est.stampacchia_members.push_back(i);
        if (est.minty_worst[i] >= -est.tolerance) est.minty_members.push_back(i);
    }
    est.grid_points = std::move(grid.points);
    return est;
}

std::vector<Cluster> cluster_members(const SolutionSetEstimate& est, const std::vector<std::size_t>& members,
                                     const std::vector<double>& worst) {
    const double link = 2.0 * est.grid_spacing * (1.0 + kLinkSlack);
    DisjointSet ds(members.size());
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
            if (distance(est.grid_points[members[a]], est.grid_points[members[b]]) <= link) ds.unite(a, b);
    std::vector<Cluster> out;
    std::vector<std::size_t> slot(members.size(), members.size());
    for (std::size_t a = 0; a < members.size(); ++a) {
        const std::size_t root = ds.find(a);
        if (slot[root] == members.size()) {
            slot[root] = out.size();
            out.push_back({});
        }
        out[slot[root]].members.push_back(members[a]);
    }
    for (auto& c : out) {
        c.representative = c.members.front();
        for (std::size_t i : c.members)
            if (worst[i] > worst[c.representative]) c.representative = i;
        for (std::size_t a = 0; a < c.members.size(); ++a)
            for (std::size_t b = a + 1; b < c.members.size(); ++b)
                c.diameter = std::max(c.diameter,
                                      distance(est.grid_points[c.members[a]], est.grid_points[c.members[b]]));
    }
    return out;
}

std::vector<Cluster> stampacchia_clusters(const SolutionSetEstimate& est) {
    return cluster_members(est, est.stampacchia_members, est.stampacchia_worst);
}

std::vector<Cluster> minty_clusters(const SolutionSetEstimate& est) {
    return cluster_members(est, est.minty_members, est.minty_worst);
}

bool single_tight_cluster(const std::vector<Cluster>& clusters, double grid_spacing) {
    return clusters.size() == 1 && clusters.front().diameter <= 2.0 * grid_spacing * (1.0 + kLinkSlack);
}

bool uniqueness_probe(const SolutionSetEstimate& est) {
    return single_tight_cluster(stampacchia_clusters(est), est.grid_spacing);
}

bool uniqueness_probe(const VIProblem& prob, double grid_spacing, double lipschitz) {
    return uniqueness_probe(enumerate_solutions(prob, grid_spacing, lipschitz));
}

double distance_to_cluster(const SolutionSetEstimate& est, const Cluster& c, const PriceVector& x) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i : c.members) best = std::min(best, distance(est.grid_points[i], x));
    return best;
}

std::size_t worker_count() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WALRAS_VI_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(cap));
    }
    return hw;
}

}  // namespace walras
