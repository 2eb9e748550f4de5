#include "walras/regions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace walras {

namespace {

constexpr std::array<unsigned, 24> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                              41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

// Upper limit on rows produced during Fourier-Motzkin elimination.
constexpr std::size_t kEliminationRowCap = 20000;
// Upper limit on active-set combinations tried during vertex enumeration.
constexpr std::size_t kVertexComboCap = 200000;

struct Row {
    std::vector<double> a;
    double b;
};

bool normalize(Row& r) {
    double s = 0.0;
    for (double v : r.a) s += v * v;
    s = std::sqrt(s);
    if (s < 1e-14) return false;
    for (double& v : r.a) v /= s;
    r.b /= s;
    return true;
}

void dedupe(std::vector<Row>& rows) {
    std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    std::vector<Row> out;
    for (auto& r : rows) {
        if (!out.empty()) {
            auto& last = out.back();
            bool same = true;
            for (std::size_t i = 0; i < r.a.size() && same; ++i)
                same = std::abs(last.a[i] - r.a[i]) < 1e-12;
            if (same) {
                last.b = std::min(last.b, r.b);
                continue;
            }
        }
        out.push_back(std::move(r));
    }
    rows = std::move(out);
}

// Bounds on coordinate k implied by the rows, by eliminating every other variable.
std::pair<double, double> eliminate_to(std::vector<Row> rows, std::size_t n, std::size_t k) {
    for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        std::vector<Row> pos, neg, next;
        for (auto& r : rows) {
            if (r.a[j] > 1e-12)
                pos.push_back(r);
            else if (r.a[j] < -1e-12)
                neg.push_back(r);
            else {
                r.a[j] = 0.0;
                next.push_back(r);
            }
        }
        if (pos.size() * neg.size() + next.size() > kEliminationRowCap)
            return {-kUnbounded, kUnbounded};
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                Row r{std::vector<double>(n), 0.0};
                const double sp = 1.0 / p.a[j];
                const double sq = -1.0 / q.a[j];
                for (std::size_t i = 0; i < n; ++i) r.a[i] = p.a[i] * sp + q.a[i] * sq;
                r.a[j] = 0.0;
                r.b = p.b * sp + q.b * sq;
                if (normalize(r)) next.push_back(std::move(r));
            }
        }
        rows = std::move(next);
        dedupe(rows);
    }
    double lo = -kUnbounded, hi = kUnbounded;
    for (const auto& r : rows) {
        if (r.a[k] > 1e-12)
            hi = std::min(hi, r.b / r.a[k]);
        else if (r.a[k] < -1e-12)
            lo = std::max(lo, r.b / r.a[k]);
    }
    return {lo, hi};
}

// Solves the dense square system in place; false when (numerically) singular.
bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs, std::vector<double>& out) {
    const std::size_t n = rhs.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (std::abs(m[piv][c]) < 1e-10) return false;
        std::swap(m[piv], m[c]);
        std::swap(rhs[piv], rhs[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t i = c; i < n; ++i) m[r][i] -= f * m[c][i];
            rhs[r] -= f * rhs[c];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t c = n; c-- > 0;) {
        double s = rhs[c];
        for (std::size_t i = c + 1; i < n; ++i) s -= m[c][i] * out[i];
        out[c] = s / m[c][c];
    }
    return true;
}

double max_violation(const std::vector<HalfSpace>& rows, std::span<const double> x) {
    double worst = 0.0;
    for (const auto& h : rows) worst = std::max(worst, dot(h.normal, x) - h.offset);
    return worst;
}

// Projection onto a single half-space; returns the multiplier-scaled step length.
double project_half_space(const HalfSpace& h, std::vector<double>& x) {
    const double excess = dot(h.normal, x) - h.offset;
    if (excess <= 0.0) return 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= excess * h.normal[i];
    return excess;
}

std::size_t choose(std::size_t m, std::size_t k) {
    if (k > m) return 0;
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(m - i) / static_cast<double>(i + 1);
    return r > 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(r + 0.5);
}

std::vector<PriceVector> enumerate_vertices(const std::vector<HalfSpace>& rows, std::size_t n, double tol) {
    std::vector<PriceVector> out;
    const std::size_t m = rows.size();
    if (m < n || choose(m, n) > kVertexComboCap) return out;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> sol;
    while (true) {
        std::vector<std::vector<double>> mat;
        std::vector<double> rhs;
        for (std::size_t i : idx) {
            mat.push_back(rows[i].normal);
            rhs.push_back(rows[i].offset);
        }
        if (solve_square(mat, rhs, sol) && max_violation(rows, sol) <= tol) {
            bool dup = false;
            for (const auto& v : out) dup = dup || distance(v.view(), sol) < 1e-9;
            if (!dup) out.emplace_back(sol);
        }
        std::size_t pos = n;
        while (pos > 0 && idx[pos - 1] == m - n + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < n; ++i) idx[i] = idx[i - 1] + 1;
    }
    std::sort(out.begin(), out.end(), [](const PriceVector& a, const PriceVector& b) {
        return a.coords() < b.coords();
    });
    return out;
}

}  // namespace

Simplex::Simplex(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("simplex dimension must be at least 1");
}

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) throw std::invalid_argument("box dimension must be at least 1");
    if (lower_.size() != upper_.size()) throw DimensionMismatch(lower_.size(), upper_.size());
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        if (!std::isfinite(lower_[j]) || lower_[j] < 0.0)
            throw std::invalid_argument("box lower bounds must be finite and nonnegative");
        if (std::isnan(upper_[j]) || upper_[j] == -kUnbounded)
            throw std::invalid_argument("box upper bounds must be finite or +infinity");
        if (upper_[j] < lower_[j]) throw EmptyRegionError("box has lower bound above upper bound");
    }
}

bool Box::bounded() const noexcept {
    return std::all_of(upper_.begin(), upper_.end(), [](double u) { return std::isfinite(u); });
}

Polyhedron::Polyhedron(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                       std::vector<double> lower, std::vector<double> upper, Tolerances tol) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    if (!a.empty())
        n_ = a.front().size();
    else if (!lower.empty())
        n_ = lower.size();
    else
        n_ = upper.size();
    if (n_ == 0) throw std::invalid_argument("polyhedron dimension must be at least 1");
    if (!lower.empty() && lower.size() != n_) throw DimensionMismatch(n_, lower.size());
    if (!upper.empty() && upper.size() != n_) throw DimensionMismatch(n_, upper.size());

    std::vector<Row> raw;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != n_) throw DimensionMismatch(n_, a[i].size());
        for (double v : a[i])
            if (!std::isfinite(v)) throw std::invalid_argument("polyhedron coefficients must be finite");
        if (!std::isfinite(b[i])) throw std::invalid_argument("polyhedron offsets must be finite");
        Row r{a[i], b[i]};
        if (!normalize(r)) {
            if (b[i] < 0.0) throw EmptyRegionError("zero row with negative offset");
            continue;
        }
        raw.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < n_; ++j) {
        const double lo = lower.empty() ? -kUnbounded : lower[j];
        const double hi = upper.empty() ? kUnbounded : upper[j];
        if (std::isnan(lo) || std::isnan(hi)) throw std::invalid_argument("bounds must not be NaN");
        if (lo > hi) throw EmptyRegionError("polyhedron bound " + std::to_string(j) + " is empty");
        if (std::isfinite(lo)) {
            Row r{std::vector<double>(n_, 0.0), -lo};
            r.a[j] = -1.0;
            raw.push_back(std::move(r));
        }
        if (std::isfinite(hi)) {
            Row r{std::vector<double>(n_, 0.0), hi};
            r.a[j] = 1.0;
            raw.push_back(std::move(r));
        }
    }
    for (auto& r : raw) rows_.push_back({std::move(r.a), r.b});

    // Phase 1: cyclic projection from the origin until every row holds.
    std::vector<double> x(n_, 0.0);
    constexpr std::size_t kPhaseOneCycles = 100000;
    bool ok = max_violation(rows_, x) <= tol.feas;
    for (std::size_t c = 0; c < kPhaseOneCycles && !ok; ++c) {
        for (const auto& h : rows_) project_half_space(h, x);
        ok = max_violation(rows_, x) <= tol.feas;
    }
    if (!ok) throw EmptyRegionError("polyhedron appears empty: phase-1 projection did not reach feasibility");
    feasible_ = PriceVector(x);

    std::vector<Row> elim;
    for (const auto& h : rows_) elim.push_back({h.normal, h.offset});
    bbox_lower_.resize(n_);
    bbox_upper_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        auto [lo, hi] = eliminate_to(elim, n_, k);
        bbox_lower_[k] = lo;
        bbox_upper_[k] = hi;
    }
    if (bounded()) vertices_ = enumerate_vertices(rows_, n_, 1e-9);
}

bool Polyhedron::bounded() const noexcept {
    for (std::size_t k = 0; k < n_; ++k)
        if (!std::isfinite(bbox_lower_[k]) || !std::isfinite(bbox_upper_[k])) return false;
    return true;
}

ProjectionBudgetError::ProjectionBudgetError(PriceVector best, double residual)
    : std::runtime_error("polyhedron projection budget exhausted (residual " + std::to_string(residual) + ")"),
      best_(std::move(best)),
      residual_(residual) {}

std::size_t ConvexRegion::dim() const noexcept {
    return std::visit([](const auto& r) { return r.dim(); }, impl_);
}

std::string ConvexRegion::kind_name() const {
    switch (kind()) {
        case RegionKind::simplex: return "simplex";
        case RegionKind::box: return "box";
        case RegionKind::polyhedron: return "polyhedron";
    }
    return "unknown";
}

bool ConvexRegion::bounded() const noexcept {
    if (as_simplex()) return true;
    if (const auto* b = as_box()) return b->bounded();
    return as_polyhedron()->bounded();
}

std::vector<double> ConvexRegion::bbox_lower() const {
    if (as_simplex()) return std::vector<double>(dim(), 0.0);
    if (const auto* b = as_box()) return b->lower();
    return as_polyhedron()->bbox_lower();
}

std::vector<double> ConvexRegion::bbox_upper() const {
    if (as_simplex()) return std::vector<double>(dim(), 1.0);
    if (const auto* b = as_box()) return b->upper();
    return as_polyhedron()->bbox_upper();
}

PriceVector ConvexRegion::anchor() const {
    if (as_simplex()) return PriceVector::filled(dim(), 1.0 / static_cast<double>(dim()));
    if (const auto* b = as_box()) {
        std::vector<double> x(dim());
        for (std::size_t j = 0; j < dim(); ++j)
            x[j] = std::isfinite(b->upper()[j]) ? 0.5 * (b->lower()[j] + b->upper()[j]) : b->lower()[j];
        return PriceVector(std::move(x));
    }
    return as_polyhedron()->feasible_point();
}

PriceVector project_simplex(const PriceVector& x, const Simplex& s) {
    const std::size_t n = s.dim();
    if (x.size() != n) throw DimensionMismatch(n, x.size());
    std::vector<double> u = x.coords();
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cumulative += u[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) theta = t;
    }
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = std::max(x[j] - theta, 0.0);
    return PriceVector(std::move(y));
}

PriceVector project_box(const PriceVector& x, const Box& k) {
    if (x.size() != k.dim()) throw DimensionMismatch(k.dim(), x.size());
    std::vector<double> y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = std::max(k.lower()[j], std::min(k.upper()[j], x[j]));
    return PriceVector(std::move(y));
}

DykstraResult project_polyhedron_detailed(const PriceVector& x, const Polyhedron& p, const DykstraOptions& opts) {
    if (x.size() != p.dim()) throw DimensionMismatch(p.dim(), x.size());
    const auto& rows = p.rows();
    DykstraResult res;
    std::vector<double> y = x.coords();
    if (max_violation(rows, y) <= 0.0) {
        res.point = x;
        res.converged = true;
        return res;
    }
    // Corrections are multiples of each row's normal, so store only the scalar.
    std::vector<double> corr(rows.size(), 0.0);
    std::vector<double> start(y.size());
    for (res.cycles = 1; res.cycles <= opts.max_cycles; ++res.cycles) {
        start = y;
        // The iterate can repeat after a cycle while the corrections still move,
        // so both must settle.
        double corr_change = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& h = rows[i];
            for (std::size_t k = 0; k < y.size(); ++k) y[k] += corr[i] * h.normal[k];
            const double c = project_half_space(h, y);
            corr_change = std::max(corr_change, std::abs(c - corr[i]));
            corr[i] = c;
        }
        res.last_change = std::max(distance(start, y), corr_change);
        res.max_violation = max_violation(rows, y);
        if (res.last_change <= opts.stall * (1.0 + std::sqrt(dot(y, y)))) {
            res.converged = true;
            break;
        }
    }
    if (res.cycles > opts.max_cycles) res.cycles = opts.max_cycles;
    res.point = PriceVector(std::move(y));
    return res;
}

PriceVector project_polyhedron(const PriceVector& x, const Polyhedron& p, const DykstraOptions& opts) {
    auto res = project_polyhedron_detailed(x, p, opts);
    if (!res.converged) throw ProjectionBudgetError(res.point, std::max(res.last_change, res.max_violation));
    return std::move(res.point);
}

PriceVector project(const ConvexRegion& region, const PriceVector& x) {
    if (const auto* s = region.as_simplex()) return project_simplex(x, *s);
    if (const auto* b = region.as_box()) return project_box(x, *b);
    return project_polyhedron(x, *region.as_polyhedron());
}

bool contains(const ConvexRegion& region, const PriceVector& x, double tol) {
    if (x.size() != region.dim()) throw DimensionMismatch(region.dim(), x.size());
    if (region.as_simplex()) {
        double sum = 0.0;
        for (double v : x) {
            if (v < -tol) return false;
            sum += v;
        }
        return std::abs(sum - 1.0) <= tol;
    }
    if (const auto* b = region.as_box()) {
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] < b->lower()[j] - tol || x[j] > b->upper()[j] + tol) return false;
        return true;
    }
    return max_violation(region.as_polyhedron()->rows(), x.view()) <= tol;
}

ConvexCombination::ConvexCombination(std::vector<PriceVector> points, std::vector<double> weights, double tol)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty()) throw std::invalid_argument("convex combination needs at least one point");
    if (points_.size() != weights_.size()) throw DimensionMismatch(points_.size(), weights_.size());
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= -tol && w <= 1.0 + tol)) throw std::invalid_argument("convex weights must lie in [0, 1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("convex weights must sum to 1");
    for (const auto& p : points_) points_.front().check_same(p);
}

PriceVector ConvexCombination::value() const {
    std::vector<double> out(points_.front().size(), 0.0);
    for (std::size_t j = 0; j < points_.size(); ++j)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights_[j] * points_[j][i];
    return PriceVector(std::move(out));
}

PriceVector combine(const ConvexCombination& c) { return c.value(); }

std::vector<PriceVector> vertices(const ConvexRegion& region) {
    const std::size_t n = region.dim();
    std::vector<PriceVector> out;
    if (region.as_simplex()) {
        for (std::size_t j = 0; j < n; ++j) {
            auto v = PriceVector::zeros(n);
            v[j] = 1.0;
            out.push_back(std::move(v));
        }
        return out;
    }
    if (const auto* b = region.as_box()) {
        if (!b->bounded() || n > 20) return out;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::vector<double> v(n);
            for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1u ? b->upper()[j] : b->lower()[j];
            out.emplace_back(std::move(v));
        }
        // Degenerate boxes repeat corners.
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& c) { return a.coords() < c.coords(); });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    return region.as_polyhedron()->vertices();
}

double radical_inverse(std::size_t index, unsigned base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

std::vector<PriceVector> halton_cube(std::size_t n, std::size_t count, double lo, double hi, std::size_t skip) {
    if (n > kPrimes.size()) throw std::invalid_argument("halton sequence supports at most 24 dimensions");
    std::vector<PriceVector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = lo + (hi - lo) * radical_inverse(i + skip, kPrimes[j]);
        out.emplace_back(std::move(x));
    }
    return out;
}

std::vector<PriceVector> low_discrepancy_points(const ConvexRegion& region, std::size_t count) {
    if (!region.bounded()) throw std::invalid_argument("low-discrepancy sampling needs a bounded region");
    const std::size_t n = region.dim();
    std::vector<PriceVector> out;
    if (region.as_simplex()) {
        if (n == 1) return std::vector<PriceVector>(std::min<std::size_t>(count, 1), PriceVector{1.0});
        for (const auto& u : halton_cube(n, count, 0.0, 1.0)) {
            std::vector<double> y(n);
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                y[j] = -std::log(u[j]);
                s += y[j];
            }
            for (double& v : y) v /= s;
            out.emplace_back(std::move(y));
        }
        return out;
    }
    const auto lo = region.bbox_lower();
    const auto hi = region.bbox_upper();
    auto to_box = [&](const PriceVector& u) {
        std::vector<double> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = lo[j] + (hi[j] - lo[j]) * u[j];
        return PriceVector(std::move(x));
    };
    if (region.as_box()) {
        for (const auto& u : halton_cube(n, count, 0.0, 1.0)) out.push_back(to_box(u));
        return out;
    }
    // Rejection from the bounding box, topped up by projection if the region is thin.
    const std::size_t attempts = count * 200;
    std::size_t index = 1;
    for (; index <= attempts && out.size() < count; ++index) {
        auto x = to_box(halton_cube(n, 1, 0.0, 1.0, index).front());
        if (contains(region, x)) out.push_back(std::move(x));
    }
    for (; out.size() < count; ++index) out.push_back(project(region, to_box(halton_cube(n, 1, 0.0, 1.0, index).front())));
    return out;
}

}  // namespace walras
