#include "walras/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace walras {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PriceVector combination(const std::vector<PriceVector>& points, const std::vector<double>& weights) {
    std::vector<double> out(points.front().size(), 0.0);
    for (std::size_t j = 0; j < points.size(); ++j)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights[j] * points[j][i];
    return PriceVector(std::move(out));
}

// E(p_j)^T (p_j - p) for each member.
std::vector<double> member_dots(const std::vector<PriceVector>& fields, const std::vector<PriceVector>& points,
                                const PriceVector& p) {
    std::vector<double> out(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) out[j] = -directional(fields[j], points[j], p);
    return out;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

// Calls visit(indices) for each m-subset of {0..n-1} in lexicographic order until it returns false.
template <class Visit>
bool for_each_subset(std::size_t n, std::size_t m, Visit&& visit) {
    if (m == 0 || m > n) return true;
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (!visit(idx)) return false;
        std::size_t pos = m;
        while (pos > 0 && idx[pos - 1] == n - m + pos - 1) --pos;
        if (pos == 0) return true;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
}

struct Scan {
    const ExcessDemandModel& e;
    const SamplePlan& plan;
    std::vector<PriceVector> fields;

    Scan(const ExcessDemandModel& model, const ConvexRegion& region, const SamplePlan& p) : e(model), plan(p) {
        if (model.dim() != region.dim()) throw DimensionMismatch(region.dim(), model.dim());
        plan.validate(region);
        fields.reserve(plan.base_points.size());
        for (const auto& q : plan.base_points) fields.push_back(e(q));
    }

    std::vector<PriceVector> pick(const std::vector<std::size_t>& idx, const std::vector<PriceVector>& src) const {
        std::vector<PriceVector> out;
        for (std::size_t i : idx) out.push_back(src[i]);
        return out;
    }
};

bool distinct_from_all(const PriceVector& p, const std::vector<PriceVector>& pts, double tol) {
    for (const auto& q : pts)
        if (distance(p, q) <= 10.0 * tol) return false;
    return true;
}

MonotonicityReport pair_scan(MonotonicityClass cls, const ExcessDemandModel& e, const ConvexRegion& x,
                             const SamplePlan& plan) {
    Scan s(e, x, plan);
    const bool strict = cls == MonotonicityClass::strict_pseudo;
    const double tau = plan.tol_feas;
    MonotonicityReport rep{cls, Verdict::holds_on_samples, std::nullopt, 0, kInf};
    const auto& pts = plan.base_points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            ++rep.samples_used;
            const double premise = directional(s.fields[i], pts[i], pts[j]);
            if (premise < -tau) continue;
            const double conclusion = directional(s.fields[j], pts[i], pts[j]);
            const double slack = strict ? conclusion - plan.eps_strict : conclusion + tau;
            const bool violated = strict ? !(conclusion > plan.eps_strict) : conclusion < -tau;
            if (violated) {
                rep.verdict = Verdict::refuted;
                rep.margin = -slack;
                rep.witness = Witness{{i, j}, {pts[i], pts[j]}, {}, std::nullopt, {premise, conclusion}};
                return rep;
            }
            rep.margin = std::min(rep.margin, slack);
        }
    }
    return rep;
}

// Solves a small dense system in place; false if numerically singular.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-12) return false;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t c = n; c-- > 0;) {
        double v = b[c];
        for (std::size_t k = c + 1; k < n; ++k) v -= a[c][k] * x[k];
        x[c] = v / a[c][c];
    }
    return true;
}

struct HullOptimum {
    std::vector<double> weights;
    std::vector<double> dots;
    double value = -std::numeric_limits<double>::infinity();
};

// Maximizes min_j E(p_j)^T (p_j - p) over p in the hull of the tuple. The
// objective is affine in the weights, so this is the LP
//   max t  s.t.  t <= a_j - sum_k w_k G_jk,  w >= 0,  sum w = 1,
// solved exactly by visiting every basic solution (at most C(2m, m) of them).
HullOptimum best_hull_point(const std::vector<PriceVector>& fields, const std::vector<PriceVector>& points) {
    const std::size_t m = points.size();
    std::vector<double> a(m);
    std::vector<std::vector<double>> g(m, std::vector<double>(m));
    for (std::size_t j = 0; j < m; ++j) {
        a[j] = dot(fields[j], points[j]);
        for (std::size_t k = 0; k < m; ++k) g[j][k] = dot(fields[j], points[k]);
    }
    HullOptimum best;
    // Unknowns (w_1..w_m, t). Rows 0..m-1 are the t-constraints, m..2m-1 are w_i = 0.
    for_each_subset(2 * m, m, [&](const std::vector<std::size_t>& active) {
        std::vector<std::vector<double>> lhs;
        std::vector<double> rhs;
        for (std::size_t r : active) {
            std::vector<double> row(m + 1, 0.0);
            if (r < m) {
                for (std::size_t k = 0; k < m; ++k) row[k] = g[r][k];
                row[m] = 1.0;
                rhs.push_back(a[r]);
            } else {
                row[r - m] = 1.0;
                rhs.push_back(0.0);
            }
            lhs.push_back(std::move(row));
        }
        std::vector<double> sum(m + 1, 1.0);
        sum[m] = 0.0;
        lhs.push_back(std::move(sum));
        rhs.push_back(1.0);
        std::vector<double> z;
        if (!solve_dense(lhs, rhs, z)) return true;
        std::vector<double> w(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(m));
        for (double v : w)
            if (v < -1e-12) return true;
        for (double& v : w) v = std::max(v, 0.0);
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        for (double& v : w) v /= total;
        auto dots = member_dots(fields, points, combination(points, w));
        const double value = min_of(dots);
        if (value > best.value) best = {std::move(w), std::move(dots), value};
        return true;
    });
    return best;
}

}  // namespace

void SamplePlan::validate(const ConvexRegion& region) const {
    if (base_points.empty()) throw std::invalid_argument("sample plan has no base points");
    if (tuple_size_max < 2) throw std::invalid_argument("sample plan needs tuple_size_max >= 2");
    if (weight_steps < 3) throw std::invalid_argument("sample plan needs weight_steps >= 3");
    if (!(eps_strict > 0.0)) throw std::invalid_argument("sample plan needs eps_strict > 0");
    if (!(tol_feas > 0.0)) throw std::invalid_argument("sample plan needs tol_feas > 0");
    for (const auto& p : base_points) {
        if (p.size() != region.dim()) throw DimensionMismatch(region.dim(), p.size());
        if (!contains(region, p, tol_feas)) throw std::invalid_argument("sample plan point lies outside the region");
    }
}

SamplePlan make_sample_plan(const ConvexRegion& region, const PlanConfig& cfg) {
    SamplePlan plan;
    plan.tuple_size_max = cfg.tuple_size_max;
    plan.weight_steps = cfg.weight_steps;
    plan.eps_strict = cfg.eps_strict;
    std::vector<PriceVector> candidates = vertices(region);
    for (auto& p : low_discrepancy_points(region, cfg.samples)) candidates.push_back(std::move(p));
    for (auto& p : candidates) {
        if (!contains(region, p, plan.tol_feas)) p = project(region, p);
        if (distinct_from_all(p, plan.base_points, plan.tol_feas)) plan.base_points.push_back(std::move(p));
    }
    return plan;
}

std::vector<std::vector<double>> weight_grid(std::size_t m, std::size_t steps, bool interior_only) {
    if (m == 0 || steps < 2) throw std::invalid_argument("weight grid needs m >= 1 and steps >= 2");
    const std::size_t total = steps - 1;
    const std::size_t floor = interior_only ? 1 : 0;
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> parts(m, 0);
    // Recursive composition of `total` into m parts, each >= floor, lexicographic.
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == m) {
            if (left < floor) return;
            parts[pos] = left;
            std::vector<double> w(m);
            for (std::size_t j = 0; j < m; ++j) w[j] = static_cast<double>(parts[j]) / static_cast<double>(total);
            out.push_back(std::move(w));
            return;
        }
        for (std::size_t k = floor; k + floor * (m - pos - 1) <= left; ++k) {
            parts[pos] = k;
            self(self, pos + 1, left - k);
        }
    };
    rec(rec, 0, total);
    return out;
}

MonotonicityReport check_pseudomonotone(const ExcessDemandModel& e, const ConvexRegion& x, const SamplePlan& plan) {
    return pair_scan(MonotonicityClass::pseudo, e, x, plan);
}

MonotonicityReport check_strictly_pseudomonotone(const ExcessDemandModel& e, const ConvexRegion& x,
                                                 const SamplePlan& plan) {
    return pair_scan(MonotonicityClass::strict_pseudo, e, x, plan);
}

MonotonicityReport check_properly_quasimonotone(const ExcessDemandModel& e, const ConvexRegion& x,
                                                const SamplePlan& plan) {
    Scan s(e, x, plan);
    const double tau = plan.tol_feas;
    MonotonicityReport rep{MonotonicityClass::proper_quasi, Verdict::holds_on_samples, std::nullopt, 0, kInf};
    const std::size_t mmax = std::min(plan.tuple_size_max, plan.base_points.size());
    for (std::size_t m = 1; m <= mmax && rep.verdict == Verdict::holds_on_samples; ++m) {
        const auto grid = weight_grid(m, plan.weight_steps, false);
        for_each_subset(plan.base_points.size(), m, [&](const std::vector<std::size_t>& idx) {
            const auto pts = s.pick(idx, plan.base_points);
            const auto fld = s.pick(idx, s.fields);
            for (const auto& w : grid) {
                ++rep.samples_used;
                const PriceVector p = combination(pts, w);
                const auto dots = member_dots(fld, pts, p);
                const double best = max_of(dots);
                if (best < -tau) {
                    rep.verdict = Verdict::refuted;
                    rep.margin = -tau - best;
                    rep.witness = Witness{idx, pts, w, p, dots};
                    return false;
                }
                rep.margin = std::min(rep.margin, best + tau);
            }
            return true;
        });
    }
    return rep;
}

MonotonicityReport check_properly_quasimonotone_dual(const ExcessDemandModel& e, const ConvexRegion& x,
                                                     const SamplePlan& plan) {
    Scan s(e, x, plan);
    const double tau = plan.tol_feas;
    MonotonicityReport rep{MonotonicityClass::proper_quasi_dual, Verdict::holds_on_samples, std::nullopt, 0, kInf};
    const std::size_t mmax = std::min(plan.tuple_size_max, plan.base_points.size());
    for (std::size_t m = 1; m <= mmax && rep.verdict == Verdict::holds_on_samples; ++m) {
        for_each_subset(plan.base_points.size(), m, [&](const std::vector<std::size_t>& idx) {
            ++rep.samples_used;
            const auto pts = s.pick(idx, plan.base_points);
            const auto opt = best_hull_point(s.pick(idx, s.fields), pts);
            if (opt.value < -tau) {
                rep.verdict = Verdict::refuted;
                rep.margin = -tau - opt.value;
                rep.witness = Witness{idx, pts, opt.weights, combination(pts, opt.weights), opt.dots};
                return false;
            }
            rep.margin = std::min(rep.margin, opt.value + tau);
            return true;
        });
    }
    return rep;
}

MonotonicityReport check_strict_properly_quasimonotone(const ExcessDemandModel& e, const ConvexRegion& x,
                                                       const SamplePlan& plan) {
    Scan s(e, x, plan);
    const double tau = plan.tol_feas;
    MonotonicityReport rep{MonotonicityClass::strict_proper_quasi, Verdict::holds_on_samples, std::nullopt, 0, kInf};
    const std::size_t mmax = std::min(plan.tuple_size_max, plan.base_points.size());
    for (std::size_t m = 2; m <= mmax && rep.verdict == Verdict::holds_on_samples; ++m) {
        const auto grid = weight_grid(m, plan.weight_steps, true);
        for_each_subset(plan.base_points.size(), m, [&](const std::vector<std::size_t>& idx) {
            const auto pts = s.pick(idx, plan.base_points);
            const auto fld = s.pick(idx, s.fields);
            for (const auto& w : grid) {
                const PriceVector p = combination(pts, w);
                if (!distinct_from_all(p, pts, tau)) continue;
                ++rep.samples_used;
                const auto dots = member_dots(fld, pts, p);
                const double best = max_of(dots);
                if (!(best > plan.eps_strict)) {
                    rep.verdict = Verdict::refuted;
                    rep.margin = plan.eps_strict - best;
                    rep.witness = Witness{idx, pts, w, p, dots};
                    return false;
                }
                rep.margin = std::min(rep.margin, best - plan.eps_strict);
            }
            return true;
        });
    }
    return rep;
}

MonotonicityReport check_class(MonotonicityClass c, const ExcessDemandModel& e, const ConvexRegion& x,
                               const SamplePlan& plan) {
    switch (c) {
        case MonotonicityClass::pseudo: return check_pseudomonotone(e, x, plan);
        case MonotonicityClass::strict_pseudo: return check_strictly_pseudomonotone(e, x, plan);
        case MonotonicityClass::proper_quasi: return check_properly_quasimonotone(e, x, plan);
        case MonotonicityClass::proper_quasi_dual: return check_properly_quasimonotone_dual(e, x, plan);
        case MonotonicityClass::strict_proper_quasi: return check_strict_properly_quasimonotone(e, x, plan);
    }
    throw std::invalid_argument("unknown monotonicity class");
}

bool replay_witness(const MonotonicityReport& report, const ExcessDemandModel& e, const SamplePlan& plan) {
    if (report.verdict != Verdict::refuted || !report.witness) return false;
    const Witness& w = *report.witness;
    if (w.points.empty()) return false;
    std::vector<PriceVector> fields;
    for (const auto& p : w.points) fields.push_back(e(p));
    const double tau = plan.tol_feas;
    switch (report.class_checked) {
        case MonotonicityClass::pseudo:
        case MonotonicityClass::strict_pseudo: {
            if (w.points.size() != 2) return false;
            const double premise = directional(fields[0], w.points[0], w.points[1]);
            const double conclusion = directional(fields[1], w.points[0], w.points[1]);
            if (premise < -tau) return false;
            const bool strict = report.class_checked == MonotonicityClass::strict_pseudo;
            const double miss = strict ? plan.eps_strict - conclusion : -tau - conclusion;
            return (strict ? miss >= 0.0 : miss > 0.0) && miss == report.margin;
        }
        case MonotonicityClass::proper_quasi: {
            const auto dots = member_dots(fields, w.points, combination(w.points, w.weights));
            const double miss = -tau - max_of(dots);
            return miss > 0.0 && miss == report.margin;
        }
        case MonotonicityClass::strict_proper_quasi: {
            const PriceVector p = combination(w.points, w.weights);
            if (!distinct_from_all(p, w.points, tau)) return false;
            const double miss = plan.eps_strict - max_of(member_dots(fields, w.points, p));
            return miss >= 0.0 && miss == report.margin;
        }
        case MonotonicityClass::proper_quasi_dual: {
            const double miss = -tau - best_hull_point(fields, w.points).value;
            return miss > 0.0 && miss == report.margin;
        }
    }
    return false;
}

}  // namespace walras
