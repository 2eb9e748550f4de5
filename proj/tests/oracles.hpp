#pragma once

// Brute-force reference computations used to check the library. None of these
// call into the routines they are used to test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline double sqdist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

inline double dist(const Vec& a, const Vec& b) { return std::sqrt(sqdist(a, b)); }

// Lattice points of the unit simplex with denominator k.
inline std::vector<Vec> simplex_lattice(std::size_t n, std::size_t k) {
    std::vector<Vec> out;
    std::vector<std::size_t> c(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == n) {
            c[i] = left;
            Vec p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = double(c[j]) / double(k);
            out.push_back(p);
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            c[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, k);
    return out;
}

// Product grid of [lo_j, hi_j] with `steps` points per axis.
inline std::vector<Vec> box_lattice(const Vec& lo, const Vec& hi, std::size_t steps) {
    std::vector<Vec> out{Vec{}};
    for (std::size_t j = 0; j < lo.size(); ++j) {
        std::vector<Vec> next;
        for (const auto& p : out)
            for (std::size_t s = 0; s < steps; ++s) {
                auto q = p;
                q.push_back(lo[j] + (hi[j] - lo[j]) * double(s) / double(steps - 1));
                next.push_back(q);
            }
        out.swap(next);
    }
    return out;
}

inline bool satisfies(const Mat& a, const Vec& b, const Vec& x, double tol = 1e-12) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += a[i][j] * x[j];
        if (s > b[i] + tol) return false;
    }
    return true;
}

// Grid point minimizing ||y - x||^2 among candidates.
inline Vec grid_argmin(const std::vector<Vec>& candidates, const Vec& x) {
    Vec best;
    double bv = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
        const double v = sqdist(c, x);
        if (v < bv) {
            bv = v;
            best = c;
        }
    }
    return best;
}

// Payment that zeroes the simulated balance after n periods, by bisection.
inline double amortized_payment(double principal, int n, double rate) {
    auto final_balance = [&](double pay) {
        double bal = principal;
        for (int i = 0; i < n; ++i) bal = bal * (1.0 + rate) - pay;
        return bal;
    };
    double lo = 0.0, hi = principal * (1.0 + rate);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (final_balance(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double simulated_balance(double principal, int n, double rate, double pay) {
    double bal = principal;
    for (int i = 0; i < n; ++i) bal = bal * (1.0 + rate) - pay;
    return bal;
}

// Sutherland-Hodgman: clip a large square by each half-plane a.x <= b and
// return the polygon corners with collinear and repeated points removed.
inline std::vector<Vec> clip_polygon(const Mat& a, const Vec& b, double extent = 1e3) {
    std::vector<Vec> poly{{-extent, -extent}, {extent, -extent}, {extent, extent}, {-extent, extent}};
    for (std::size_t r = 0; r < a.size() && !poly.empty(); ++r) {
        auto side = [&](const Vec& p) { return a[r][0] * p[0] + a[r][1] * p[1] - b[r]; };
        std::vector<Vec> out;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Vec& cur = poly[i];
            const Vec& nxt = poly[(i + 1) % poly.size()];
            const double sc = side(cur), sn = side(nxt);
            if (sc <= 0) out.push_back(cur);
            if ((sc < 0 && sn > 0) || (sc > 0 && sn < 0)) {
                const double t = sc / (sc - sn);
                out.push_back({cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])});
            }
        }
        poly.swap(out);
    }
    std::vector<Vec> corners;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec& prev = poly[(i + m - 1) % m];
        const Vec& cur = poly[i];
        const Vec& nxt = poly[(i + 1) % m];
        if (sqdist(prev, cur) < 1e-20) continue;
        const double cross = (cur[0] - prev[0]) * (nxt[1] - cur[1]) - (cur[1] - prev[1]) * (nxt[0] - cur[0]);
        if (std::abs(cross) > 1e-12) corners.push_back(cur);
    }
    return corners;
}

// 1-D exhaustive membership scans on [lo, hi] with `steps` points.
inline bool scalar_stampacchia(const std::function<double(double)>& f, double x, double lo, double hi,
                               std::size_t steps, double tol) {
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = lo + (hi - lo) * double(s) / double(steps - 1);
        if (f(x) * (t - x) < -tol) return false;
    }
    return true;
}

inline bool scalar_minty(const std::function<double(double)>& f, double x, double lo, double hi, std::size_t steps,
                         double tol) {
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = lo + (hi - lo) * double(s) / double(steps - 1);
        if (f(t) * (t - x) < -tol) return false;
    }
    return true;
}

// Random matrix with symmetric part at least `floor` * I.
inline Mat random_positive_definite(std::size_t n, std::mt19937_64& rng, double floor = 0.5) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat b(n, Vec(n)), m(n, Vec(n, 0.0));
    for (auto& row : b)
        for (auto& v : row) v = u(rng);
    // M = B^T B + floor I + (skew part)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) m[i][j] += b[k][i] * b[k][j] / double(n);
            if (i == j) m[i][j] += floor;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * u(rng);
            m[i][j] += s;
            m[j][i] -= s;
        }
    return m;
}

inline double frobenius(const Mat& m) {
    double s = 0.0;
    for (const auto& row : m)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

}  // namespace oracle
