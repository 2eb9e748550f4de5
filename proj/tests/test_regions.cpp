#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "walras/regions.hpp"

using namespace walras;

namespace {

PriceVector pv(std::vector<double> v) { return PriceVector(std::move(v)); }

void check_close(const PriceVector& a, const std::vector<double>& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

bool near(const PriceVector& a, const std::vector<double>& b, double tol) {
    return oracle::dist(a.coords(), b) <= tol;
}

Box unit_box(std::size_t n) { return Box(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)); }

std::vector<PriceVector> random_points(std::size_t n, std::size_t count, double lo, double hi, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<PriceVector> out;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> v(n);
        for (auto& x : v) x = u(rng);
        out.push_back(pv(v));
    }
    return out;
}

std::vector<ConvexRegion> sample_regions() {
    return {Simplex(3), unit_box(2), Box({0.0, 1.0}, {1.0, 2.0}),
            Polyhedron({{1, 1}}, {1}, {0, 0}, {kUnbounded, kUnbounded}),
            Polyhedron({{1, -1}, {1, 1}, {-1, 0}}, {0.5, 1.5, 0}, {}, {}),
            Polyhedron({{1, 1, 1}, {1, -1, 0}}, {1, 0.2}, {0, 0, 0}, {1, 1, 1})};
}

}  // namespace

TEST_CASE("simplex projection examples") {
    check_close(project_simplex(pv({1, 0, 0}), Simplex(3)), {1, 0, 0}, 1e-15);
    check_close(project_simplex(pv({2, 0}), Simplex(2)), {1, 0}, 1e-15);
    check_close(project_simplex(pv({0.4, 0.4, 0.4}), Simplex(3)), {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-15);
    CHECK_THROWS_AS(project_simplex(pv({1, 2}), Simplex(3)), DimensionMismatch);
}

TEST_CASE("simplex projection matches the grid QP oracle on (2, 0)") {
    const auto grid = oracle::simplex_lattice(2, 1000);
    const auto best = oracle::grid_argmin(grid, {2, 0});
    CHECK(near(project_simplex(pv({2, 0}), Simplex(2)), best, 2e-3));
}

TEST_CASE("box projection examples") {
    const Box k({0, 0}, {1, 1});
    check_close(project_box(pv({0.3, 0.7}), k), {0.3, 0.7}, 0);
    check_close(project_box(pv({-1, 5}), k), {0, 1}, 0);
    check_close(project_box(pv({0.5, 2.3}), Box({0, 1}, {1, 2})), {0.5, 2}, 0);
    check_close(project_box(pv({7, -3}), Box({0, 0}, {kUnbounded, 1})), {7, 0}, 0);
}

TEST_CASE("box construction rejects bad bounds") {
    CHECK_THROWS_AS(Box({0, 2}, {1, 1}), EmptyRegionError);
    CHECK_THROWS(Box({-1}, {1}));
    CHECK_THROWS(Box({0, 0}, {1}));
    CHECK_FALSE(Box({0}, {kUnbounded}).bounded());
}

TEST_CASE("polyhedron projection examples") {
    const Polyhedron square({}, {}, {0, 0}, {1, 1});
    check_close(project_polyhedron(pv({0.2, 0.9}), square), {0.2, 0.9}, 1e-12);
    check_close(project_polyhedron(pv({2, 2}), square), {1, 1}, 1e-9);
    const Polyhedron half({{1, 1}}, {1});
    check_close(project_polyhedron(pv({1, 1}), half), {0.5, 0.5}, 1e-12);
    CHECK_FALSE(half.bounded());
    CHECK(square.bounded());
}

TEST_CASE("polyhedron (2, 2) on the unit square matches the grid QP oracle") {
    const oracle::Mat a{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const oracle::Vec b{1, 1, 0, 0};
    std::vector<oracle::Vec> feasible;
    for (const auto& p : oracle::box_lattice({-0.5, -0.5}, {1.5, 1.5}, 401))
        if (oracle::satisfies(a, b, p)) feasible.push_back(p);
    const auto best = oracle::grid_argmin(feasible, {2, 2});
    const Polyhedron square(a, b);
    CHECK(near(project_polyhedron(pv({2, 2}), square), best, 2 * 0.005));
}

TEST_CASE("empty polyhedra are rejected at construction") {
    CHECK_THROWS_AS(Polyhedron({{1, 0}, {-1, 0}}, {0, -1}), EmptyRegionError);
    CHECK_THROWS_AS(Polyhedron({{0, 0}}, {-1}), EmptyRegionError);
    CHECK_THROWS_AS(Polyhedron({}, {}, {0, 2}, {1, 1}), EmptyRegionError);
    CHECK_THROWS(Polyhedron({{1, 0}}, {1, 2}));
}

TEST_CASE("Dykstra budget exhaustion reports the best iterate") {
    const Polyhedron wedge({{1, -1}, {-1, -1}, {0, 1}}, {0, 0, 1});
    DykstraOptions opts;
    opts.max_cycles = 1;
    const auto r = project_polyhedron_detailed(pv({5, -3}), wedge, opts);
    CHECK_FALSE(r.converged);
    CHECK(r.cycles == 1);
    CHECK_THROWS_AS(project_polyhedron(pv({5, -3}), wedge, opts), ProjectionBudgetError);
}

TEST_CASE("contains examples") {
    CHECK(contains(Simplex(3), pv({1.0 / 3, 1.0 / 3, 1.0 / 3})));
    CHECK_FALSE(contains(Simplex(2), pv({0.6, 0.6})));
    CHECK(contains(unit_box(2), pv({0, 0.5})));
    CHECK_FALSE(contains(unit_box(2), pv({0, 1.1})));
    CHECK(contains(Polyhedron({{1, 1}}, {1}), pv({-4, 5})));
}

TEST_CASE("convex combination examples") {
    const auto p = pv({0.2, 0.7}), q = pv({0.9, 0.1});
    CHECK(combine(ConvexCombination({p, q}, {1, 0})) == p);
    check_close(ConvexCombination({pv({0, 1}), pv({1, 0})}, {0.5, 0.5}).value(), {0.5, 0.5}, 0);
    check_close(ConvexCombination({pv({1, 0, 0}), pv({0, 1, 0}), pv({0, 0, 1})}, {0.25, 0.25, 0.5}).value(),
                {0.25, 0.25, 0.5}, 0);
    CHECK_THROWS(ConvexCombination({p, q}, {0.6, 0.6}));
    CHECK_THROWS(ConvexCombination({p, q}, {1.5, -0.5}));
    CHECK_THROWS(ConvexCombination({p}, {0.5, 0.5}));
}

TEST_CASE("convex combination lies in the hull") {
    const ConvexRegion s = Simplex(3);
    const auto pts = low_discrepancy_points(s, 5);
    for (double w = 0.0; w <= 1.0; w += 0.125) {
        const auto v = ConvexCombination({pts[0], pts[1], pts[2]}, {w * 0.5, w * 0.5, 1 - w}).value();
        CHECK(contains(s, v, 1e-12));
    }
}

TEST_CASE("mortgage-style polygon vertices match Sutherland-Hodgman clipping") {
    // 0 <= p1 <= p2 - 1, 0 <= p1 <= 1, 1 <= p2 <= 2
    const oracle::Mat a{{1, -1}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    const oracle::Vec b{-1, 0, 1, -1, 2};
    const auto expected = oracle::clip_polygon(a, b);
    const Polyhedron p(a, b);
    const auto got = p.vertices();
    REQUIRE(got.size() == expected.size());
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& g : got) found = found || near(g, e, 1e-9);
        CHECK(found);
    }
}

TEST_CASE("region vertices") {
    CHECK(vertices(Simplex(3)).size() == 3);
    CHECK(vertices(unit_box(3)).size() == 8);
    CHECK(vertices(Box({0, 0.5}, {1, 0.5})).size() == 2);
    CHECK(vertices(Box({0}, {kUnbounded})).empty());
}

TEST_CASE("bounding box and boundedness from the constraint rows") {
    const Polyhedron tri({{1, 1}}, {1}, {0, 0});
    CHECK(tri.bounded());
    CHECK(tri.bbox_upper()[0] == doctest::Approx(1));
    CHECK(tri.bbox_upper()[1] == doctest::Approx(1));
    const Polyhedron strip({{0, 1}, {0, -1}}, {1, 0});
    CHECK_FALSE(strip.bounded());
}

TEST_CASE("low-discrepancy points are feasible and deterministic") {
    for (const auto& r : sample_regions()) {
        if (!r.bounded()) continue;
        const auto a = low_discrepancy_points(r, 50);
        const auto b = low_discrepancy_points(r, 50);
        CHECK(a == b);
        CHECK(a.size() == 50);
        for (const auto& p : a) CHECK(contains(r, p, 1e-9));
    }
    CHECK(radical_inverse(1, 2) == 0.5);
    CHECK(radical_inverse(3, 2) == 0.75);
    CHECK(radical_inverse(1, 3) == doctest::Approx(1.0 / 3));
}

TEST_CASE("projection properties on random points") {
    for (const auto& r : sample_regions()) {
        CAPTURE(r.kind_name());
        const auto xs = random_points(r.dim(), 200, -2.0, 3.0, 7);
        const auto zs = r.bounded() ? low_discrepancy_points(r, 40) : std::vector<PriceVector>{r.anchor()};
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const auto px = project(r, xs[i]);
            CHECK(contains(r, px, 1e-9));
            CHECK(distance(project(r, px), px) <= 1e-9);
            const auto& y = xs[(i + 1) % xs.size()];
            CHECK(distance(px, project(r, y)) <= distance(xs[i], y) + 1e-9);
            for (const auto& z : zs) CHECK(dot(xs[i] - px, z - px) <= Tolerances{}.proj);
        }
    }
}

TEST_CASE("anchor is feasible") {
    for (const auto& r : sample_regions()) CHECK(contains(r, r.anchor()));
}
