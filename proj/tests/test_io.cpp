#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "walras/io.hpp"

using namespace walras;
using nlohmann::json;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

json linear_problem() {
    return json::parse(R"({
        "label": "lin",
        "economy": {"kind": "linear", "M": [[1, 0], [0, 1]], "c": [0.3, 0.7]},
        "region": {"kind": "box", "lower": [0, 0], "upper": [1, 1]},
        "solver": {"step": 0.2, "budget": 500, "tol": 1e-9, "start": [1, 0]},
        "plan": {"samples": 10, "m_max": 2, "weight_steps": 5, "eps_strict": 1e-6},
        "oracle": {"grid_spacing": 0.05, "lipschitz": 0.5}
    })");
}

}  // namespace

TEST_CASE("problem parsing reads every section") {
    const auto pf = parse_problem(linear_problem());
    CHECK(pf.label == "lin");
    CHECK(pf.region.kind_name() == std::string("box"));
    CHECK(pf.solver.step == 0.2);
    CHECK(pf.solver.budget == 500);
    CHECK(pf.solver.tol == 1e-9);
    REQUIRE(pf.start);
    CHECK(*pf.start == PriceVector(std::vector<double>{1, 0}));
    CHECK(pf.plan.samples == 10);
    CHECK(pf.plan.tuple_size_max == 2);
    CHECK(pf.plan.weight_steps == 5);
    CHECK(pf.plan.eps_strict == 1e-6);
    CHECK(pf.grid_spacing == 0.05);
    CHECK(pf.lipschitz == 0.5);
    CHECK(pf.model(PriceVector(std::vector<double>{0.3, 0.7})) == PriceVector::zeros(2));
}

TEST_CASE("defaults apply when sections are absent") {
    const auto pf = parse_problem(json::parse(R"({"economy": {"kind": "catalog", "name": "pd_simplex"}})"));
    CHECK(pf.region.dim() == 3);
    CHECK(pf.lipschitz == 0.001);
    CHECK(pf.grid_spacing == 0.01);
    CHECK(pf.solver.step == 0.1);
    CHECK(pf.solver.budget == 100000);
    CHECK(pf.solver.tol == 1e-8);
    CHECK_FALSE(pf.start);

    const auto sc = parse_problem(json::parse(R"({"economy": {"kind": "scalar", "name": "t_minus_half"}})"));
    CHECK(sc.region.dim() == 1);
    CHECK(sc.model(PriceVector(std::vector<double>{0.5}))[0] == 0.0);
}

TEST_CASE("region kinds") {
    CHECK(parse_region(json::parse(R"({"kind": "simplex", "n": 3})")).dim() == 3);
    const auto box = parse_region(json::parse(R"({"kind": "box", "lower": [0], "upper": [null]})"));
    CHECK_FALSE(box.bounded());
    const auto poly = parse_region(json::parse(R"({"kind": "polyhedron", "A": [[1, 1]], "b": [1], "lower": [0, 0]})"));
    CHECK(poly.bounded());
    const auto free = parse_region(json::parse(R"({"kind": "polyhedron", "A": [[1, 1]], "b": [1], "lower": [null, 0]})"));
    CHECK_FALSE(free.bounded());
}

TEST_CASE("malformed input is an InputError") {
    auto bad = [](json j) { CHECK_THROWS_AS(parse_problem(j), InputError); };
    auto with = [](const char* path, json v) {
        auto j = linear_problem();
        j[json::json_pointer(path)] = v;
        return j;
    };
    bad(json::array());
    bad(with("/plan/eps_strict", -1));
    bad(with("/plan/eps_strict", 0));
    bad(with("/plan/m_max", 1));
    bad(with("/plan/weight_steps", 2));
    bad(with("/plan/samples", 1.5));
    bad(with("/solver/step", 0));
    bad(with("/solver/budget", 0));
    bad(with("/solver/start", json::array({1, 2, 3})));
    bad(with("/oracle/grid_spacing", -0.1));
    bad(with("/economy/kind", "nonlinear"));
    bad(with("/economy/c", json::array({1, 2, 3})));
    bad(with("/economy/M", "eye"));
    bad(with("/region/kind", "sphere"));
    bad(with("/region/lower", json::array({0, 2})));
    bad(with("/region", json::parse(R"({"kind": "simplex", "n": 3})")));
    bad(with("/region", json::parse(R"({"kind": "polyhedron", "A": [[1, 0], [-1, 0]], "b": [0, -1]})")));
    bad(json::parse(R"({"economy": {"kind": "linear", "M": [[1]], "c": [0]}})"));
    bad(json::parse(R"({"economy": {"kind": "scalar", "name": "nope"}})"));
    bad(json::parse(R"({"economy": {"kind": "catalog", "name": "nope"}})"));
    bad(json::parse(R"({"economy": {"kind": "scalar", "name": "t_minus_half"},
                        "region": {"kind": "simplex", "n": 2}})"));
    CHECK_THROWS_AS(load_problem("/nonexistent/problem.json"), InputError);
}

TEST_CASE("catalog parsing") {
    const auto cat = parse_catalog(json::parse(R"({
        "fixtures": ["identity_box", {"label": "own", "economy": {"kind": "linear", "M": [[1]], "c": [0.5]},
                                      "region": {"kind": "box", "lower": [0], "upper": [1]}}],
        "plan": {"samples": 12},
        "oracle": {"grid_spacing": 0.1}
    })"));
    REQUIRE(cat.fixtures.size() == 2);
    CHECK(cat.fixtures[0].label == "identity_box");
    CHECK(cat.fixtures[1].label == "own");
    CHECK(cat.fixtures[1].lipschitz == 1.0);
    CHECK(cat.config.plan.samples == 12);
    CHECK(cat.config.grid_spacing == 0.1);
    CHECK(parse_catalog(json::parse(R"({"fixtures": []})")).fixtures.empty());

    CHECK_THROWS_AS(parse_catalog(json::parse(R"({"fixtures": ["nope"]})")), InputError);
    CHECK_THROWS_AS(parse_catalog(json::parse(R"({"fixtures": [], "plan": {"eps_strict": -1}})")), InputError);
    CHECK_THROWS_AS(parse_catalog(json::parse(R"({"plan": {}})")), InputError);
    CHECK_THROWS_AS(parse_catalog(json::parse(R"({"fixtures": [{"economy": {"kind": "linear", "M": [[1]], "c": [0]},
                                                 "region": {"kind": "box", "lower": [0], "upper": [null]}}]})")),
                    InputError);
    CHECK_THROWS_AS(parse_catalog(json::parse(R"({"fixtures": [{"economy": {"kind": "linear",
                                                 "M": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]], "c": [0,0,0,0]},
                                                 "region": {"kind": "simplex", "n": 4}}]})")),
                    InputError);
}

TEST_CASE("solve results round-trip bit for bit") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 50; ++k) {
        VISolveResult r;
        r.solution = PriceVector(std::vector<double>{u(rng), u(rng) * 1e-300, 1.0 / 3.0});
        r.residual = std::abs(u(rng)) * 1e-9;
        r.minty_gap = u(rng);
        r.iterations = static_cast<std::size_t>(k * 977);
        r.trace = {u(rng), 0.1, 5e-324};
        r.status = k % 2 ? SolveStatus::converged : SolveStatus::budget_exhausted;
        const auto back = solve_result_from_json(json::parse(to_json(r, true).dump()));
        CHECK(back == r);
        for (std::size_t i = 0; i < 3; ++i) CHECK(same_bits(back.solution[i], r.solution[i]));
        CHECK(same_bits(back.residual, r.residual));
    }
    VISolveResult r;
    r.solution = PriceVector::zeros(1);
    r.trace = {1.0};
    CHECK_FALSE(to_json(r).contains("trace"));
    CHECK(to_json(r)["status"] == "budget_exhausted");
}

TEST_CASE("monotonicity reports round-trip") {
    const auto f = find_fixture("half_minus_t");
    const auto plan = make_sample_plan(f.region);
    for (auto c : kAllClasses) {
        const auto r = check_class(c, f.model, f.region, plan);
        CHECK(report_from_json(json::parse(to_json(r).dump())) == r);
    }
    const auto g = find_fixture("t_minus_half");
    const auto holds = check_class(MonotonicityClass::proper_quasi_dual, g.model, g.region, make_sample_plan(g.region));
    const auto j = to_json(holds);
    CHECK(j["verdict"] == "holds_on_samples");
    CHECK(j["witness"].is_null());
    CHECK(report_from_json(json::parse(j.dump())) == holds);

    MonotonicityReport empty;
    empty.margin = std::numeric_limits<double>::infinity();
    CHECK(to_json(empty)["margin"].is_null());
    CHECK(report_from_json(to_json(empty)).margin == empty.margin);
    auto broken = to_json(empty);
    broken["verdict"] = "maybe";
    CHECK_THROWS_AS(report_from_json(broken), InputError);
}

TEST_CASE("solution set estimates serialize stably") {
    const auto f = find_fixture("half_minus_t");
    const auto est = enumerate_solutions(VIProblem(f.model, f.region), 0.01, f.lipschitz);
    const auto j = to_json(est);
    CHECK(json::parse(j.dump()) == j);
    CHECK(j["grid_points"] == 101);
    CHECK(j["stampacchia_clusters"].size() == 3);
    CHECK(j["minty_members"].empty());
    CHECK(j["unique"] == false);
    CHECK(j["stampacchia_members"].size() == est.stampacchia_members.size());
}

TEST_CASE("trace CSV format") {
    std::ostringstream os;
    write_trace_csv(os, {0.5, 0.1, 1.0 / 3.0});
    CHECK(os.str() == "iteration,residual\n1,0.5\n2,0.10000000000000001\n3,0.33333333333333331\n");
    std::ostringstream empty;
    write_trace_csv(empty, {});
    CHECK(empty.str() == "iteration,residual\n");
}
