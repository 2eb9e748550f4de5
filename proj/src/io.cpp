#include "walras/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace walras {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
    return j.at(key);
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) fail(what + " must be a number");
    return j.get<double>();
}

// null entries stand for +infinity.
std::vector<double> numbers(const json& j, const std::string& what, bool allow_null = false) {
    if (!j.is_array()) fail(what + " must be an array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (allow_null && v.is_null())
            out.push_back(kInf);
        else
            out.push_back(number(v, what + " entry"));
    }
    return out;
}

Matrix matrix(const json& j, const std::string& what) {
    if (!j.is_array()) fail(what + " must be an array of rows");
    Matrix out;
    for (const auto& row : j) out.push_back(numbers(row, what + " row"));
    return out;
}

double positive(const json& j, const char* key, double fallback, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const double v = number(j.at(key), where + "." + key);
    if (!(v > 0.0) || !std::isfinite(v)) fail(where + "." + key + " must be positive");
    return v;
}

std::size_t count(const json& j, const char* key, std::size_t fallback, std::size_t min, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min))
        fail(where + "." + key + " must be an integer >= " + std::to_string(min));
    return v.get<std::size_t>();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }
double finite_or_inf(const json& j) { return j.is_null() ? kInf : j.get<double>(); }

struct EconomySpec {
    ExcessDemandModel model;
    std::optional<ConvexRegion> region;
    std::optional<double> lipschitz;
};

EconomySpec parse_economy(const json& j, const std::optional<ConvexRegion>& region) {
    const std::string kind = require(j, "kind", "economy").get<std::string>();
    if (kind == "linear") {
        return {linear_economy(matrix(require(j, "M", "economy"), "economy.M"),
                               numbers(require(j, "c", "economy"), "economy.c"), j.value("label", "linear")),
                std::nullopt, std::nullopt};
    }
    if (kind == "scalar") {
        const std::string name = require(j, "name", "economy").get<std::string>();
        double lo = 0.0, hi = 1.0;
        if (region) {
            const Box* b = region->as_box();
            if (!b || b->dim() != 1 || !b->bounded()) fail("scalar economy needs a bounded one-dimensional box region");
            lo = b->lower()[0];
            hi = b->upper()[0];
        }
        std::function<double(double)> f;
        try {
            f = scalar_function(name);
        } catch (const std::out_of_range& e) {
            fail(e.what());
        }
        return {scalar_economy(f, lo, hi, name), region ? std::nullopt : std::optional<ConvexRegion>(
                                                                             Box({lo}, {hi})),
                std::nullopt};
    }
    if (kind == "catalog") {
        const std::string name = require(j, "name", "economy").get<std::string>();
        try {
            auto fx = find_fixture(name);
            return {fx.model, fx.region, fx.lipschitz};
        } catch (const std::out_of_range& e) {
            fail(e.what());
        }
    }
    fail("unknown economy kind: " + kind);
}

PlanConfig parse_plan(const json& j) {
    PlanConfig p;
    p.samples = count(j, "samples", p.samples, 0, "plan");
    p.tuple_size_max = count(j, "m_max", p.tuple_size_max, 2, "plan");
    p.weight_steps = count(j, "weight_steps", p.weight_steps, 3, "plan");
    p.eps_strict = positive(j, "eps_strict", p.eps_strict, "plan");
    return p;
}

SolverOptions parse_solver(const json& j) {
    SolverOptions s;
    s.step = positive(j, "step", s.step, "solver");
    s.budget = count(j, "budget", s.budget, 1, "solver");
    s.tol = positive(j, "tol", s.tol, "solver");
    return s;
}

json witness_json(const Witness& w) {
    json pts = json::array();
    for (const auto& p : w.points) pts.push_back(p.coords());
    return {{"indices", w.indices},
            {"points", pts},
            {"weights", w.weights},
            {"combined", w.combined ? json(w.combined->coords()) : json()},
            {"dots", w.dots}};
}

Witness witness_from_json(const json& j) {
    Witness w;
    w.indices = j.at("indices").get<std::vector<std::size_t>>();
    for (const auto& p : j.at("points")) w.points.emplace_back(p.get<std::vector<double>>());
    w.weights = j.at("weights").get<std::vector<double>>();
    if (!j.at("combined").is_null()) w.combined = PriceVector(j.at("combined").get<std::vector<double>>());
    w.dots = j.at("dots").get<std::vector<double>>();
    return w;
}

}  // namespace

ConvexRegion parse_region(const json& j) {
    const std::string kind = require(j, "kind", "region").get<std::string>();
    try {
        if (kind == "simplex") {
            const auto n = count(j, "n", 0, 1, "region");
            if (n == 0) fail("region: missing \"n\"");
            return Simplex(n);
        }
        if (kind == "box")
            return Box(numbers(require(j, "lower", "region"), "region.lower"),
                       numbers(require(j, "upper", "region"), "region.upper", true));
        if (kind == "polyhedron") {
            std::vector<double> lower, upper;
            if (j.contains("lower")) {
                lower = numbers(j.at("lower"), "region.lower", true);
                for (double& v : lower)
                    if (v == kInf) v = -kInf;
            }
            if (j.contains("upper")) upper = numbers(j.at("upper"), "region.upper", true);
            return Polyhedron(matrix(require(j, "A", "region"), "region.A"), numbers(require(j, "b", "region"), "region.b"),
                              lower, upper);
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("region: ") + e.what());
    }
    fail("unknown region kind: " + kind);
}

ProblemFile parse_problem(const json& j) {
    if (!j.is_object()) fail("problem must be a JSON object");
    std::optional<ConvexRegion> region;
    if (j.contains("region")) region = parse_region(j.at("region"));
    std::optional<EconomySpec> econ;
    try {
        econ = parse_economy(require(j, "economy", "problem"), region);
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("economy: ") + e.what());
    }
    if (!region) region = econ->region;
    if (!region) fail("problem: missing \"region\"");
    if (econ->model.dim() != region->dim())
        fail("economy dimension " + std::to_string(econ->model.dim()) + " does not match region dimension " +
             std::to_string(region->dim()));

    const json empty = json::object();
    const json& oracle = j.contains("oracle") ? j.at("oracle") : empty;
    ProblemFile pf{.label = j.value("label", econ->model.label().empty() ? "problem" : econ->model.label()),
                   .model = econ->model,
                   .region = *region,
                   .solver = parse_solver(j.contains("solver") ? j.at("solver") : empty),
                   .start = std::nullopt,
                   .plan = parse_plan(j.contains("plan") ? j.at("plan") : empty),
                   .grid_spacing = positive(oracle, "grid_spacing", 0.01, "oracle"),
                   .lipschitz = positive(oracle, "lipschitz", econ->lipschitz.value_or(1.0), "oracle")};
    if (j.contains("solver") && j.at("solver").contains("start")) {
        try {
            pf.start = PriceVector(numbers(j.at("solver").at("start"), "solver.start"));
        } catch (const InputError&) {
            throw;
        } catch (const std::exception& e) {
            fail(std::string("solver.start: ") + e.what());
        }
        if (pf.start->size() != pf.region.dim()) fail("solver.start has the wrong dimension");
    }
    return pf;
}

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(path + ": " + e.what());
    }
}

}  // namespace

ProblemFile load_problem(const std::string& path) { return parse_problem(read_json_file(path)); }

CatalogFile parse_catalog(const json& j) {
    if (!j.is_object()) fail("catalog must be a JSON object");
    CatalogFile cat;
    const json empty = json::object();
    cat.config.plan = parse_plan(j.contains("plan") ? j.at("plan") : empty);
    cat.config.solver = parse_solver(j.contains("solver") ? j.at("solver") : empty);
    cat.config.grid_spacing = positive(j.contains("oracle") ? j.at("oracle") : empty, "grid_spacing", 0.01, "oracle");
    const auto& fixtures = require(j, "fixtures", "catalog");
    if (!fixtures.is_array()) fail("catalog.fixtures must be an array");
    for (const auto& f : fixtures) {
        if (f.is_string()) {
            try {
                cat.fixtures.push_back(find_fixture(f.get<std::string>()));
            } catch (const std::out_of_range& e) {
                fail(e.what());
            }
            continue;
        }
        auto pf = parse_problem(f);
        if (pf.region.dim() > kOracleMaxDim) fail("catalog fixture " + pf.label + " exceeds the oracle dimension cap");
        if (!pf.region.bounded()) fail("catalog fixture " + pf.label + " needs a bounded region");
        cat.fixtures.push_back({pf.label, pf.model, pf.region, pf.lipschitz, ""});
    }
    return cat;
}

CatalogFile load_catalog(const std::string& path) { return parse_catalog(read_json_file(path)); }

json to_json(const VISolveResult& r, bool include_trace) {
    json j = {{"solution", r.solution.coords()},
              {"residual", r.residual},
              {"minty_gap", r.minty_gap},
              {"iterations", r.iterations},
              {"status", r.status == SolveStatus::converged ? "converged" : "budget_exhausted"}};
    if (include_trace) j["trace"] = r.trace;
    return j;
}

VISolveResult solve_result_from_json(const json& j) {
    VISolveResult r;
    r.solution = PriceVector(j.at("solution").get<std::vector<double>>());
    r.residual = j.at("residual").get<double>();
    r.minty_gap = j.at("minty_gap").get<double>();
    r.iterations = j.at("iterations").get<std::size_t>();
    const auto status = j.at("status").get<std::string>();
    if (status == "converged")
        r.status = SolveStatus::converged;
    else if (status == "budget_exhausted")
        r.status = SolveStatus::budget_exhausted;
    else
        fail("unknown solve status: " + status);
    if (j.contains("trace")) r.trace = j.at("trace").get<std::vector<double>>();
    return r;
}

json to_json(const MonotonicityReport& r) {
    return {{"class_checked", std::string(to_string(r.class_checked))},
            {"verdict", r.verdict == Verdict::refuted ? "refuted" : "holds_on_samples"},
            {"witness", r.witness ? witness_json(*r.witness) : json()},
            {"samples_used", r.samples_used},
            {"margin", finite_or_null(r.margin)}};
}

MonotonicityReport report_from_json(const json& j) {
    MonotonicityReport r;
    const auto cls = parse_class(j.at("class_checked").get<std::string>());
    if (!cls) fail("unknown monotonicity class");
    r.class_checked = *cls;
    const auto verdict = j.at("verdict").get<std::string>();
    if (verdict == "refuted")
        r.verdict = Verdict::refuted;
    else if (verdict == "holds_on_samples")
        r.verdict = Verdict::holds_on_samples;
    else
        fail("unknown verdict: " + verdict);
    if (!j.at("witness").is_null()) r.witness = witness_from_json(j.at("witness"));
    r.samples_used = j.at("samples_used").get<std::size_t>();
    r.margin = finite_or_inf(j.at("margin"));
    return r;
}

json to_json(const SolutionSetEstimate& est) {
    auto points = [&](const std::vector<std::size_t>& idx) {
        json arr = json::array();
        for (std::size_t i : idx) arr.push_back(est.grid_points[i].coords());
        return arr;
    };
    auto clusters = [&](const std::vector<Cluster>& cs) {
        json arr = json::array();
        for (const auto& c : cs)
            arr.push_back({{"representative", est.grid_points[c.representative].coords()},
                           {"size", c.members.size()},
                           {"diameter", c.diameter}});
        return arr;
    };
    return {{"grid_spacing", est.grid_spacing},
            {"tolerance", est.tolerance},
            {"grid_points", est.grid_points.size()},
            {"stampacchia_members", points(est.stampacchia_members)},
            {"minty_members", points(est.minty_members)},
            {"stampacchia_clusters", clusters(stampacchia_clusters(est))},
            {"minty_clusters", clusters(minty_clusters(est))},
            {"unique", uniqueness_probe(est)}};
}

void write_trace_csv(std::ostream& os, const std::vector<double>& trace) {
    os << "iteration,residual\n";
    char buf[64];
    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i + 1, trace[i]);
        os << buf;
    }
}

}  // namespace walras
