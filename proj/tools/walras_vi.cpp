#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "walras/io.hpp"

namespace {

using nlohmann::json;
using namespace walras;

enum Exit : int { ok = 0, input_error = 1, budget_exhausted = 2, refuted = 3, contradiction = 4 };

void emit(const json& j, const std::string& out) {
    const std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw InputError("cannot write " + out);
    f << text;
}

int cmd_solve(const std::string& path, const std::string& out, const std::string& trace_dir) {
    const auto pf = load_problem(path);
    const VIProblem prob(pf.model, pf.region);
    const auto result = solve_extragradient(prob, pf.start.value_or(pf.region.anchor()), pf.solver);
    emit(to_json(result), out);
    if (!trace_dir.empty()) {
        std::filesystem::create_directories(trace_dir);
        std::ofstream csv(std::filesystem::path(trace_dir) / (pf.label + ".csv"));
        write_trace_csv(csv, result.trace);
    }
    return result.status == SolveStatus::converged ? ok : budget_exhausted;
}

int cmd_check(const std::string& path, const std::string& cls_name, const std::string& out) {
    const auto cls = parse_class(cls_name);
    if (!cls) throw InputError("unknown class: " + cls_name);
    const auto pf = load_problem(path);
    const auto plan = make_sample_plan(pf.region, pf.plan);
    const auto report = check_class(*cls, pf.model, pf.region, plan);
    emit(to_json(report), out);
    return report.verdict == Verdict::refuted ? refuted : ok;
}

int cmd_oracle(const std::string& path, std::optional<double> grid, const std::string& out) {
    const auto pf = load_problem(path);
    const double h = grid.value_or(pf.grid_spacing);
    if (!(h > 0.0)) throw InputError("--grid must be positive");
    const VIProblem prob(pf.model, pf.region);
    emit(to_json(enumerate_solutions(prob, h, pf.lipschitz)), out);
    return ok;
}

int cmd_harness(const std::string& catalog, std::optional<double> grid, const std::string& out,
                const std::string& trace_dir) {
    CatalogFile cat;
    if (catalog == "default")
        cat.fixtures = default_catalog();
    else
        cat = load_catalog(catalog);
    if (grid) {
        if (!(*grid > 0.0)) throw InputError("--grid must be positive");
        cat.config.grid_spacing = *grid;
    }
    const auto run = run_catalog(cat.fixtures, cat.config);
    emit(summary_json(run.results), out);
    std::cerr << summary_table(run.results);
    if (!trace_dir.empty()) {
        std::filesystem::create_directories(trace_dir);
        for (const auto& a : run.analyses) {
            std::ofstream csv(std::filesystem::path(trace_dir) / (a.label + ".csv"));
            write_trace_csv(csv, a.solve.trace);
        }
    }
    return count_contradictions(run.results) == 0 ? ok : contradiction;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Walrasian equilibrium problems as variational inequalities"};
    app.require_subcommand(1);

    std::string out, trace_dir, problem, cls, catalog = "default";
    std::optional<double> grid;
    long seed = 0;  // reserved: every plan is deterministic
    app.add_option("--seed", seed, "Reserved, unused");

    auto* solve = app.add_subcommand("solve", "Run extragradient on a problem file");
    solve->add_option("problem", problem, "Problem JSON")->required();
    solve->add_option("--out", out, "Write JSON here instead of stdout");
    solve->add_option("--trace-dir", trace_dir, "Directory for the residual CSV");

    auto* check = app.add_subcommand("check", "Run one monotonicity checker");
    check->add_option("problem", problem, "Problem JSON")->required();
    check->add_option("--class", cls, "pseudo | strict_pseudo | proper_quasi | proper_quasi_dual | strict_proper_quasi")
        ->required();
    check->add_option("--out", out, "Write JSON here instead of stdout");

    auto* oracle = app.add_subcommand("oracle", "Dump the grid solution-set estimate");
    oracle->add_option("problem", problem, "Problem JSON")->required();
    oracle->add_option("--grid", grid, "Grid spacing (overrides the file)");
    oracle->add_option("--out", out, "Write JSON here instead of stdout");

    auto* harness = app.add_subcommand("harness", "Run every theorem check over a catalog");
    harness->add_option("--catalog", catalog, "\"default\" or a catalog JSON file");
    harness->add_option("--grid", grid, "Grid spacing");
    harness->add_option("--out", out, "Write JSON here instead of stdout");
    harness->add_option("--trace-dir", trace_dir, "Directory for per-fixture residual CSVs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try {
        if (*solve) return cmd_solve(problem, out, trace_dir);
        if (*check) return cmd_check(problem, cls, out);
        if (*oracle) return cmd_oracle(problem, grid, out);
        if (*harness) return cmd_harness(catalog, grid, out, trace_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}
