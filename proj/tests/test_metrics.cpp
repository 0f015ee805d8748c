#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "labhh/io.hpp"
#include "labhh/metrics.hpp"

using namespace labhh;

TEST_CASE("final gap arithmetic") {
    CHECK(final_gap(1.0, 1.0) == 0.0);
    CHECK(final_gap(1.1, 1.0) == Catch::Approx(0.1).margin(1e-12));
    CHECK_THROWS_AS(final_gap(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(final_gap(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("constant-gap traces integrate to the gap") {
    const double ref = 50.0;
    const double len = 55.0; // gap 0.1
    std::vector<std::pair<int, double>> trace;
    for (int t = 0; t <= 1000; t += 40) trace.emplace_back(t, len);
    const double auc = convergence_auc(trace, ref, 1000);
    CHECK(std::abs(auc - 0.1) < 1e-12);
}

TEST_CASE("linear descent integrates to half the initial gap") {
    const double ref = 100.0;
    std::vector<std::pair<int, double>> trace;
    for (int t = 0; t <= 1000; t += 10) {
        trace.emplace_back(t, ref * (1.0 + 0.2 * (1.0 - t / 1000.0)));
    }
    CHECK(convergence_auc(trace, ref, 1000) == Catch::Approx(0.1).margin(1e-9));
}

TEST_CASE("auc is bracketed by the final and initial gaps") {
    const double ref = 10.0;
    const std::vector<std::pair<int, double>> trace = {
        {0, 13.0}, {100, 12.0}, {400, 11.0}, {1000, 10.5}};
    const double auc = convergence_auc(trace, ref, 1000);
    CHECK(auc >= final_gap(10.5, ref));
    CHECK(auc <= final_gap(13.0, ref));
    CHECK_THROWS_AS(convergence_auc({}, ref, 1000), std::invalid_argument);
}

TEST_CASE("tiny benchmark matrix has the advertised shape") {
    BenchmarkConfig cfg;
    cfg.families = {Family::Uniform, Family::Corridor};
    cfg.sizes = {20};
    cfg.instances_per_cell = 2;
    cfg.seeds = {1, 2};
    cfg.methods = {"labhh", "randomhh", "nn"};
    cfg.budget = 300;
    cfg.jobs = 2;
    const BenchResult bench = run_benchmark(cfg);

    CHECK(bench.instances.size() == 4);
    CHECK(bench.rows.size() == 4 * 3 * 2);

    // at least one exact-zero gap per instance, refs are pool minima
    std::set<std::string> with_zero;
    for (const ReportRow& row : bench.rows) {
        CHECK(row.final_gap >= 0.0);
        CHECK(row.auc >= row.final_gap - 1e-12);
        if (row.final_gap == 0.0) with_zero.insert(row.instance_id);
    }
    CHECK(with_zero.size() == 4);

    // operator shares of every hyper-heuristic sum to one
    REQUIRE(bench.operator_shares.count("labhh") == 1);
    REQUIRE(bench.operator_shares.count("randomhh") == 1);
    for (const auto& [method, shares] : bench.operator_shares) {
        double total = 0.0;
        for (double s : shares) total += s;
        CHECK(std::abs(total - 1.0) <= 1e-9);
    }

    // aggregates are exact functions of the rows
    double labhh_gap = 0.0;
    int labhh_rows = 0;
    for (const ReportRow& row : bench.rows) {
        if (row.method == "labhh") {
            labhh_gap += row.final_gap;
            ++labhh_rows;
        }
    }
    CHECK(bench.by_method.at("labhh").mean_gap ==
          Catch::Approx(labhh_gap / labhh_rows).margin(1e-15));
    CHECK(bench.by_method.at("labhh").runs == labhh_rows);
    CHECK(bench.gap_by_family.at("labhh").count("uniform") == 1);
    CHECK(bench.gap_by_size.at("labhh").count(20) == 1);
}

TEST_CASE("benchmark results are independent of the worker count") {
    BenchmarkConfig cfg;
    cfg.families = {Family::Clustered};
    cfg.sizes = {15};
    cfg.instances_per_cell = 2;
    cfg.seeds = {1};
    cfg.methods = {"labhh", "2opt"};
    cfg.budget = 200;
    cfg.jobs = 1;
    const BenchResult serial = run_benchmark(cfg);
    cfg.jobs = 4;
    const BenchResult parallel = run_benchmark(cfg);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t k = 0; k < serial.rows.size(); ++k) {
        CHECK(serial.rows[k].final_length == parallel.rows[k].final_length);
        CHECK(serial.rows[k].final_gap == parallel.rows[k].final_gap);
        CHECK(serial.rows[k].auc == parallel.rows[k].auc);
    }
}

TEST_CASE("ablation suite runs the full variant set") {
    BenchmarkConfig cfg;
    cfg.families = {Family::Uniform};
    cfg.sizes = {15};
    cfg.instances_per_cell = 1;
    cfg.seeds = {1};
    cfg.budget = 200;
    cfg.jobs = 2;
    const BenchResult ab = run_ablation(cfg);
    CHECK(ab.by_method.size() == 10); // full + nine variants
    CHECK(ab.by_method.count("labhh") == 1);
    for (const std::string& v : ablation_variants()) {
        CHECK(ab.by_method.count(v) == 1);
    }
    // the context-free variant really runs on a 1-dim context
    CHECK(context_dim(variant_config("labhh_wo_context", 100, 1, ControllerParams{}).feature_mask) == 1);
    // drop-one variants zero out the dropped operator
    for (const RunRecord& rec : ab.records) {
        if (rec.method == "labhh_wo_2opt") {
            CHECK(rec.result.operator_counts[static_cast<int>(MoveKind::TwoOpt)] == 0);
        }
    }
}

TEST_CASE("instance files round-trip exactly") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "labhh_test_io";
    fs::create_directories(dir);
    const std::string path = (dir / "inst.json").string();

    const Instance inst = generate(Family::GridJitter, 23, 99);
    save_instance(inst, path);
    const Instance loaded = load_instance(path);
    CHECK(loaded.id == inst.id);
    CHECK(loaded.family == inst.family);
    CHECK(loaded.n == inst.n);
    CHECK(loaded.seed == inst.seed);
    for (int i = 0; i < inst.n; ++i) {
        CHECK(loaded.points[i].x == inst.points[i].x);
        CHECK(loaded.points[i].y == inst.points[i].y);
    }

    // identical bytes on re-save (determinism of the file format)
    const std::string path2 = (dir / "inst2.json").string();
    save_instance(inst, path2);
    std::ifstream a(path), b(path2);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);

    // loader validation
    const std::string bad = (dir / "bad.json").string();
    {
        std::ofstream out(bad);
        out << R"({"id":"x","family":"uniform","n":3,"seed":1,"points":[[0.5,0.5],[0.2,0.2]]})";
    }
    CHECK_THROWS_AS(load_instance(bad), std::runtime_error);
    {
        std::ofstream out(bad);
        out << R"({"id":"x","family":"uniform","n":2,"seed":1,"points":[[0.5,0.5],[1.5,0.2]]})";
    }
    CHECK_THROWS_AS(load_instance(bad), std::runtime_error);
    CHECK_THROWS_AS(load_instance((dir / "missing.json").string()), std::runtime_error);
    fs::remove_all(dir);
}

TEST_CASE("csv writers emit the pinned columns") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "labhh_test_csv";
    fs::create_directories(dir);

    BenchmarkConfig cfg;
    cfg.families = {Family::Uniform};
    cfg.sizes = {12};
    cfg.instances_per_cell = 1;
    cfg.seeds = {1};
    cfg.methods = {"nn", "2opt"};
    cfg.budget = 100;
    cfg.jobs = 1;
    const BenchResult bench = run_benchmark(cfg);

    const std::string results = (dir / "results.csv").string();
    const std::string traces = (dir / "traces.csv").string();
    write_results_csv(bench.rows, results);
    write_traces_csv(bench, traces);

    std::ifstream rin(results);
    std::string header;
    std::getline(rin, header);
    CHECK(header == "instance_id,family,n,method,seed,final_length,ref_length,final_gap,auc,runtime_s");
    int lines = 0;
    std::string line;
    while (std::getline(rin, line)) ++lines;
    CHECK(lines == static_cast<int>(bench.rows.size()));

    std::ifstream tin(traces);
    std::getline(tin, header);
    CHECK(header == "instance_id,method,seed,iteration,best_length");

    const ordered_json summary = summary_to_json(bench);
    CHECK(summary.contains("config"));
    CHECK(summary.at("methods").contains("nn"));
    CHECK(summary.at("methods").at("nn").contains("mean_gap"));
    CHECK(summary.at("methods").at("nn").contains("se_gap"));
    CHECK(summary.at("methods").at("nn").contains("mean_auc"));
    CHECK(summary.at("methods").at("nn").contains("se_auc"));
    CHECK(summary.at("methods").at("nn").contains("mean_runtime"));
    fs::remove_all(dir);
}
