// Command-line harness: instance generation, single runs, the benchmark
// matrix, the ablation suite, and landscape feature inspection.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "labhh/bench.hpp"
#include "labhh/io.hpp"

namespace fs = std::filesystem;

namespace {

struct ControllerFlags {
    double alpha = 1.0;
    int window = 20;
    int stagnation_window = 30;
    double gate_prob = 0.5;

    labhh::ControllerParams params() const {
        return labhh::ControllerParams{alpha, window, stagnation_window, gate_prob};
    }
};

void add_controller_flags(CLI::App* cmd, ControllerFlags& f) {
    cmd->add_option("--alpha", f.alpha, "LinUCB exploration weight")->check(CLI::NonNegativeNumber);
    cmd->add_option("--window", f.window, "recent improvement/acceptance window W")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--stagnation-window", f.stagnation_window, "stagnation saturation window S")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gate-prob", f.gate_prob, "repair gate probability at saturation")
        ->check(CLI::Range(0.0, 1.0));
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

labhh::RunConfig build_run_config(const std::string& method, int budget, std::uint64_t seed,
                                  const ControllerFlags& flags, const std::string& acceptance,
                                  const std::string& features, const std::string& ops,
                                  bool gate) {
    labhh::RunConfig cfg = labhh::variant_config(method, budget, seed, flags.params());
    if (acceptance == "annealing") cfg.acceptance = labhh::AcceptanceRule::Annealing;
    if (features == "nostatic") cfg.feature_mask = labhh::FeatureMask::NoStatic;
    if (features == "nodynamic") cfg.feature_mask = labhh::FeatureMask::NoDynamic;
    if (features == "nocontext") cfg.feature_mask = labhh::FeatureMask::NoContext;
    cfg.gate_enabled = gate && cfg.gate_enabled;
    if (!ops.empty()) {
        cfg.operator_mask = {false, false, false, false};
        for (const std::string& name : split_list(ops)) {
            bool known = false;
            for (int a = 0; a < labhh::kNumOperators; ++a) {
                if (name == labhh::move_name(static_cast<labhh::MoveKind>(a))) {
                    cfg.operator_mask[a] = true;
                    known = true;
                }
            }
            if (!known) throw CLI::ValidationError("--ops", "unknown operator: " + name);
        }
    }
    return cfg;
}

void write_bench_outputs(const labhh::BenchResult& bench, const std::string& out_dir,
                         bool with_ablation_table) {
    fs::create_directories(fs::path(out_dir) / "instances");
    for (const labhh::Instance& inst : bench.instances) {
        labhh::save_instance(inst, (fs::path(out_dir) / "instances" / (inst.id + ".json")).string());
    }
    labhh::write_results_csv(bench.rows, (fs::path(out_dir) / "results.csv").string());
    labhh::write_traces_csv(bench, (fs::path(out_dir) / "traces.csv").string());
    labhh::write_json(labhh::summary_to_json(bench), (fs::path(out_dir) / "summary.json").string());
    if (with_ablation_table) {
        labhh::ordered_json ab;
        ab["config"] = labhh::benchmark_config_to_json(bench.config);
        labhh::ordered_json variants;
        std::vector<std::string> order = {"labhh"};
        for (const std::string& v : labhh::ablation_variants()) order.push_back(v);
        for (const std::string& v : order) {
            auto it = bench.by_method.find(v);
            if (it == bench.by_method.end()) continue;
            labhh::ordered_json row;
            row["mean_auc"] = it->second.mean_auc;
            row["se_auc"] = it->second.se_auc;
            row["mean_gap"] = it->second.mean_gap;
            row["se_gap"] = it->second.se_gap;
            variants[v] = std::move(row);
        }
        ab["variants"] = std::move(variants);
        labhh::write_json(ab, (fs::path(out_dir) / "ablation.json").string());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LA-BHH: landscape-aware bandit hyper-heuristic for Euclidean TSP"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded instance file");
    std::string gen_family = "uniform";
    int gen_n = 50;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--family", gen_family, "uniform|clustered|corridor|grid_jitter|mixed_density");
    gen->add_option("--n", gen_n, "number of sites")->check(CLI::Range(2, 1000000));
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output JSON path")->required();

    // features
    auto* features = app.add_subcommand("features", "print static landscape features");
    std::string feat_instance;
    features->add_option("--instance", feat_instance, "instance JSON path")->required();

    // run
    auto* run_cmd = app.add_subcommand("run", "single method on one instance");
    std::string run_method = "labhh";
    std::string run_instance;
    int run_budget = 20000;
    std::uint64_t run_seed = 1;
    std::string run_acceptance = "greedy";
    std::string run_features = "";
    std::string run_ops;
    std::string run_out;
    bool run_gate = true;
    ControllerFlags run_flags;
    run_cmd->add_option("--method", run_method,
                        "labhh|ucbhh|randomhh|nn|2opt|sa|ils|ga or an ablation variant");
    run_cmd->add_option("--instance", run_instance, "instance JSON path")->required();
    run_cmd->add_option("--budget", run_budget, "iteration budget")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run_seed, "run seed");
    run_cmd->add_option("--acceptance", run_acceptance, "greedy|annealing")
        ->check(CLI::IsMember({"greedy", "annealing"}));
    run_cmd->add_option("--features", run_features, "full|nostatic|nodynamic|nocontext")
        ->check(CLI::IsMember({"", "full", "nostatic", "nodynamic", "nocontext"}));
    run_cmd->add_option("--ops", run_ops, "comma list of operators to keep (2opt,swap,relocate,oropt2)");
    run_cmd->add_flag("--gate,!--no-gate", run_gate, "stagnation repair gate (default on)");
    run_cmd->add_option("--out", run_out, "write result JSON here instead of stdout");
    add_controller_flags(run_cmd, run_flags);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "full benchmark matrix");
    std::string bench_out;
    std::string bench_families, bench_sizes, bench_seeds, bench_methods;
    int bench_cells = 3;
    int bench_budget = 20000;
    int bench_jobs = 0;
    bool bench_ablate = false;
    ControllerFlags bench_flags;
    bench_cmd->add_option("--out", bench_out, "output directory")->required();
    bench_cmd->add_option("--families", bench_families, "comma list (default: all five)");
    bench_cmd->add_option("--sizes", bench_sizes, "comma list (default: 50,100,200)");
    bench_cmd->add_option("--seeds", bench_seeds, "comma list of run seeds (default: 1,2,3)");
    bench_cmd->add_option("--methods", bench_methods, "comma list (default: all eight)");
    bench_cmd->add_option("--instances-per-cell", bench_cells, "instances per family-size pair")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--budget", bench_budget, "iteration budget")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--jobs", bench_jobs, "worker count (0 = hardware)");
    bench_cmd->add_flag("--ablate", bench_ablate, "also run the nine ablation variants");
    add_controller_flags(bench_cmd, bench_flags);

    // ablate
    auto* ablate_cmd = app.add_subcommand("ablate", "ablation suite (full LA-BHH + 9 variants)");
    std::string ablate_out;
    std::string ablate_families, ablate_sizes, ablate_seeds;
    int ablate_cells = 3;
    int ablate_budget = 20000;
    int ablate_jobs = 0;
    ControllerFlags ablate_flags;
    ablate_cmd->add_option("--out", ablate_out, "output directory")->required();
    ablate_cmd->add_option("--families", ablate_families, "comma list (default: all five)");
    ablate_cmd->add_option("--sizes", ablate_sizes, "comma list (default: 50,100,200)");
    ablate_cmd->add_option("--seeds", ablate_seeds, "comma list of run seeds (default: 1,2,3)");
    ablate_cmd->add_option("--instances-per-cell", ablate_cells, "instances per family-size pair")
        ->check(CLI::PositiveNumber);
    ablate_cmd->add_option("--budget", ablate_budget, "iteration budget")->check(CLI::PositiveNumber);
    ablate_cmd->add_option("--jobs", ablate_jobs, "worker count (0 = hardware)");
    add_controller_flags(ablate_cmd, ablate_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    auto fill_matrix = [&](labhh::BenchmarkConfig& cfg, const std::string& fams,
                           const std::string& sizes, const std::string& seeds, int cells,
                           int budget, int jobs, const ControllerFlags& flags) {
        if (!fams.empty()) {
            cfg.families.clear();
            for (const std::string& f : split_list(fams)) cfg.families.push_back(labhh::parse_family(f));
        }
        if (!sizes.empty()) {
            cfg.sizes.clear();
            for (const std::string& s : split_list(sizes)) cfg.sizes.push_back(std::stoi(s));
        }
        if (!seeds.empty()) {
            cfg.seeds.clear();
            for (const std::string& s : split_list(seeds)) cfg.seeds.push_back(std::stoull(s));
        }
        cfg.instances_per_cell = cells;
        cfg.budget = budget;
        cfg.jobs = jobs;
        cfg.params = flags.params();
    };

    try {
        if (gen->parsed()) {
            const labhh::Instance inst =
                labhh::generate(labhh::parse_family(gen_family), gen_n, gen_seed);
            labhh::save_instance(inst, gen_out);
            std::cout << "wrote " << gen_out << " (" << inst.id << ")\n";
            return 0;
        }
        if (features->parsed()) {
            const labhh::Instance inst = labhh::load_instance(feat_instance);
            const labhh::DistanceMatrix dm = labhh::distance_matrix(inst);
            const labhh::StaticFeatures f = labhh::static_features(inst, dm);
            labhh::ordered_json j;
            j["size_norm"] = f.size_norm;
            j["nn_mean"] = f.nn_mean;
            j["nn_dispersion"] = f.nn_dispersion;
            j["anisotropy"] = f.anisotropy;
            j["radial_dispersion"] = f.radial_dispersion;
            j["mst_per_node"] = f.mst_per_node;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (run_cmd->parsed()) {
            const labhh::Instance inst = labhh::load_instance(run_instance);
            const labhh::DistanceMatrix dm = labhh::distance_matrix(inst);
            const labhh::Tour initial = labhh::multi_start_nn(dm);
            labhh::ordered_json config;
            labhh::RunResult result;
            const bool is_baseline = run_method == "nn" || run_method == "2opt" ||
                                     run_method == "sa" || run_method == "ils" || run_method == "ga";
            if (is_baseline) {
                result = labhh::run_method(run_method, inst, dm, initial, run_budget, run_seed,
                                           run_flags.params());
                config["budget"] = run_budget;
                config["seed"] = run_seed;
                config["version"] = labhh::kVersion;
            } else {
                const labhh::RunConfig cfg =
                    build_run_config(run_method, run_budget, run_seed, run_flags, run_acceptance,
                                     run_features, run_ops, run_gate);
                result = labhh::run(inst, cfg, dm, initial);
                config = labhh::run_config_to_json(cfg);
            }
            const labhh::ordered_json j =
                labhh::run_result_to_json(result, run_method, inst.id, config);
            if (run_out.empty()) {
                std::cout << j.dump(2) << "\n";
            } else {
                labhh::write_json(j, run_out);
                std::cout << "wrote " << run_out << "\n";
            }
            return 0;
        }
        if (bench_cmd->parsed()) {
            labhh::BenchmarkConfig cfg;
            fill_matrix(cfg, bench_families, bench_sizes, bench_seeds, bench_cells, bench_budget,
                        bench_jobs, bench_flags);
            if (!bench_methods.empty()) cfg.methods = split_list(bench_methods);
            cfg.include_ablations = bench_ablate;
            const labhh::BenchResult bench = labhh::run_benchmark(cfg);
            write_bench_outputs(bench, bench_out, bench_ablate);
            std::cout << "wrote " << bench.rows.size() << " rows to " << bench_out << "\n";
            return 0;
        }
        if (ablate_cmd->parsed()) {
            labhh::BenchmarkConfig cfg;
            fill_matrix(cfg, ablate_families, ablate_sizes, ablate_seeds, ablate_cells,
                        ablate_budget, ablate_jobs, ablate_flags);
            const labhh::BenchResult bench = labhh::run_ablation(cfg);
            write_bench_outputs(bench, ablate_out, true);
            std::cout << "wrote " << bench.rows.size() << " rows to " << ablate_out << "\n";
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
