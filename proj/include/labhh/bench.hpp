#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "labhh/baselines.hpp"
#include "labhh/metrics.hpp"
#include "labhh/search.hpp"

namespace labhh {

inline const std::vector<std::string>& default_methods() {
    static const std::vector<std::string> methods = {
        "labhh", "ucbhh", "randomhh", "nn", "2opt", "sa", "ils", "ga"};
    return methods;
}

/// Ablation variants of LA-BHH, each removing or replacing one component.
inline const std::vector<std::string>& ablation_variants() {
    static const std::vector<std::string> variants = {
        "labhh_wo_context", "labhh_wo_dynamic", "labhh_wo_static", "labhh_w_annealing",
        "labhh_wo_learning", "labhh_wo_2opt", "labhh_wo_swap", "labhh_wo_relocate",
        "labhh_wo_oropt2"};
    return variants;
}

inline bool is_hyper_heuristic(const std::string& method) {
    return method == "labhh" || method == "ucbhh" || method == "randomhh" ||
           method.rfind("labhh_", 0) == 0;
}

/// Methods whose acceptance rule is greedy (candidate accepted only when it
/// strictly improves the incumbent).
inline bool is_greedy_method(const std::string& method) {
    if (method == "sa" || method == "ga" || method == "labhh_w_annealing") return false;
    return true;
}

/// RunConfig for LA-BHH or one of its ablation variants.
inline RunConfig variant_config(const std::string& method, int budget, std::uint64_t seed,
                                const ControllerParams& params) {
    RunConfig cfg;
    cfg.budget = budget;
    cfg.seed = seed;
    cfg.params = params;
    if (method == "labhh") return cfg;
    if (method == "ucbhh") {
        cfg.controller = ControllerKind::Ucb1;
        cfg.gate_enabled = false;
        cfg.feature_mask = FeatureMask::NoContext;
        return cfg;
    }
    if (method == "randomhh") {
        cfg.controller = ControllerKind::Random;
        cfg.gate_enabled = false;
        cfg.feature_mask = FeatureMask::NoContext;
        return cfg;
    }
    if (method == "labhh_wo_context") {
        cfg.feature_mask = FeatureMask::NoContext;
        return cfg;
    }
    if (method == "labhh_wo_dynamic") {
        cfg.feature_mask = FeatureMask::NoDynamic;
        return cfg;
    }
    if (method == "labhh_wo_static") {
        cfg.feature_mask = FeatureMask::NoStatic;
        return cfg;
    }
    if (method == "labhh_w_annealing") {
        cfg.acceptance = AcceptanceRule::Annealing;
        return cfg;
    }
    if (method == "labhh_wo_learning") {
        cfg.controller = ControllerKind::Random; // gate stays enabled
        return cfg;
    }
    if (method == "labhh_wo_2opt") {
        cfg.operator_mask[static_cast<int>(MoveKind::TwoOpt)] = false;
        return cfg;
    }
    if (method == "labhh_wo_swap") {
        cfg.operator_mask[static_cast<int>(MoveKind::Swap)] = false;
        return cfg;
    }
    if (method == "labhh_wo_relocate") {
        cfg.operator_mask[static_cast<int>(MoveKind::Relocate)] = false;
        return cfg;
    }
    if (method == "labhh_wo_oropt2") {
        cfg.operator_mask[static_cast<int>(MoveKind::OrOpt2)] = false;
        return cfg;
    }
    throw std::invalid_argument("unknown hyper-heuristic method: " + method);
}

/// Dispatches one (method, seed) run on a prepared instance. `initial` must
/// be the multi-start NN tour of `dm`.
inline RunResult run_method(const std::string& method, const Instance& inst,
                            const DistanceMatrix& dm, const Tour& initial, int budget,
                            std::uint64_t seed, const ControllerParams& params) {
    if (method == "nn") return run_nn(initial, budget);
    if (method == "2opt") return run_two_opt(dm, initial, budget, seed);
    if (method == "sa") return run_sa(dm, initial, budget, seed);
    if (method == "ils") return run_ils(dm, initial, budget, seed);
    if (method == "ga") return run_ga(dm, budget, seed);
    return run(inst, variant_config(method, budget, seed, params), dm, initial);
}

struct BenchmarkConfig {
    std::vector<Family> families{kAllFamilies, kAllFamilies + 5};
    std::vector<int> sizes{50, 100, 200};
    int instances_per_cell = 3;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    std::vector<std::string> methods = default_methods();
    bool include_ablations = false;
    int budget = 20000;
    ControllerParams params;
    int jobs = 0; ///< 0 = hardware concurrency
};

struct ReportRow {
    std::string instance_id;
    std::string family;
    int n = 0;
    std::string method;
    std::uint64_t seed = 0;
    double final_length = 0.0;
    double ref_length = 0.0;
    double final_gap = 0.0;
    double auc = 0.0;
    double runtime_s = 0.0;
};

struct MethodAggregate {
    double mean_gap = 0.0;
    double se_gap = 0.0;
    double mean_auc = 0.0;
    double se_auc = 0.0;
    double mean_runtime = 0.0;
    long runs = 0;
};

struct RunRecord {
    int instance_index = 0;
    std::string method;
    std::uint64_t seed = 0;
    RunResult result;
};

struct BenchResult {
    BenchmarkConfig config;
    std::vector<Instance> instances;
    std::vector<RunRecord> records; ///< one per (instance, method, seed)
    std::vector<ReportRow> rows;    ///< aligned with records
    std::map<std::string, MethodAggregate> by_method;
    std::map<std::string, std::map<std::string, double>> gap_by_family;
    std::map<std::string, std::map<int, double>> gap_by_size;
    std::map<std::string, std::array<double, kNumOperators>> operator_shares;
};

namespace detail {

inline constexpr std::uint64_t kSuiteTag = 0x6c616268682e73ULL; // "labhh.s"

inline void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, count == 0 ? 1 : static_cast<unsigned>(count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

inline MethodAggregate aggregate(const std::vector<double>& gaps, const std::vector<double>& aucs,
                                 const std::vector<double>& runtimes) {
    MethodAggregate agg;
    agg.runs = static_cast<long>(gaps.size());
    if (agg.runs == 0) return agg;
    auto mean_of = [](const std::vector<double>& xs) {
        double m = 0.0;
        for (double x : xs) m += x;
        return m / static_cast<double>(xs.size());
    };
    auto se_of = [&](const std::vector<double>& xs, double mean) {
        if (xs.size() < 2) return 0.0;
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= static_cast<double>(xs.size() - 1);
        return std::sqrt(var / static_cast<double>(xs.size()));
    };
    agg.mean_gap = mean_of(gaps);
    agg.se_gap = se_of(gaps, agg.mean_gap);
    agg.mean_auc = mean_of(aucs);
    agg.se_auc = se_of(aucs, agg.mean_auc);
    agg.mean_runtime = mean_of(runtimes);
    return agg;
}

} // namespace detail

/// Instance seed for cell (family, n, index), independent of any run seed so
/// the suite regenerates identically from the configuration alone.
inline std::uint64_t suite_instance_seed(Family family, int n, int index) {
    return stream_key({detail::kSuiteTag, static_cast<std::uint64_t>(detail::family_id(family)),
                       static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(index)});
}

inline std::vector<Instance> generate_suite(const BenchmarkConfig& cfg) {
    std::vector<Instance> instances;
    for (Family family : cfg.families) {
        for (int n : cfg.sizes) {
            for (int idx = 0; idx < cfg.instances_per_cell; ++idx) {
                Instance inst = generate(family, n, suite_instance_seed(family, n, idx));
                inst.id = std::string(family_name(family)) + "_n" + std::to_string(n) + "_i" +
                          std::to_string(idx);
                instances.push_back(std::move(inst));
            }
        }
    }
    return instances;
}

/// Runs the full benchmark matrix: every (instance, method, seed), plus the
/// ablation variants when enabled. Per-instance reference lengths are the
/// minimum best length over the complete run pool, so every instance has at
/// least one row with gap exactly 0. Deterministic for any job count.
inline BenchResult run_benchmark(const BenchmarkConfig& cfg) {
    BenchResult out;
    out.config = cfg;
    out.instances = generate_suite(cfg);

    std::vector<std::string> methods = cfg.methods;
    if (cfg.include_ablations) {
        for (const std::string& v : ablation_variants()) methods.push_back(v);
    }

    // shared per-instance precomputation
    const std::size_t num_inst = out.instances.size();
    std::vector<DistanceMatrix> dms(num_inst);
    std::vector<Tour> initials(num_inst);
    detail::parallel_for(num_inst, cfg.jobs, [&](std::size_t i) {
        dms[i] = distance_matrix(out.instances[i]);
        initials[i] = multi_start_nn(dms[i]);
    });

    for (std::size_t i = 0; i < num_inst; ++i) {
        for (const std::string& method : methods) {
            for (std::uint64_t seed : cfg.seeds) {
                out.records.push_back(RunRecord{static_cast<int>(i), method, seed, RunResult{}});
            }
        }
    }
    detail::parallel_for(out.records.size(), cfg.jobs, [&](std::size_t k) {
        RunRecord& rec = out.records[k];
        const std::size_t i = static_cast<std::size_t>(rec.instance_index);
        rec.result = run_method(rec.method, out.instances[i], dms[i], initials[i], cfg.budget,
                                rec.seed, cfg.params);
    });

    // reference per instance: best over methods, variants and seeds
    std::vector<double> refs(num_inst, std::numeric_limits<double>::infinity());
    for (const RunRecord& rec : out.records) {
        refs[rec.instance_index] = std::min(refs[rec.instance_index], rec.result.best_length);
    }

    out.rows.reserve(out.records.size());
    for (const RunRecord& rec : out.records) {
        const Instance& inst = out.instances[rec.instance_index];
        ReportRow row;
        row.instance_id = inst.id;
        row.family = family_name(inst.family);
        row.n = inst.n;
        row.method = rec.method;
        row.seed = rec.seed;
        row.final_length = rec.result.best_length;
        row.ref_length = refs[rec.instance_index];
        row.final_gap = final_gap(rec.result.best_length, row.ref_length);
        row.auc = convergence_auc(rec.result.trace, row.ref_length, cfg.budget);
        row.runtime_s = rec.result.wall_time_s;
        out.rows.push_back(std::move(row));
    }

    // aggregates (instance x seed pooled per method)
    std::map<std::string, std::vector<double>> gaps, aucs, runtimes;
    for (const ReportRow& row : out.rows) {
        gaps[row.method].push_back(row.final_gap);
        aucs[row.method].push_back(row.auc);
        runtimes[row.method].push_back(row.runtime_s);
    }
    for (const auto& [method, g] : gaps) {
        out.by_method[method] = detail::aggregate(g, aucs[method], runtimes[method]);
    }

    std::map<std::string, std::map<std::string, std::pair<double, long>>> fam_acc;
    std::map<std::string, std::map<int, std::pair<double, long>>> size_acc;
    for (const ReportRow& row : out.rows) {
        auto& f = fam_acc[row.method][row.family];
        f.first += row.final_gap;
        f.second += 1;
        auto& s = size_acc[row.method][row.n];
        s.first += row.final_gap;
        s.second += 1;
    }
    for (const auto& [method, fams] : fam_acc) {
        for (const auto& [family, acc] : fams) {
            out.gap_by_family[method][family] = acc.first / acc.second;
        }
    }
    for (const auto& [method, sizes] : size_acc) {
        for (const auto& [n, acc] : sizes) {
            out.gap_by_size[method][n] = acc.first / acc.second;
        }
    }

    // operator-usage shares for the hyper-heuristic methods
    std::map<std::string, std::array<double, kNumOperators>> counts;
    for (const RunRecord& rec : out.records) {
        if (!is_hyper_heuristic(rec.method)) continue;
        auto& acc = counts[rec.method];
        for (int a = 0; a < kNumOperators; ++a) {
            acc[a] += static_cast<double>(rec.result.operator_counts[a]);
        }
    }
    for (auto& [method, acc] : counts) {
        double total = 0.0;
        for (double c : acc) total += c;
        if (total > 0.0) {
            for (double& c : acc) c /= total;
        }
        out.operator_shares[method] = acc;
    }
    return out;
}

/// Ablation study: full LA-BHH plus the nine component-removal variants on
/// the shared instance pool with shared references.
inline BenchResult run_ablation(BenchmarkConfig cfg) {
    cfg.methods = {"labhh"};
    cfg.include_ablations = true;
    return run_benchmark(cfg);
}

} // namespace labhh
