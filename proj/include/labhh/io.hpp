#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "labhh/bench.hpp"
#include "labhh/instance.hpp"
#include "labhh/search.hpp"

namespace labhh {

inline constexpr const char* kVersion = "0.1.0";

using ordered_json = nlohmann::ordered_json;

inline ordered_json instance_to_json(const Instance& inst) {
    ordered_json j;
    j["id"] = inst.id;
    j["family"] = family_name(inst.family);
    j["n"] = inst.n;
    j["seed"] = inst.seed;
    ordered_json points = ordered_json::array();
    for (const Point& p : inst.points) points.push_back({p.x, p.y});
    j["points"] = std::move(points);
    return j;
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << instance_to_json(inst).dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    Instance inst;
    try {
        inst.id = j.at("id").get<std::string>();
        inst.family = parse_family(j.at("family").get<std::string>());
        inst.n = j.at("n").get<int>();
        inst.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& row : j.at("points")) {
            inst.points.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
        }
    } catch (const std::exception& e) {
        throw std::runtime_error("malformed instance in " + path + ": " + e.what());
    }
    if (inst.n < 2 || static_cast<int>(inst.points.size()) != inst.n) {
        throw std::runtime_error("instance " + path + ": n does not match point count");
    }
    for (const Point& p : inst.points) {
        if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
            throw std::runtime_error("instance " + path + ": coordinates outside [0,1]^2");
        }
    }
    return inst;
}

inline ordered_json run_config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["budget"] = cfg.budget;
    j["controller"] = controller_name(cfg.controller);
    j["acceptance"] = acceptance_name(cfg.acceptance);
    j["gate"] = cfg.gate_enabled;
    j["feature_mask"] = feature_mask_name(cfg.feature_mask);
    ordered_json ops = ordered_json::array();
    for (int a = 0; a < kNumOperators; ++a) {
        if (cfg.operator_mask[a]) ops.push_back(move_name(static_cast<MoveKind>(a)));
    }
    j["operators"] = std::move(ops);
    j["seed"] = cfg.seed;
    j["alpha"] = cfg.params.alpha;
    j["window"] = cfg.params.window;
    j["stagnation_window"] = cfg.params.stagnation_window;
    j["gate_prob"] = cfg.params.gate_prob;
    j["candidate_pool"] = kCandidatePool;
    j["annealing_t0_factor"] = cfg.annealing_t0_factor;
    j["annealing_t_end_factor"] = cfg.annealing_t_end_factor;
    j["version"] = kVersion;
    return j;
}

inline ordered_json run_result_to_json(const RunResult& res, const std::string& method,
                                       const std::string& instance_id, const ordered_json& config) {
    ordered_json j;
    j["method"] = method;
    j["instance_id"] = instance_id;
    j["config"] = config;
    j["initial_length"] = res.initial_length;
    j["best_length"] = res.best_length;
    j["best_order"] = res.best_order;
    ordered_json counts, accepts;
    for (int a = 0; a < kNumOperators; ++a) {
        counts[move_name(static_cast<MoveKind>(a))] = res.operator_counts[a];
        accepts[move_name(static_cast<MoveKind>(a))] = res.operator_accepts[a];
    }
    j["operator_counts"] = std::move(counts);
    j["operator_accepts"] = std::move(accepts);
    j["wall_time_s"] = res.wall_time_s;
    ordered_json trace = ordered_json::array();
    for (const auto& [it, len] : res.trace) trace.push_back({it, len});
    j["trace"] = std::move(trace);
    return j;
}

namespace detail {

// Full-precision decimal rendering so aggregates recompute exactly from CSV.
inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

inline void write_results_csv(const std::vector<ReportRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "instance_id,family,n,method,seed,final_length,ref_length,final_gap,auc,runtime_s\n";
    for (const ReportRow& r : rows) {
        out << r.instance_id << ',' << r.family << ',' << r.n << ',' << r.method << ',' << r.seed
            << ',' << detail::fmt_double(r.final_length) << ',' << detail::fmt_double(r.ref_length)
            << ',' << detail::fmt_double(r.final_gap) << ',' << detail::fmt_double(r.auc) << ','
            << detail::fmt_double(r.runtime_s) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline void write_traces_csv(const BenchResult& bench, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "instance_id,method,seed,iteration,best_length\n";
    for (const RunRecord& rec : bench.records) {
        const std::string& id = bench.instances[rec.instance_index].id;
        for (const auto& [it, len] : rec.result.trace) {
            out << id << ',' << rec.method << ',' << rec.seed << ',' << it << ','
                << detail::fmt_double(len) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline ordered_json benchmark_config_to_json(const BenchmarkConfig& cfg) {
    ordered_json j;
    ordered_json families = ordered_json::array();
    for (Family f : cfg.families) families.push_back(family_name(f));
    j["families"] = std::move(families);
    j["sizes"] = cfg.sizes;
    j["instances_per_cell"] = cfg.instances_per_cell;
    j["seeds"] = cfg.seeds;
    j["methods"] = cfg.methods;
    j["include_ablations"] = cfg.include_ablations;
    j["budget"] = cfg.budget;
    j["alpha"] = cfg.params.alpha;
    j["window"] = cfg.params.window;
    j["stagnation_window"] = cfg.params.stagnation_window;
    j["gate_prob"] = cfg.params.gate_prob;
    j["candidate_pool"] = kCandidatePool;
    j["version"] = kVersion;
    return j;
}

inline ordered_json summary_to_json(const BenchResult& bench) {
    ordered_json j;
    j["config"] = benchmark_config_to_json(bench.config);
    ordered_json methods;
    for (const auto& [method, agg] : bench.by_method) {
        ordered_json m;
        m["mean_gap"] = agg.mean_gap;
        m["se_gap"] = agg.se_gap;
        m["mean_auc"] = agg.mean_auc;
        m["se_auc"] = agg.se_auc;
        m["mean_runtime"] = agg.mean_runtime;
        m["runs"] = agg.runs;
        methods[method] = std::move(m);
    }
    j["methods"] = std::move(methods);
    ordered_json by_family;
    for (const auto& [method, fams] : bench.gap_by_family) {
        for (const auto& [family, gap] : fams) by_family[method][family] = gap;
    }
    j["gap_by_family"] = std::move(by_family);
    ordered_json by_size;
    for (const auto& [method, sizes] : bench.gap_by_size) {
        for (const auto& [n, gap] : sizes) by_size[method][std::to_string(n)] = gap;
    }
    j["gap_by_size"] = std::move(by_size);
    ordered_json shares;
    for (const auto& [method, share] : bench.operator_shares) {
        for (int a = 0; a < kNumOperators; ++a) {
            shares[method][move_name(static_cast<MoveKind>(a))] = share[a];
        }
    }
    j["operator_shares"] = std::move(shares);
    return j;
}

inline void write_json(const ordered_json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace labhh
