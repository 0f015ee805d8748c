#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "labhh/construction.hpp"
#include "labhh/controller.hpp"
#include "labhh/instance.hpp"
#include "labhh/tour.hpp"

namespace labhh {

enum class ControllerKind { LinUcb, Ucb1, Random };
enum class AcceptanceRule { Greedy, Annealing };

inline const char* controller_name(ControllerKind k) {
    switch (k) {
    case ControllerKind::LinUcb: return "linucb";
    case ControllerKind::Ucb1: return "ucb1";
    case ControllerKind::Random: return "random";
    }
    return "unknown";
}

inline const char* acceptance_name(AcceptanceRule r) {
    return r == AcceptanceRule::Greedy ? "greedy" : "annealing";
}

struct RunConfig {
    int budget = 20000;
    ControllerKind controller = ControllerKind::LinUcb;
    AcceptanceRule acceptance = AcceptanceRule::Greedy;
    bool gate_enabled = true;
    FeatureMask feature_mask = FeatureMask::Full;
    std::array<bool, kNumOperators> operator_mask{true, true, true, true};
    std::uint64_t seed = 1;
    ControllerParams params;
    double annealing_t0_factor = 0.02;   ///< T0 = factor * initial length
    double annealing_t_end_factor = 1e-4;///< final temperature factor
};

struct RunResult {
    std::vector<int> best_order;
    double best_length = 0.0;
    double initial_length = 0.0;
    std::vector<std::pair<int, double>> trace; ///< (iteration, best-so-far length)
    std::array<long, kNumOperators> operator_counts{};
    std::array<long, kNumOperators> operator_accepts{};
    double wall_time_s = 0.0;
};

/// Best-so-far checkpoints on the shared grid {0, step, 2*step, ..., budget}
/// with step = max(1, budget/500). Every method logs on the same grid.
class TraceRecorder {
public:
    explicit TraceRecorder(int budget)
        : budget_(budget), step_(std::max(1, budget / 500)) {}

    void start(double best) {
        trace_.emplace_back(0, best);
        next_ = step_;
    }

    /// Emits all grid points in (last, t] with the current best value.
    void advance(int t, double best) {
        while (next_ <= t) {
            trace_.emplace_back(next_, best);
            next_ += step_;
        }
    }

    void finish(double best) {
        if (trace_.empty() || trace_.back().first != budget_) {
            trace_.emplace_back(budget_, best);
        }
    }

    std::vector<std::pair<int, double>> take() { return std::move(trace_); }

private:
    int budget_;
    int step_;
    int next_ = 0;
    std::vector<std::pair<int, double>> trace_;
};

/// Geometric annealing schedule from t0_factor*initial down to
/// t_end_factor*initial across the budget.
inline double annealing_temperature(int t, int budget, double initial_length,
                                    double t0_factor, double t_end_factor) {
    const double t0 = t0_factor * initial_length;
    if (budget <= 1) return t0;
    const double t_end = t_end_factor * initial_length;
    const double frac = static_cast<double>(t - 1) / (budget - 1);
    return t0 * std::pow(t_end / t0, frac);
}

/// Acceptance test. Greedy accepts strict improvements only; Annealing
/// accepts improvements always and worsenings with probability
/// exp(-(cand-curr)/temperature).
inline bool accept(double curr_len, double cand_len, AcceptanceRule rule, double temperature,
                   Rng& rng) {
    if (cand_len < curr_len) return true;
    if (rule == AcceptanceRule::Greedy) return false;
    if (temperature <= 0.0) {
        throw std::invalid_argument("accept: annealing requires a positive temperature");
    }
    return rng.next_double() < std::exp(-(cand_len - curr_len) / temperature);
}

namespace detail {

inline constexpr std::uint64_t kRunTag = 0x6c616268682e72ULL; // "labhh.r"

// Sub-stream labels. The gate, controller ties, move sampling and acceptance
// each own a stream so that toggling one component does not shift the others.
inline constexpr std::uint64_t kStreamController = 1;
inline constexpr std::uint64_t kStreamGate = 2;
inline constexpr std::uint64_t kStreamMoves = 3;
inline constexpr std::uint64_t kStreamAccept = 4;

inline void validate_run_config(const RunConfig& cfg) {
    if (cfg.budget < 1) throw std::invalid_argument("run: budget must be >= 1");
    bool any = false;
    for (bool b : cfg.operator_mask) any = any || b;
    if (!any) throw std::invalid_argument("run: operator mask must keep at least one operator");
}

inline std::vector<int> allowed_arms(const std::array<bool, kNumOperators>& mask) {
    std::vector<int> allowed;
    for (int a = 0; a < kNumOperators; ++a) {
        if (mask[a]) allowed.push_back(a);
    }
    return allowed;
}

} // namespace detail

/// One hyper-heuristic run: multi-start NN construction, then `budget`
/// iterations of context -> arm selection -> repair gate -> best-of-3
/// candidate -> reward -> acceptance -> arm update. Deterministic in
/// (inst, cfg); `dm` and `initial` must belong to `inst`.
inline RunResult run(const Instance& inst, const RunConfig& cfg, const DistanceMatrix& dm,
                     const Tour& initial) {
    detail::validate_run_config(cfg);
    if (inst.n < 5) throw std::invalid_argument("run: need at least 5 sites");

    const auto t_start = std::chrono::steady_clock::now();
    const Rng root(stream_key({detail::kRunTag, cfg.seed}));
    Rng controller_rng = root.child(detail::kStreamController);
    Rng gate_rng = root.child(detail::kStreamGate);
    Rng move_rng = root.child(detail::kStreamMoves);
    Rng accept_rng = root.child(detail::kStreamAccept);

    const StaticFeatures statics = static_features(inst, dm);
    const std::vector<int> allowed = detail::allowed_arms(cfg.operator_mask);
    const bool two_opt_allowed = cfg.operator_mask[static_cast<int>(MoveKind::TwoOpt)];

    std::vector<LinUcbArm> lin_arms;
    std::vector<Ucb1Arm> ucb_arms;
    if (cfg.controller == ControllerKind::LinUcb) {
        lin_arms.assign(kNumOperators, LinUcbArm(context_dim(cfg.feature_mask)));
    } else if (cfg.controller == ControllerKind::Ucb1) {
        ucb_arms.assign(kNumOperators, Ucb1Arm{});
    }

    Tour curr = initial;
    Tour best = curr;
    const double init_len = curr.length;
    RunHistory history(init_len);
    TraceRecorder recorder(cfg.budget);
    recorder.start(best.length);

    RunResult res;
    res.initial_length = init_len;
    long accepted_since_recompute = 0;

    for (int t = 1; t <= cfg.budget; ++t) {
        const DynamicState dyn = dynamic_features(history, t - 1, cfg.budget, cfg.params);
        const std::vector<double> z = make_context(cfg.feature_mask, statics, dyn);

        int arm = 0;
        switch (cfg.controller) {
        case ControllerKind::LinUcb:
            arm = linucb_select_masked(lin_arms, z, cfg.params.alpha, allowed, controller_rng);
            break;
        case ControllerKind::Ucb1:
            arm = ucb1_select_masked(ucb_arms, allowed, controller_rng);
            break;
        case ControllerKind::Random:
            arm = random_select_masked(allowed, controller_rng);
            break;
        }
        if (cfg.gate_enabled) {
            arm = stagnation_gate(arm, dyn, cfg.params.gate_prob, gate_rng, two_opt_allowed);
        }

        const auto [move, delta] = sample_candidate(static_cast<MoveKind>(arm), curr, dm, move_rng);
        const double cand_len = curr.length + delta;
        // reward comes from the candidate, before the acceptance decision
        const double r = reward(curr.length, cand_len, init_len);

        const double temp = cfg.acceptance == AcceptanceRule::Annealing
                                ? annealing_temperature(t, cfg.budget, init_len,
                                                        cfg.annealing_t0_factor,
                                                        cfg.annealing_t_end_factor)
                                : 0.0;
        const bool accepted = accept(curr.length, cand_len, cfg.acceptance, temp, accept_rng);
        if (accepted) {
            detail::apply_move_in_place(curr, move, delta);
            if (++accepted_since_recompute == 10000) {
                // re-anchor the incremental length cache against float drift
                curr.length = tour_length(curr.order, dm);
                accepted_since_recompute = 0;
            }
            if (curr.length < best.length) best = curr;
        }
        history.record(accepted, curr.length);

        if (cfg.controller == ControllerKind::LinUcb) {
            lin_arms[arm].update(z, r);
        } else if (cfg.controller == ControllerKind::Ucb1) {
            ucb1_update(ucb_arms[arm], r);
        }
        ++res.operator_counts[arm];
        if (accepted) ++res.operator_accepts[arm];
        recorder.advance(t, best.length);
    }

    recorder.finish(best.length);
    res.best_order = best.order;
    res.best_length = best.length;
    res.trace = recorder.take();
    res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

inline RunResult run(const Instance& inst, const RunConfig& cfg) {
    const DistanceMatrix dm = distance_matrix(inst);
    const Tour initial = multi_start_nn(dm);
    return run(inst, cfg, dm, initial);
}

} // namespace labhh
