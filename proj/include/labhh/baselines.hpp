#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <vector>

#include "labhh/search.hpp"

namespace labhh {

namespace detail {

inline constexpr std::uint64_t kBaselineTag = 0x6c616268682e62ULL; // "labhh.b"

inline double elapsed_s(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

} // namespace detail

/// Construction-only reference: the multi-start NN tour with a constant trace
/// across the budget grid.
inline RunResult run_nn(const Tour& initial, int budget) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult res;
    res.best_order = initial.order;
    res.best_length = initial.length;
    res.initial_length = initial.length;
    TraceRecorder recorder(budget);
    recorder.start(initial.length);
    recorder.advance(budget, initial.length);
    recorder.finish(initial.length);
    res.trace = recorder.take();
    res.wall_time_s = detail::elapsed_s(t0);
    return res;
}

/// Stochastic 2-opt: one uniformly random 2-opt move per iteration (pool
/// size 1), greedy acceptance.
inline RunResult run_two_opt(const DistanceMatrix& dm, const Tour& initial, int budget,
                             std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng move_rng = Rng(stream_key({detail::kBaselineTag, seed})).child(detail::kStreamMoves);

    Tour curr = initial;
    RunResult res;
    res.initial_length = curr.length;
    TraceRecorder recorder(budget);
    recorder.start(curr.length);
    for (int t = 1; t <= budget; ++t) {
        const Move m = sample_move(MoveKind::TwoOpt, dm.n, move_rng);
        const double delta = move_delta(curr, m, dm);
        ++res.operator_counts[static_cast<int>(MoveKind::TwoOpt)];
        if (delta < 0.0) {
            detail::apply_move_in_place(curr, m, delta);
            ++res.operator_accepts[static_cast<int>(MoveKind::TwoOpt)];
        }
        recorder.advance(t, curr.length);
    }
    recorder.finish(curr.length);
    res.best_order = curr.order;
    res.best_length = curr.length;
    res.trace = recorder.take();
    res.wall_time_s = detail::elapsed_s(t0);
    return res;
}

/// Simulated annealing: per iteration one uniformly random move type, pool
/// size 1, geometric temperature schedule shared with the annealing ablation.
inline RunResult run_sa(const DistanceMatrix& dm, const Tour& initial, int budget,
                        std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const Rng root(stream_key({detail::kBaselineTag, seed}));
    Rng op_rng = root.child(detail::kStreamController);
    Rng move_rng = root.child(detail::kStreamMoves);
    Rng accept_rng = root.child(detail::kStreamAccept);

    Tour curr = initial;
    Tour best = curr;
    const double init_len = curr.length;
    RunResult res;
    res.initial_length = init_len;
    TraceRecorder recorder(budget);
    recorder.start(best.length);
    for (int t = 1; t <= budget; ++t) {
        const int op = random_select(kNumOperators, op_rng);
        const Move m = sample_move(static_cast<MoveKind>(op), dm.n, move_rng);
        const double delta = move_delta(curr, m, dm);
        const double temp = annealing_temperature(t, budget, init_len, 0.02, 1e-4);
        ++res.operator_counts[op];
        if (accept(curr.length, curr.length + delta, AcceptanceRule::Annealing, temp, accept_rng)) {
            detail::apply_move_in_place(curr, m, delta);
            ++res.operator_accepts[op];
            if (curr.length < best.length) best = curr;
        }
        recorder.advance(t, best.length);
    }
    recorder.finish(best.length);
    res.best_order = best.order;
    res.best_length = best.length;
    res.trace = recorder.take();
    res.wall_time_s = detail::elapsed_s(t0);
    return res;
}

namespace detail {

// OX1 order crossover: keep p1's segment [a, b], fill the remaining slots in
// p2's cyclic order starting after b. Identical parents reproduce themselves.
inline std::vector<int> order_crossover(const std::vector<int>& p1, const std::vector<int>& p2,
                                        int a, int b) {
    const int n = static_cast<int>(p1.size());
    std::vector<int> child(n, -1);
    std::vector<char> in_child(n, 0);
    for (int k = a; k <= b; ++k) {
        child[k] = p1[k];
        in_child[p1[k]] = 1;
    }
    int write = (b + 1) % n;
    for (int k = 0; k < n; ++k) {
        const int site = p2[(b + 1 + k) % n];
        if (!in_child[site]) {
            child[write] = site;
            write = (write + 1) % n;
        }
    }
    return child;
}

// Double bridge: cut the cycle at three interior points and reconnect the
// four segments as A C B D. Classic ILS kick, permutation-preserving.
inline void double_bridge(std::vector<int>& order, Rng& rng) {
    const int n = static_cast<int>(order.size());
    int cuts[3];
    cuts[0] = 1 + static_cast<int>(rng.next_below(n - 3));
    cuts[1] = cuts[0] + 1 + static_cast<int>(rng.next_below(n - cuts[0] - 2));
    cuts[2] = cuts[1] + 1 + static_cast<int>(rng.next_below(n - cuts[1] - 1));
    std::vector<int> next;
    next.reserve(n);
    next.insert(next.end(), order.begin(), order.begin() + cuts[0]);
    next.insert(next.end(), order.begin() + cuts[1], order.begin() + cuts[2]);
    next.insert(next.end(), order.begin() + cuts[0], order.begin() + cuts[1]);
    next.insert(next.end(), order.begin() + cuts[2], order.end());
    order = std::move(next);
}

} // namespace detail

/// Iterated local search: random 2-opt descent until `kick_after` consecutive
/// failures, then a double-bridge kick from the incumbent, keeping the
/// descended tour only if it improved the incumbent.
inline RunResult run_ils(const DistanceMatrix& dm, const Tour& initial, int budget,
                         std::uint64_t seed, int kick_after = 200) {
    const auto t0 = std::chrono::steady_clock::now();
    const Rng root(stream_key({detail::kBaselineTag, seed}));
    Rng move_rng = root.child(detail::kStreamMoves);

    Tour incumbent = initial;
    Tour working = initial;
    Tour best = initial;
    RunResult res;
    res.initial_length = initial.length;
    TraceRecorder recorder(budget);
    recorder.start(best.length);

    int fails = 0;
    for (int t = 1; t <= budget; ++t) {
        if (fails < kick_after) {
            const Move m = sample_move(MoveKind::TwoOpt, dm.n, move_rng);
            const double delta = move_delta(working, m, dm);
            ++res.operator_counts[static_cast<int>(MoveKind::TwoOpt)];
            if (delta < 0.0) {
                detail::apply_move_in_place(working, m, delta);
                ++res.operator_accepts[static_cast<int>(MoveKind::TwoOpt)];
                fails = 0;
            } else {
                ++fails;
            }
        } else {
            if (working.length < incumbent.length) incumbent = working;
            working = incumbent;
            detail::double_bridge(working.order, move_rng);
            working.length = tour_length(working.order, dm); // one full evaluation
            fails = 0;
        }
        if (working.length < best.length) best = working;
        recorder.advance(t, best.length);
    }
    recorder.finish(best.length);
    res.best_order = best.order;
    res.best_length = best.length;
    res.trace = recorder.take();
    res.wall_time_s = detail::elapsed_s(t0);
    return res;
}

/// Genetic algorithm: population 50, order crossover (OX1), swap mutation
/// rate 0.2, tournament size 3, elitism 2. Generations sized so the total
/// number of full tour evaluations stays within the budget.
inline RunResult run_ga(const DistanceMatrix& dm, int budget, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    constexpr int kPop = 50;
    constexpr int kElite = 2;
    constexpr int kTournament = 3;
    constexpr double kMutationRate = 0.2;
    const int n = dm.n;
    Rng rng = Rng(stream_key({detail::kBaselineTag, seed})).child(detail::kStreamMoves);

    struct Individual {
        std::vector<int> order;
        double length;
    };
    std::vector<Individual> pop(kPop);
    for (Individual& ind : pop) {
        ind.order.resize(n);
        std::iota(ind.order.begin(), ind.order.end(), 0);
        for (int i = 0; i < n - 1; ++i) { // Fisher-Yates
            const int pick = i + static_cast<int>(rng.next_below(n - i));
            std::swap(ind.order[i], ind.order[pick]);
        }
        ind.length = tour_length(ind.order, dm);
    }
    long evals = kPop;

    auto by_length = [](const Individual& a, const Individual& b) { return a.length < b.length; };
    std::stable_sort(pop.begin(), pop.end(), by_length);

    RunResult res;
    res.initial_length = pop.front().length;
    Individual best = pop.front();
    TraceRecorder recorder(budget);
    recorder.start(best.length);
    recorder.advance(static_cast<int>(evals), best.length);

    auto tournament = [&](Rng& r) -> const Individual& {
        int winner = static_cast<int>(r.next_below(kPop));
        for (int k = 1; k < kTournament; ++k) {
            const int cand = static_cast<int>(r.next_below(kPop));
            if (pop[cand].length < pop[winner].length) winner = cand;
        }
        return pop[winner];
    };

    while (evals + (kPop - kElite) <= budget) {
        std::vector<Individual> next(pop.begin(), pop.begin() + kElite);
        next.reserve(kPop);
        while (static_cast<int>(next.size()) < kPop) {
            const Individual& p1 = tournament(rng);
            const Individual& p2 = tournament(rng);
            int a = static_cast<int>(rng.next_below(n));
            int b = static_cast<int>(rng.next_below(n));
            if (a > b) std::swap(a, b);
            Individual child;
            child.order = detail::order_crossover(p1.order, p2.order, a, b);
            if (rng.next_double() < kMutationRate) {
                const int i = static_cast<int>(rng.next_below(n));
                const int j = static_cast<int>(rng.next_below(n));
                std::swap(child.order[i], child.order[j]);
            }
            child.length = tour_length(child.order, dm);
            ++evals;
            next.push_back(std::move(child));
        }
        pop = std::move(next);
        std::stable_sort(pop.begin(), pop.end(), by_length);
        if (pop.front().length < best.length) best = pop.front();
        recorder.advance(static_cast<int>(std::min<long>(evals, budget)), best.length);
    }
    recorder.finish(best.length);
    res.best_order = best.order;
    res.best_length = best.length;
    res.trace = recorder.take();
    res.wall_time_s = detail::elapsed_s(t0);
    return res;
}

} // namespace labhh
