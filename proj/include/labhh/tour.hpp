#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "labhh/instance.hpp"
#include "labhh/rng.hpp"

namespace labhh {

/// Low-level operator portfolio. The enum order fixes the arm indexing used
/// by every controller; TwoOpt must stay at index 0 (stagnation gate target).
enum class MoveKind { TwoOpt = 0, Swap = 1, Relocate = 2, OrOpt2 = 3 };

inline constexpr int kNumOperators = 4;

/// Candidate pool size per selected operator. Part of the method, not a knob.
inline constexpr int kCandidatePool = 3;

inline const char* move_name(MoveKind k) {
    switch (k) {
    case MoveKind::TwoOpt: return "2opt";
    case MoveKind::Swap: return "swap";
    case MoveKind::Relocate: return "relocate";
    case MoveKind::OrOpt2: return "oropt2";
    }
    return "unknown";
}

/// Position-indexed move.
///   TwoOpt:   reverse positions i..j inclusive, 0 < i < j < n.
///   Swap:     exchange positions i and j (i == j is a no-op).
///   Relocate: remove position i, reinsert before original position j,
///             j in [0, n]; j in {i, i+1} is a no-op.
///   OrOpt2:   same for the block [i, i+1], i in [0, n-2]; j == i+1 is
///             invalid (inside the block), j in {i, i+2} is a no-op.
struct Move {
    MoveKind op = MoveKind::TwoOpt;
    int i = 0;
    int j = 0;
};

/// Permutation of site indices with the cached cycle length.
struct Tour {
    std::vector<int> order;
    double length = 0.0;
};

/// Cycle length of `order` under `dm`, including the closing edge.
/// Throws if `order` is not a permutation of 0..n-1.
inline double tour_length(const std::vector<int>& order, const DistanceMatrix& dm) {
    const int n = dm.n;
    if (static_cast<int>(order.size()) != n) {
        throw std::invalid_argument("tour_length: order size does not match instance");
    }
    std::vector<char> seen(n, 0);
    for (int v : order) {
        if (v < 0 || v >= n || seen[v]) {
            throw std::invalid_argument("tour_length: order is not a permutation");
        }
        seen[v] = 1;
    }
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        total += dm.at(order[k], order[(k + 1) % n]);
    }
    return total;
}

inline Tour make_tour(std::vector<int> order, const DistanceMatrix& dm) {
    const double len = tour_length(order, dm);
    return Tour{std::move(order), len};
}

namespace detail {

inline void validate_move(const Move& m, int n) {
    switch (m.op) {
    case MoveKind::TwoOpt:
        if (!(0 < m.i && m.i < m.j && m.j < n)) {
            throw std::invalid_argument("TwoOpt move requires 0 < i < j < n");
        }
        return;
    case MoveKind::Swap:
        if (m.i < 0 || m.i >= n || m.j < 0 || m.j >= n) {
            throw std::invalid_argument("Swap move positions out of range");
        }
        return;
    case MoveKind::Relocate:
        if (m.i < 0 || m.i >= n || m.j < 0 || m.j > n) {
            throw std::invalid_argument("Relocate move positions out of range");
        }
        return;
    case MoveKind::OrOpt2:
        if (m.i < 0 || m.i + 1 >= n || m.j < 0 || m.j > n) {
            throw std::invalid_argument("OrOpt2 move positions out of range");
        }
        if (m.j == m.i + 1) {
            throw std::invalid_argument("OrOpt2 insertion point overlaps the block");
        }
        return;
    }
    throw std::invalid_argument("unknown move kind");
}

} // namespace detail

/// Exact length change of applying `m`, from edge differences in O(1).
inline double move_delta(const Tour& tour, const Move& m, const DistanceMatrix& dm) {
    const int n = dm.n;
    detail::validate_move(m, n);
    const std::vector<int>& o = tour.order;

    switch (m.op) {
    case MoveKind::TwoOpt: {
        // removes edges (i-1, i) and (j, j+1), adds (i-1, j) and (i, j+1)
        const int a = o[m.i - 1], b = o[m.i];
        const int c = o[m.j], e = o[(m.j + 1) % n];
        return dm.at(a, c) + dm.at(b, e) - dm.at(a, b) - dm.at(c, e);
    }
    case MoveKind::Swap: {
        if (m.i == m.j) return 0.0;
        int i = m.i, j = m.j;
        if ((j + 1) % n == i) std::swap(i, j);
        const int a = o[i], b = o[j];
        if ((i + 1) % n == j) {
            if ((j + 1) % n == i) return 0.0; // n == 2: cycle unchanged
            const int p = o[(i + n - 1) % n], s = o[(j + 1) % n];
            return dm.at(p, b) + dm.at(a, s) - dm.at(p, a) - dm.at(b, s);
        }
        const int pi = o[(i + n - 1) % n], si = o[(i + 1) % n];
        const int pj = o[(j + n - 1) % n], sj = o[(j + 1) % n];
        return dm.at(pi, b) + dm.at(b, si) + dm.at(pj, a) + dm.at(a, sj)
             - dm.at(pi, a) - dm.at(a, si) - dm.at(pj, b) - dm.at(b, sj);
    }
    case MoveKind::Relocate: {
        if (m.j == m.i || m.j == m.i + 1) return 0.0;
        const int c = o[m.i];
        const int a = o[(m.i + n - 1) % n], b = o[(m.i + 1) % n];
        int u = o[(m.j + n - 1) % n];
        int v = o[m.j % n];
        // Insertion slots bordering the removed site occur only for the two
        // wrap-around rotations (i = n-1, j = 0) and (i = 0, j = n); the true
        // neighbor after removal is the removed site's own neighbor.
        if (u == c) u = a;
        if (v == c) v = b;
        return dm.at(a, b) - dm.at(a, c) - dm.at(c, b)
             + dm.at(u, c) + dm.at(c, v) - dm.at(u, v);
    }
    case MoveKind::OrOpt2: {
        if (m.j == m.i || m.j == m.i + 2) return 0.0;
        const int c1 = o[m.i], c2 = o[m.i + 1];
        const int a = o[(m.i + n - 1) % n], b = o[(m.i + 2) % n];
        int u = o[(m.j + n - 1) % n];
        int v = o[m.j % n];
        if (u == c2) u = a;
        if (v == c1) v = b;
        return dm.at(a, b) - dm.at(a, c1) - dm.at(c2, b)
             + dm.at(u, c1) + dm.at(c2, v) - dm.at(u, v);
    }
    }
    return 0.0;
}

namespace detail {

inline void apply_move_in_place(Tour& tour, const Move& m, double delta) {
    std::vector<int>& o = tour.order;
    const auto b = o.begin();
    switch (m.op) {
    case MoveKind::TwoOpt:
        std::reverse(b + m.i, b + m.j + 1);
        break;
    case MoveKind::Swap:
        std::swap(o[m.i], o[m.j]);
        break;
    case MoveKind::Relocate:
        if (m.j < m.i) {
            std::rotate(b + m.j, b + m.i, b + m.i + 1);
        } else if (m.j > m.i + 1) {
            std::rotate(b + m.i, b + m.i + 1, b + m.j);
        }
        break;
    case MoveKind::OrOpt2:
        if (m.j < m.i) {
            std::rotate(b + m.j, b + m.i, b + m.i + 2);
        } else if (m.j > m.i + 2) {
            std::rotate(b + m.i, b + m.i + 2, b + m.j);
        }
        break;
    }
    tour.length += delta;
}

} // namespace detail

/// Applies `m` to a copy of `tour`; the cached length is updated by the exact
/// edge delta, the input tour is left untouched.
inline Tour apply_move(const Tour& tour, const Move& m, const DistanceMatrix& dm) {
    const double delta = move_delta(tour, m, dm);
    Tour next = tour;
    detail::apply_move_in_place(next, m, delta);
    return next;
}

/// Uniformly random valid move of the given kind. Consumes exactly two RNG
/// draws for every move kind, which keeps parallel streams aligned.
inline Move sample_move(MoveKind op, int n, Rng& rng) {
    Move m;
    m.op = op;
    switch (op) {
    case MoveKind::TwoOpt: {
        // two distinct values in [1, n-1], ordered
        int a = 1 + static_cast<int>(rng.next_below(n - 1));
        int b = 1 + static_cast<int>(rng.next_below(n - 2));
        if (b >= a) ++b;
        m.i = std::min(a, b);
        m.j = std::max(a, b);
        return m;
    }
    case MoveKind::Swap: {
        m.i = static_cast<int>(rng.next_below(n));
        m.j = static_cast<int>(rng.next_below(n - 1));
        if (m.j >= m.i) ++m.j;
        return m;
    }
    case MoveKind::Relocate: {
        // j ranges over [0, n] minus the two no-op slots {i, i+1}
        m.i = static_cast<int>(rng.next_below(n));
        const int k = static_cast<int>(rng.next_below(n - 1));
        m.j = (k < m.i) ? k : k + 2;
        return m;
    }
    case MoveKind::OrOpt2: {
        // j ranges over [0, n] minus {i, i+1, i+2}
        m.i = static_cast<int>(rng.next_below(n - 1));
        const int k = static_cast<int>(rng.next_below(n - 2));
        m.j = (k < m.i) ? k : k + 3;
        return m;
    }
    }
    return m;
}

/// Draws kCandidatePool random moves of kind `op` (independently, repeats
/// allowed) and returns the one with the smallest delta, ties kept on the
/// first-sampled candidate. Exactly 2 * kCandidatePool RNG draws.
inline std::pair<Move, double> sample_candidate(MoveKind op, const Tour& tour,
                                                const DistanceMatrix& dm, Rng& rng) {
    const int n = dm.n;
    if (n < 5) throw std::invalid_argument("sample_candidate: need at least 5 sites");

    Move best_move = sample_move(op, n, rng);
    double best_delta = move_delta(tour, best_move, dm);
    for (int c = 1; c < kCandidatePool; ++c) {
        const Move cand = sample_move(op, n, rng);
        const double delta = move_delta(tour, cand, dm);
        if (delta < best_delta) {
            best_move = cand;
            best_delta = delta;
        }
    }
    return {best_move, best_delta};
}

} // namespace labhh
