#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "labhh/tour.hpp"

namespace labhh {

/// Greedy nearest-neighbor chain from `start`, ties broken by lowest site
/// index. O(n^2).
inline Tour nearest_neighbor_tour(const DistanceMatrix& dm, int start) {
    const int n = dm.n;
    if (start < 0 || start >= n) {
        throw std::invalid_argument("nearest_neighbor_tour: start out of range");
    }
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> visited(n, 0);
    int curr = start;
    visited[curr] = 1;
    order.push_back(curr);
    double length = 0.0;
    for (int step = 1; step < n; ++step) {
        int next = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v) {
            if (!visited[v] && dm.at(curr, v) < best) {
                best = dm.at(curr, v);
                next = v;
            }
        }
        visited[next] = 1;
        order.push_back(next);
        length += best;
        curr = next;
    }
    length += dm.at(curr, start);
    return Tour{std::move(order), length};
}

/// Best nearest-neighbor tour over all n starting sites, ties broken by the
/// lowest start index. O(n^3) total, fine for n <= 200.
inline Tour multi_start_nn(const DistanceMatrix& dm) {
    if (dm.n < 2) throw std::invalid_argument("multi_start_nn: need at least 2 sites");
    Tour best = nearest_neighbor_tour(dm, 0);
    for (int start = 1; start < dm.n; ++start) {
        Tour cand = nearest_neighbor_tour(dm, start);
        if (cand.length < best.length) best = std::move(cand);
    }
    return best;
}

} // namespace labhh
