#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace labhh {

/// Relative gap to the per-instance reference length: (length - ref) / ref.
inline double final_gap(double length, double ref) {
    if (ref <= 0.0) throw std::invalid_argument("final_gap: reference must be positive");
    return (length - ref) / ref;
}

/// Trapezoidal integral of the best-so-far gap over the normalized budget
/// fraction t/T. The curve is treated as flat before the first checkpoint and
/// after the last one. A constant-gap trace integrates to that gap.
inline double convergence_auc(const std::vector<std::pair<int, double>>& trace, double ref,
                              int budget) {
    if (trace.empty()) throw std::invalid_argument("convergence_auc: empty trace");
    if (ref <= 0.0) throw std::invalid_argument("convergence_auc: reference must be positive");
    if (budget < 1) throw std::invalid_argument("convergence_auc: budget must be >= 1");

    double area = 0.0;
    const double g_first = final_gap(trace.front().second, ref);
    area += g_first * trace.front().first;
    for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
        const double g0 = final_gap(trace[k].second, ref);
        const double g1 = final_gap(trace[k + 1].second, ref);
        area += 0.5 * (g0 + g1) * (trace[k + 1].first - trace[k].first);
    }
    const double g_last = final_gap(trace.back().second, ref);
    area += g_last * (budget - trace.back().first);
    return area / budget;
}

} // namespace labhh
