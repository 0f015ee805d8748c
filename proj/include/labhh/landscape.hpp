#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "labhh/instance.hpp"

namespace labhh {

/// Six static landscape descriptors of an instance. All entries are clamped
/// to [0, 2] so downstream feature vectors stay bounded.
struct StaticFeatures {
    double size_norm = 0.0;         ///< log10(n)/3
    double nn_mean = 0.0;           ///< mean nearest-neighbor distance, scaled by sqrt(n)
    double nn_dispersion = 0.0;     ///< coefficient of variation of NN distances
    double anisotropy = 0.0;        ///< 1 - lambda_min/lambda_max of coordinate covariance
    double radial_dispersion = 0.0; ///< CV of distances to the centroid
    double mst_per_node = 0.0;      ///< MST weight / n, scaled by sqrt(n)

    std::array<double, 6> as_array() const {
        return {size_norm, nn_mean, nn_dispersion, anisotropy, radial_dispersion, mst_per_node};
    }
};

/// Total edge weight of a minimum spanning tree over the sites, Prim O(n^2).
inline double mst_total_weight(const DistanceMatrix& dm) {
    const int n = dm.n;
    if (n < 2) throw std::invalid_argument("mst_total_weight: need at least 2 sites");

    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<char> in_tree(n, 0);
    best[0] = 0.0;
    double total = 0.0;
    for (int step = 0; step < n; ++step) {
        int u = -1;
        for (int v = 0; v < n; ++v) {
            if (!in_tree[v] && (u < 0 || best[v] < best[u])) u = v;
        }
        in_tree[u] = 1;
        total += best[u];
        for (int v = 0; v < n; ++v) {
            if (!in_tree[v]) best[v] = std::min(best[v], dm.at(u, v));
        }
    }
    return total;
}

namespace detail {

inline double clamp_feature(double v) { return std::clamp(v, 0.0, 2.0); }

// population standard deviation / mean, 0 when the mean is 0
inline double coefficient_of_variation(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (mean <= 0.0) return 0.0;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    return std::sqrt(var) / mean;
}

} // namespace detail

inline StaticFeatures static_features(const Instance& inst, const DistanceMatrix& dm) {
    const int n = inst.n;
    if (n < 3) throw std::invalid_argument("static_features: need at least 3 sites");

    StaticFeatures f;
    f.size_norm = detail::clamp_feature(std::log10(static_cast<double>(n)) / 3.0);
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    std::vector<double> nn(n);
    for (int i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            if (j != i) best = std::min(best, dm.at(i, j));
        }
        nn[i] = best;
    }
    double nn_mean_raw = 0.0;
    for (double v : nn) nn_mean_raw += v;
    nn_mean_raw /= n;
    f.nn_mean = detail::clamp_feature(nn_mean_raw * sqrt_n);
    f.nn_dispersion = detail::clamp_feature(detail::coefficient_of_variation(nn));

    // coordinate covariance eigenvalues, closed form for the 2x2 case
    double mx = 0.0, my = 0.0;
    for (const Point& p : inst.points) { mx += p.x; my += p.y; }
    mx /= n;
    my /= n;
    double cxx = 0.0, cyy = 0.0, cxy = 0.0;
    for (const Point& p : inst.points) {
        cxx += (p.x - mx) * (p.x - mx);
        cyy += (p.y - my) * (p.y - my);
        cxy += (p.x - mx) * (p.y - my);
    }
    cxx /= n;
    cyy /= n;
    cxy /= n;
    const double tr = cxx + cyy;
    const double disc = std::sqrt(std::max(0.0, (cxx - cyy) * (cxx - cyy) + 4.0 * cxy * cxy));
    const double lambda_max = 0.5 * (tr + disc);
    const double lambda_min = std::max(0.0, 0.5 * (tr - disc));
    f.anisotropy = lambda_max > 0.0 ? detail::clamp_feature(1.0 - lambda_min / lambda_max) : 0.0;

    std::vector<double> radial(n);
    for (int i = 0; i < n; ++i) radial[i] = distance(inst.points[i], {mx, my});
    f.radial_dispersion = detail::clamp_feature(detail::coefficient_of_variation(radial));

    f.mst_per_node = detail::clamp_feature(mst_total_weight(dm) / n * sqrt_n);
    return f;
}

} // namespace labhh
