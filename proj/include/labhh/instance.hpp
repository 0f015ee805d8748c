#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "labhh/rng.hpp"

namespace labhh {

/// Site coordinates in the unit square, normalized distance units (du).
struct Point {
    double x = 0.0;
    double y = 0.0;
};

enum class Family { Uniform, Clustered, Corridor, GridJitter, MixedDensity };

inline constexpr Family kAllFamilies[] = {
    Family::Uniform, Family::Clustered, Family::Corridor,
    Family::GridJitter, Family::MixedDensity};

inline const char* family_name(Family f) {
    switch (f) {
    case Family::Uniform: return "uniform";
    case Family::Clustered: return "clustered";
    case Family::Corridor: return "corridor";
    case Family::GridJitter: return "grid_jitter";
    case Family::MixedDensity: return "mixed_density";
    }
    return "unknown";
}

inline Family parse_family(std::string name) {
    std::replace(name.begin(), name.end(), '-', '_');
    for (Family f : kAllFamilies) {
        if (name == family_name(f)) return f;
    }
    throw std::invalid_argument("unknown instance family: " + name);
}

/// Immutable set of 2-D sites with generation metadata. Regenerating with the
/// same (family, n, seed) reproduces the identical point list bit for bit.
struct Instance {
    std::string id;
    Family family = Family::Uniform;
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<Point> points;
};

/// Dense symmetric matrix of pairwise Euclidean lengths, zero diagonal.
struct DistanceMatrix {
    int n = 0;
    std::vector<double> d; // row-major n*n

    double at(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }
};

inline double distance(Point p, Point q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline DistanceMatrix distance_matrix(const Instance& inst) {
    DistanceMatrix dm;
    dm.n = inst.n;
    dm.d.assign(static_cast<std::size_t>(inst.n) * inst.n, 0.0);
    for (int i = 0; i < inst.n; ++i) {
        for (int j = i + 1; j < inst.n; ++j) {
            const double dij = distance(inst.points[i], inst.points[j]);
            dm.d[static_cast<std::size_t>(i) * inst.n + j] = dij;
            dm.d[static_cast<std::size_t>(j) * inst.n + i] = dij;
        }
    }
    return dm;
}

namespace detail {

inline constexpr std::uint64_t kInstanceTag = 0x696e7374616e6365ULL; // "instance"

inline double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

inline int family_id(Family f) { return static_cast<int>(f); }

inline int cluster_count(Family f, int n) {
    // Clustered uses n/25 centers, the clustered half of MixedDensity n/50.
    const double per = (f == Family::MixedDensity) ? 50.0 : 25.0;
    return std::max(2, static_cast<int>(std::llround(n / per)));
}

inline Rng instance_root(Family family, int n, std::uint64_t seed) {
    return Rng(stream_key({kInstanceTag, static_cast<std::uint64_t>(family_id(family)),
                           static_cast<std::uint64_t>(n), seed}));
}

inline std::vector<Point> draw_centers(int k, Rng& rng) {
    std::vector<Point> centers(k);
    for (Point& c : centers) {
        c.x = 0.1 + 0.8 * rng.next_double();
        c.y = 0.1 + 0.8 * rng.next_double();
    }
    return centers;
}

// One clustered point: 1 draw for the center index, 2 per Gaussian axis.
inline Point draw_clustered_point(const std::vector<Point>& centers, Rng& rng) {
    const Point c = centers[rng.next_below(centers.size())];
    const double gx = rng.next_gauss();
    const double gy = rng.next_gauss();
    return {clip01(c.x + 0.05 * gx), clip01(c.y + 0.05 * gy)};
}

} // namespace detail

/// Cluster centers used by the Clustered and MixedDensity generators for the
/// given (family, n, seed); empty for families without centers.
inline std::vector<Point> cluster_centers(Family family, int n, std::uint64_t seed) {
    if (family != Family::Clustered && family != Family::MixedDensity) return {};
    Rng centers_rng = detail::instance_root(family, n, seed).child(1);
    return detail::draw_centers(detail::cluster_count(family, n), centers_rng);
}

/// Generates a seeded instance of one of the five landscape families. All
/// coordinates are clipped to [0,1]^2. Deterministic in (family, n, seed).
inline Instance generate(Family family, int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate: n must be >= 2");

    const Rng root = detail::instance_root(family, n, seed);
    Rng points_rng = root.child(2);
    Rng cells_rng = root.child(3);

    Instance inst;
    inst.family = family;
    inst.n = n;
    inst.seed = seed;
    inst.id = std::string(family_name(family)) + "_n" + std::to_string(n) + "_s" + std::to_string(seed);
    inst.points.reserve(n);

    switch (family) {
    case Family::Uniform: {
        for (int i = 0; i < n; ++i) {
            const double x = points_rng.next_double();
            const double y = points_rng.next_double();
            inst.points.push_back({x, y});
        }
        break;
    }
    case Family::Clustered: {
        const std::vector<Point> centers = cluster_centers(family, n, seed);
        for (int i = 0; i < n; ++i) {
            inst.points.push_back(detail::draw_clustered_point(centers, points_rng));
        }
        break;
    }
    case Family::Corridor: {
        for (int i = 0; i < n; ++i) {
            const double x = points_rng.next_double();
            const double y = detail::clip01(0.5 + 0.03 * points_rng.next_gauss());
            inst.points.push_back({x, y});
        }
        break;
    }
    case Family::GridJitter: {
        const int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
        const double cell = 1.0 / g;
        // Partial Fisher-Yates picks n distinct cells of the g x g grid.
        std::vector<int> cells(static_cast<std::size_t>(g) * g);
        for (std::size_t c = 0; c < cells.size(); ++c) cells[c] = static_cast<int>(c);
        for (int i = 0; i < n; ++i) {
            const std::size_t pick = i + cells_rng.next_below(cells.size() - i);
            std::swap(cells[i], cells[pick]);
        }
        for (int i = 0; i < n; ++i) {
            const double cx = (cells[i] % g + 0.5) * cell;
            const double cy = (cells[i] / g + 0.5) * cell;
            const double jx = (points_rng.next_double() * 0.6 - 0.3) * cell;
            const double jy = (points_rng.next_double() * 0.6 - 0.3) * cell;
            inst.points.push_back({detail::clip01(cx + jx), detail::clip01(cy + jy)});
        }
        break;
    }
    case Family::MixedDensity: {
        const int n_uniform = (n + 1) / 2;
        for (int i = 0; i < n_uniform; ++i) {
            const double x = points_rng.next_double();
            const double y = points_rng.next_double();
            inst.points.push_back({x, y});
        }
        const std::vector<Point> centers = cluster_centers(family, n, seed);
        for (int i = n_uniform; i < n; ++i) {
            inst.points.push_back(detail::draw_clustered_point(centers, points_rng));
        }
        break;
    }
    }
    return inst;
}

} // namespace labhh
