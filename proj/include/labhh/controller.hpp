#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "labhh/landscape.hpp"
#include "labhh/rng.hpp"
#include "labhh/tour.hpp"

namespace labhh {

/// Controller hyperparameters. Defaults are the published method's settings;
/// everything is surfaced on the CLI and echoed into run metadata.
struct ControllerParams {
    double alpha = 1.0;        ///< LinUCB exploration weight
    int window = 20;           ///< W: recent improvement / acceptance window
    int stagnation_window = 30;///< S: iterations to stagnation saturation
    double gate_prob = 0.5;    ///< probability the repair gate fires at saturation
};

/// Online search-state snapshot feeding the dynamic half of the context.
struct DynamicState {
    double progress = 0.0;           ///< t / T
    double curr_ratio = 1.0;         ///< f(incumbent) / f(initial), capped at 1.5
    double best_ratio = 1.0;         ///< f(best) / f(initial)
    double recent_improvement = 0.0; ///< clipped relative gain over the last W iterations
    double recent_acceptance = 0.0;  ///< accepted fraction over the last W iterations
    double stagnation = 0.0;         ///< min(1, iterations since incumbent improvement / S)

    std::array<double, 6> as_array() const {
        return {progress, curr_ratio, best_ratio, recent_improvement, recent_acceptance, stagnation};
    }
};

/// Per-iteration incumbent record of one run; lengths_[t] is the incumbent
/// length after iteration t (index 0 holds the initial tour).
class RunHistory {
public:
    explicit RunHistory(double initial_length) {
        lengths_.push_back(initial_length);
        best_prefix_.push_back(initial_length);
    }

    void record(bool accepted, double incumbent_length) {
        accepted_.push_back(accepted ? 1 : 0);
        lengths_.push_back(incumbent_length);
        best_prefix_.push_back(std::min(best_prefix_.back(), incumbent_length));
    }

    int iterations() const { return static_cast<int>(accepted_.size()); }
    double initial_length() const { return lengths_.front(); }
    double length_at(int t) const { return lengths_[t]; }
    double best_at(int t) const { return best_prefix_[t]; }
    bool accepted_at(int t) const { return accepted_[t - 1] != 0; } // iteration t is 1-based

private:
    std::vector<double> lengths_;
    std::vector<double> best_prefix_;
    std::vector<std::uint8_t> accepted_;
};

/// Dynamic features of the state after iteration t (0 <= t <= history size).
inline DynamicState dynamic_features(const RunHistory& h, int t, int budget,
                                     const ControllerParams& p) {
    if (t < 0 || t > h.iterations()) {
        throw std::invalid_argument("dynamic_features: t outside recorded history");
    }
    DynamicState s;
    const double init = h.initial_length();
    s.progress = budget > 0 ? static_cast<double>(t) / budget : 0.0;
    s.curr_ratio = std::min(h.length_at(t) / init, 1.5);
    s.best_ratio = std::min(h.best_at(t) / init, 1.5);

    const int w = std::min(t, p.window);
    if (w > 0) {
        const double gain = 100.0 * (h.length_at(t - w) - h.length_at(t)) / init;
        s.recent_improvement = std::clamp(gain, 0.0, 1.0);
        int acc = 0;
        for (int k = t - w + 1; k <= t; ++k) acc += h.accepted_at(k) ? 1 : 0;
        s.recent_acceptance = static_cast<double>(acc) / w;
    }

    // iterations since the incumbent last strictly improved, capped at S
    int since = 0;
    for (int k = t; k >= 1 && since < p.stagnation_window; --k) {
        if (h.length_at(k) < h.length_at(k - 1)) break;
        ++since;
    }
    s.stagnation = std::min(1.0, static_cast<double>(since) / p.stagnation_window);
    return s;
}

enum class FeatureMask { Full, NoStatic, NoDynamic, NoContext };

inline const char* feature_mask_name(FeatureMask m) {
    switch (m) {
    case FeatureMask::Full: return "full";
    case FeatureMask::NoStatic: return "nostatic";
    case FeatureMask::NoDynamic: return "nodynamic";
    case FeatureMask::NoContext: return "nocontext";
    }
    return "unknown";
}

inline int context_dim(FeatureMask m) {
    switch (m) {
    case FeatureMask::Full: return 13;
    case FeatureMask::NoStatic:
    case FeatureMask::NoDynamic: return 7;
    case FeatureMask::NoContext: return 1;
    }
    return 0;
}

/// Context vector z = [1] ++ selected static features ++ selected dynamic
/// features; z[0] is always the bias term.
inline std::vector<double> make_context(FeatureMask mask, const StaticFeatures& st,
                                        const DynamicState& dyn) {
    std::vector<double> z;
    z.reserve(context_dim(mask));
    z.push_back(1.0);
    if (mask == FeatureMask::Full || mask == FeatureMask::NoDynamic) {
        for (double v : st.as_array()) z.push_back(v);
    }
    if (mask == FeatureMask::Full || mask == FeatureMask::NoStatic) {
        for (double v : dyn.as_array()) z.push_back(v);
    }
    return z;
}

namespace detail {

// In-place Cholesky factorization of a row-major SPD matrix (lower factor).
inline void cholesky(std::vector<double>& a, int d) {
    for (int j = 0; j < d; ++j) {
        double diag = a[j * d + j];
        for (int k = 0; k < j; ++k) diag -= a[j * d + k] * a[j * d + k];
        if (diag <= 0.0) throw std::logic_error("LinUCB matrix lost positive definiteness");
        const double root = std::sqrt(diag);
        a[j * d + j] = root;
        for (int i = j + 1; i < d; ++i) {
            double v = a[i * d + j];
            for (int k = 0; k < j; ++k) v -= a[i * d + k] * a[j * d + k];
            a[i * d + j] = v / root;
        }
    }
}

// Solves L L^T x = rhs given the lower factor.
inline std::vector<double> cholesky_solve(const std::vector<double>& l, int d,
                                          const std::vector<double>& rhs) {
    std::vector<double> x(rhs);
    for (int i = 0; i < d; ++i) {
        double v = x[i];
        for (int k = 0; k < i; ++k) v -= l[i * d + k] * x[k];
        x[i] = v / l[i * d + i];
    }
    for (int i = d - 1; i >= 0; --i) {
        double v = x[i];
        for (int k = i + 1; k < d; ++k) v -= l[k * d + i] * x[k];
        x[i] = v / l[i * d + i];
    }
    return x;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

} // namespace detail

/// Ridge-regression statistics of one operator arm: A = I + sum z z^T,
/// b = sum r z. A stays symmetric positive definite (eigenvalues >= 1).
class LinUcbArm {
public:
    explicit LinUcbArm(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0), b_(dim, 0.0) {
        for (int i = 0; i < dim; ++i) a_[static_cast<std::size_t>(i) * dim + i] = 1.0;
    }

    int dim() const { return dim_; }
    long pulls() const { return pulls_; }
    const std::vector<double>& A() const { return a_; }
    const std::vector<double>& b() const { return b_; }

    /// theta_hat = A^{-1} b
    std::vector<double> theta() const {
        refresh();
        return detail::cholesky_solve(chol_, dim_, b_);
    }

    /// theta_hat . z
    double value(const std::vector<double>& z) const {
        refresh();
        return detail::dot(theta_, z);
    }

    /// z^T A^{-1} z
    double bonus_sq(const std::vector<double>& z) const {
        refresh();
        return detail::dot(z, detail::cholesky_solve(chol_, dim_, z));
    }

    /// Rank-one update A += z z^T, b += r z.
    void update(const std::vector<double>& z, double reward) {
        if (static_cast<int>(z.size()) != dim_) {
            throw std::invalid_argument("LinUcbArm::update: context dimension mismatch");
        }
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) {
                a_[static_cast<std::size_t>(i) * dim_ + j] += z[i] * z[j];
            }
            b_[i] += reward * z[i];
        }
        ++pulls_;
        cache_ok_ = false;
    }

private:
    void refresh() const {
        if (cache_ok_) return;
        chol_ = a_;
        detail::cholesky(chol_, dim_);
        theta_ = detail::cholesky_solve(chol_, dim_, b_);
        cache_ok_ = true;
    }

    int dim_;
    std::vector<double> a_;
    std::vector<double> b_;
    long pulls_ = 0;
    mutable std::vector<double> chol_;
    mutable std::vector<double> theta_;
    mutable bool cache_ok_ = false;
};

namespace detail {

// Argmax with uniform random tie-breaking over exactly equal scores.
// Consumes exactly one RNG draw per call regardless of tie count.
inline int argmax_random_ties(const std::vector<double>& scores,
                              const std::vector<int>& candidates, Rng& rng) {
    double best = scores[0];
    for (double s : scores) best = std::max(best, s);
    std::vector<int> ties;
    for (std::size_t k = 0; k < scores.size(); ++k) {
        if (scores[k] == best) ties.push_back(candidates[k]);
    }
    return ties[rng.next_below(ties.size())];
}

} // namespace detail

/// LinUCB selection over a subset of arms: argmax of theta^T z + alpha *
/// sqrt(z^T A^{-1} z), ties broken uniformly at random (one draw per call).
inline int linucb_select_masked(const std::vector<LinUcbArm>& arms, const std::vector<double>& z,
                                double alpha, const std::vector<int>& allowed, Rng& rng) {
    if (alpha < 0.0) throw std::invalid_argument("linucb_select: alpha must be >= 0");
    std::vector<double> scores;
    scores.reserve(allowed.size());
    for (int a : allowed) {
        scores.push_back(arms[a].value(z) + alpha * std::sqrt(arms[a].bonus_sq(z)));
    }
    return detail::argmax_random_ties(scores, allowed, rng);
}

inline int linucb_select(const std::vector<LinUcbArm>& arms, const std::vector<double>& z,
                         double alpha, Rng& rng) {
    std::vector<int> all(arms.size());
    for (std::size_t k = 0; k < arms.size(); ++k) all[k] = static_cast<int>(k);
    return linucb_select_masked(arms, z, alpha, all, rng);
}

inline void linucb_update(LinUcbArm& arm, const std::vector<double>& z, double reward) {
    arm.update(z, reward);
}

/// Clipped relative improvement reward: clip(100 (f_curr - f_cand) / f_init, -1, 1).
inline double reward(double f_curr, double f_cand, double f_init) {
    if (f_init <= 0.0) throw std::invalid_argument("reward: initial length must be positive");
    return std::clamp(100.0 * (f_curr - f_cand) / f_init, -1.0, 1.0);
}

/// Stagnation-aware repair gate. Fires only at stagnation saturation, with
/// probability gate_prob, redirecting the selection to the 2-opt arm. Draws
/// from `rng` only when eligible to fire.
inline int stagnation_gate(int selected, const DynamicState& state, double gate_prob, Rng& rng,
                           bool two_opt_allowed = true) {
    if (state.stagnation < 1.0 || !two_opt_allowed) return selected;
    if (rng.next_double() < gate_prob) return static_cast<int>(MoveKind::TwoOpt);
    return selected;
}

/// Non-contextual UCB1 arm: empirical mean plus sqrt(2 ln t / n_a) bonus.
struct Ucb1Arm {
    long pulls = 0;
    double reward_sum = 0.0;

    double mean() const { return pulls > 0 ? reward_sum / pulls : 0.0; }
};

/// UCB1 selection. Unpulled arms are chosen first (uniformly among them);
/// otherwise index maximization with uniform tie-breaking. One draw per call.
inline int ucb1_select_masked(const std::vector<Ucb1Arm>& arms, const std::vector<int>& allowed,
                              Rng& rng) {
    std::vector<int> unpulled;
    long total = 0;
    for (int a : allowed) {
        if (arms[a].pulls == 0) unpulled.push_back(a);
        total += arms[a].pulls;
    }
    if (!unpulled.empty()) return unpulled[rng.next_below(unpulled.size())];
    std::vector<double> scores;
    scores.reserve(allowed.size());
    for (int a : allowed) {
        scores.push_back(arms[a].mean() + std::sqrt(2.0 * std::log(static_cast<double>(total)) / arms[a].pulls));
    }
    return detail::argmax_random_ties(scores, allowed, rng);
}

inline int ucb1_select(const std::vector<Ucb1Arm>& arms, Rng& rng) {
    std::vector<int> all(arms.size());
    for (std::size_t k = 0; k < arms.size(); ++k) all[k] = static_cast<int>(k);
    return ucb1_select_masked(arms, all, rng);
}

inline void ucb1_update(Ucb1Arm& arm, double reward) {
    ++arm.pulls;
    arm.reward_sum += reward;
}

inline int random_select_masked(const std::vector<int>& allowed, Rng& rng) {
    return allowed[rng.next_below(allowed.size())];
}

inline int random_select(int num_arms, Rng& rng) {
    return static_cast<int>(rng.next_below(num_arms));
}

} // namespace labhh
