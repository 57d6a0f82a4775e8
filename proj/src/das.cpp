#include "risopt/das.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace risopt {

namespace {

constexpr long kRefreshInterval = 1024;  // full recomputation cadence in sweep steps

long mod_level(long k, long levels) {
    long r = k % levels;
    return r < 0 ? r + levels : r;
}

// tau mod step, exact in [0, step) (fmod of nonnegative inputs is exact).
double fold_angle(double tau, double step) {
    double r = std::fmod(tau, step);
    if (r < 0.0) r += step;
    if (r >= step) r = 0.0;
    return r;
}

// Canonical representative of a candidate: shift all levels so the first
// entry is 0. Zero-magnitude entries sit at level 0 in every candidate, so
// the shift is 0 whenever the first entry is one of them.
std::vector<int> canonicalize(std::vector<int> levels_vec, long levels) {
    const int shift = levels_vec[0];
    if (shift != 0) {
        for (int& k : levels_vec) k = static_cast<int>(mod_level(k - shift, levels));
    }
    return levels_vec;
}

// Closed-form config after `step + 1` sweep events (candidate index `step`,
// 0-based): the element at sweep position p has received full_rounds
// increments, plus one more if p < remainder.
std::vector<int> config_at_step(const PartitionCoder& coder, long step) {
    const long levels = coder.scheme.levels();
    const long na = static_cast<long>(coder.active_count);
    std::vector<int> out = coder.base_levels;
    const long events = step + 1;
    const long full = events / na;
    const long rem = events % na;
    for (long p = 0; p < na; ++p) {
        const int elem = coder.sweep_order[p];
        out[elem] = static_cast<int>(mod_level(out[elem] + full + (p < rem ? 1 : 0), levels));
    }
    return out;
}

struct SweepResult {
    long count = 0;
    long best_step = -1;
    std::vector<double> values;
};

// Run the boundary sweep, recording per-candidate objective values. Each
// event advances exactly one element's level by +1 mod L; the complex sum is
// updated with one term swap and refreshed from scratch every
// kRefreshInterval events. Optionally materializes candidate configs.
SweepResult run_sweep(const RankOneObjective& obj, const PartitionCoder& coder,
                      std::vector<std::vector<int>>* configs_out) {
    const long levels = coder.scheme.levels();
    const double step = coder.scheme.step();
    const long na = static_cast<long>(coder.active_count);
    const std::size_t n = obj.size();

    std::vector<int> level(coder.base_levels);
    std::vector<cdouble> term(n, cdouble(0.0, 0.0));
    cdouble sum(0.0, 0.0);
    auto refresh = [&]() {
        sum = cdouble(0.0, 0.0);
        for (long p = 0; p < na; ++p) {
            const int e = coder.sweep_order[p];
            term[e] = std::polar(obj.magnitudes()[e],
                                 obj.angles()[e] + step * static_cast<double>(level[e]));
            sum += term[e];
        }
    };
    refresh();

    const cdouble rot = std::polar(1.0, step);
    SweepResult res;
    res.count = levels * na;
    res.values.resize(static_cast<std::size_t>(res.count));
    if (configs_out) configs_out->resize(static_cast<std::size_t>(res.count));

    double best_sq = -1.0;
    long events = 0;
    for (long round = 0; round < levels; ++round) {
        for (long p = 0; p < na; ++p) {
            const int e = coder.sweep_order[p];
            sum -= term[e];
            level[e] = static_cast<int>(mod_level(level[e] + 1, levels));
            term[e] *= rot;
            sum += term[e];
            ++events;
            if (events % kRefreshInterval == 0) refresh();

            const double sq = std::norm(sum);
            const long idx = events - 1;
            res.values[static_cast<std::size_t>(idx)] = std::sqrt(sq);
            if (configs_out) (*configs_out)[static_cast<std::size_t>(idx)] = level;
            if (sq > best_sq) {
                best_sq = sq;
                res.best_step = idx;
            }
        }
    }
    return res;
}

// Recompute 16 sweep values independently and compare against the recorded
// incremental values; guards the O(1)-update bookkeeping. Tolerance is
// relative to the objective scale sum |z_i|: candidate values near zero come
// from cancellation and carry absolute, not relative, error.
void spot_check(const RankOneObjective& obj, const PartitionCoder& coder,
                const SweepResult& res) {
    if (res.count <= 0) return;
    const double scale = std::max(continuous_bound(obj), 1e-300);
    std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(res.count);
    for (int i = 0; i < 16; ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const long stepi = static_cast<long>(state % static_cast<std::uint64_t>(res.count));
        const double direct =
            evaluate(obj, PhaseConfig(coder.scheme, config_at_step(coder, stepi)));
        const double recorded = res.values[static_cast<std::size_t>(stepi)];
        if (std::fabs(direct - recorded) > 1e-9 * scale)
            throw InternalError("incremental sweep value drifted beyond 1e-9 at step " +
                                std::to_string(stepi));
    }
}

Solution all_zero_solution(const RankOneObjective& obj, const QuantizationScheme& scheme,
                           Method method) {
    PhaseConfig cfg(scheme, std::vector<int>(obj.size(), 0));
    return Solution{cfg, evaluate(obj, cfg), 1, method, obj.augmented()};
}

}  // namespace

int subproblem_best(double tau, double psi, const QuantizationScheme& scheme) {
    const double step = scheme.step();
    const long levels = scheme.levels();
    const double t = (psi - tau) / step;
    const long k0 = static_cast<long>(std::floor(t));
    const double d0 = circ_dist(psi, tau + static_cast<double>(k0) * step);
    const double d1 = circ_dist(psi, tau + static_cast<double>(k0 + 1) * step);
    if (d0 < d1) return static_cast<int>(mod_level(k0, levels));
    if (d1 < d0) return static_cast<int>(mod_level(k0 + 1, levels));
    return static_cast<int>(std::min(mod_level(k0, levels), mod_level(k0 + 1, levels)));
}

PartitionCoder build_coder(const RankOneObjective& obj, const QuantizationScheme& scheme) {
    const std::size_t n = obj.size();
    const double step = scheme.step();
    const double half = step / 2.0;
    const long levels = scheme.levels();

    PartitionCoder coder{scheme, {}, {}, {}, {}, {}, 0};
    coder.folded.resize(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (obj.magnitudes()[i] > 0.0) coder.folded[i] = fold_angle(obj.angles()[i], step);
    }

    coder.order.resize(n);
    std::iota(coder.order.begin(), coder.order.end(), 0);
    std::stable_sort(coder.order.begin(), coder.order.end(),
                     [&](int a, int b) { return coder.folded[a] < coder.folded[b]; });

    // Per-element switch points and the level held just below the first one.
    // With centers at tau_i + k*step, the first folded boundary is
    // folded_i +- step/2 and the level under it is recovered by exact integer
    // arithmetic, so coincident boundaries cannot produce an inconsistent
    // starting assignment.
    struct Active {
        int elem;
        double boundary;
    };
    std::vector<Active> active;
    coder.base_levels.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (obj.magnitudes()[i] <= 0.0) continue;
        const double tau = obj.angles()[i];
        const double folded = coder.folded[i];
        const long center_offset = std::lround((tau - folded) / step);  // integer by construction
        double boundary;
        long pre_center;  // center index in folded terms, 0 or levels-1
        if (folded < half) {
            boundary = folded + half;
            pre_center = 0;
        } else {
            boundary = folded - half;
            pre_center = levels - 1;
        }
        coder.base_levels[i] = static_cast<int>(mod_level(pre_center - center_offset, levels));
        active.push_back({static_cast<int>(i), boundary});
    }
    std::stable_sort(active.begin(), active.end(), [](const Active& a, const Active& b) {
        return a.boundary < b.boundary;
    });

    coder.active_count = active.size();
    coder.sweep_order.reserve(active.size());
    for (const Active& a : active) coder.sweep_order.push_back(a.elem);
    coder.boundaries.reserve(active.size() * static_cast<std::size_t>(levels));
    for (long round = 0; round < levels; ++round) {
        for (const Active& a : active)
            coder.boundaries.emplace_back(a.boundary + static_cast<double>(round) * step, a.elem);
    }
    return coder;
}

CandidateSet enumerate_candidates(const RankOneObjective& obj,
                                  const QuantizationScheme& scheme) {
    PartitionCoder coder = build_coder(obj, scheme);
    CandidateSet set{scheme, {}, {}};
    if (coder.active_count == 0) {
        set.configs.push_back(std::vector<int>(obj.size(), 0));
        set.values.push_back(0.0);
        return set;
    }
    SweepResult res = run_sweep(obj, coder, &set.configs);
    set.values = std::move(res.values);
    return set;
}

Solution solve_das(const RankOneObjective& obj, const QuantizationScheme& scheme) {
    PartitionCoder coder = build_coder(obj, scheme);
    if (coder.active_count == 0) return all_zero_solution(obj, scheme, Method::Das);

    SweepResult res = run_sweep(obj, coder, nullptr);
    spot_check(obj, coder, res);

    std::vector<int> best = canonicalize(config_at_step(coder, res.best_step), scheme.levels());
    PhaseConfig cfg(scheme, std::move(best));
    return Solution{cfg, evaluate(obj, cfg), res.count, Method::Das, obj.augmented()};
}

Solution solve_binary(const RankOneObjective& obj) {
    const QuantizationScheme scheme(1);
    const std::size_t n = obj.size();

    // Fold angles into [0, pi): entries from [pi, 2*pi) are negated exactly
    // and flagged for sign restoration at the end.
    std::vector<int> active;
    std::vector<double> folded(n, 0.0);
    std::vector<signed char> flip(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (obj.magnitudes()[i] <= 0.0) continue;
        double t = obj.angles()[i];
        if (t >= kTwoPi / 2.0) {
            t -= kTwoPi / 2.0;
            flip[i] = 1;
        }
        folded[i] = t;
        active.push_back(static_cast<int>(i));
    }
    if (active.empty()) return all_zero_solution(obj, scheme, Method::Binary);

    std::stable_sort(active.begin(), active.end(),
                     [&](int a, int b) { return folded[a] < folded[b]; });

    // Prefix-sign candidates over the sorted folded vector: candidate i has
    // +1 on the first i sorted entries, -1 on the rest. Walking i upward
    // flips exactly one sign, so each value costs one complex update.
    cdouble sum(0.0, 0.0);
    for (int e : active) {
        const cdouble zf = flip[e] ? -obj.z()[e] : obj.z()[e];
        sum -= zf;
    }
    double best_sq = -1.0;
    std::size_t best_prefix = 0;
    for (std::size_t i = 0; i < active.size(); ++i) {
        const int e = active[i];
        const cdouble zf = flip[e] ? -obj.z()[e] : obj.z()[e];
        sum += 2.0 * zf;
        const double sq = std::norm(sum);
        if (sq > best_sq) {
            best_sq = sq;
            best_prefix = i + 1;
        }
    }

    std::vector<int> levels_vec(n, 0);
    for (std::size_t i = 0; i < active.size(); ++i) {
        const int e = active[i];
        const bool positive = i < best_prefix;  // sign of the folded entry
        const bool plus = positive != (flip[e] != 0);
        levels_vec[e] = plus ? 0 : 1;
    }
    PhaseConfig cfg(scheme, canonicalize(std::move(levels_vec), 2));
    return Solution{cfg, evaluate(obj, cfg), static_cast<long>(active.size()), Method::Binary,
                    obj.augmented()};
}

}  // namespace risopt
