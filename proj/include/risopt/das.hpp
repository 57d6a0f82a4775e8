#pragma once

#include <utility>
#include <vector>

#include "risopt/types.hpp"

namespace risopt {

// Divide-and-sort search for the discrete inner-product maximization
// max |sum_i z_i e^{j w_i}| over w_i in the quantized phase set.
//
// The per-element optimal level is a piecewise-constant function of an
// auxiliary alignment angle psi; its switch points for element i are the
// midpoints between consecutive centers tau_i + k*step. Sweeping psi across
// all 2^B * N switch points enumerates every distinct joint assignment, so
// at most 2^B * N candidates contain a global optimizer.

// Sorted fold-and-switch structure for one objective/scheme pair.
// Zero-magnitude entries contribute nothing and are pinned to level 0; they
// are excluded from the boundary structure.
struct PartitionCoder {
    QuantizationScheme scheme;
    std::vector<double> folded;      // tau_i mod step, in [0, step); 0 for zero entries
    std::vector<int> order;          // permutation sorting folded ascending, stable
    std::vector<std::pair<double, int>> boundaries;  // (angle, element), ascending,
                                                     // levels * active_count entries
    std::vector<int> sweep_order;    // active elements by first-boundary angle
    std::vector<int> base_levels;    // level of each element just below the first boundary
    std::size_t active_count = 0;
};

// Level index k minimizing the circular distance from psi to tau + k*step.
// A tie at exactly step/2 resolves to the smaller index.
int subproblem_best(double tau, double psi, const QuantizationScheme& scheme);

PartitionCoder build_coder(const RankOneObjective& obj, const QuantizationScheme& scheme);

// All candidates visited by one full boundary sweep, with their objective
// values. Values are maintained incrementally (one term swap per step, full
// refresh every 1024 steps); duplicate boundaries yield duplicate candidates
// and are kept.
struct CandidateSet {
    QuantizationScheme scheme;
    std::vector<std::vector<int>> configs;
    std::vector<double> values;

    std::size_t size() const { return configs.size(); }
    PhaseConfig config(std::size_t i) const { return PhaseConfig(scheme, configs[i]); }
};

CandidateSet enumerate_candidates(const RankOneObjective& obj, const QuantizationScheme& scheme);

// Global optimum over the candidate sweep. The reported config is normalized
// so its first entry has index 0 (optima are equivalent under global level
// shifts); value is recomputed from the config in extended precision.
Solution solve_das(const RankOneObjective& obj, const QuantizationScheme& scheme);

// 1-bit specialization: folds angles into [0, pi), sorts once and checks only
// the N prefix-sign patterns, with sign restoration for entries folded down
// from [pi, 2*pi). Always agrees with solve_das at one bit.
Solution solve_binary(const RankOneObjective& obj);

}  // namespace risopt
