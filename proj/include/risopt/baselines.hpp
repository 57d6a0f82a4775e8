#pragma once

#include <cstdint>

#include "risopt/types.hpp"

namespace risopt {

// Reference solvers: the exhaustive ground truth, a split-enumeration exact
// search with longer reach, the round-the-continuous-solution heuristic, and
// the trivial codebooks used as hardware-style benchmarks.

enum class BaselineKind {
    Exhaustive,
    QuantizedAlignment,
    Random,
    AllZeros,
};

// Evaluation budget above which exhaustive() refuses to run.
inline constexpr long kExhaustiveCap = 1L << 24;

// Half-enumeration budget for meet_in_middle() (points per half).
inline constexpr long kMeetInMiddleCap = 1L << 22;

// True global optimum by full mixed-radix enumeration with incremental
// single-digit updates. Ties break to the lexicographically smallest index
// vector. Refuses instances with levels^N > kExhaustiveCap.
Solution exhaustive(const RankOneObjective& obj, const QuantizationScheme& scheme);

// Exact global optimum via meet-in-the-middle: enumerate partial sums of the
// two halves, then maximize |a + b| over the convex hulls of both clouds
// (the maximum of a convex function over a point set is attained at a hull
// vertex, applied to each argument in turn). Reaches instances far beyond the
// exhaustive cap, e.g. 8 levels with N = 12. Value is exact; the returned
// config is one optimizer with no tie-order guarantee.
Solution meet_in_middle(const RankOneObjective& obj, const QuantizationScheme& scheme);

// Round the aligned continuous solution (w_i = -tau_i) to the circularly
// nearest level per entry. Not optimal in general; per-entry rounding error
// is at most step/2.
Solution quantized_alignment(const RankOneObjective& obj, const QuantizationScheme& scheme);

// AllZeros: every cell at phase pi (level levels/2), the copper-plate
// benchmark. Random: i.i.d. uniform levels from the seed.
PhaseConfig trivial_codebook(BaselineKind kind, std::size_t n, const QuantizationScheme& scheme,
                             std::uint64_t seed = 0);

}  // namespace risopt
