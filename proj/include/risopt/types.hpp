#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "risopt/errors.hpp"

namespace risopt {

using cdouble = std::complex<double>;
using cvec = std::vector<cdouble>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Wrap an angle into [0, 2*pi).
double wrap_to_2pi(double a);

// Absolute circular distance between two angles, in [0, pi].
double circ_dist(double a, double b);

// Discrete phase set {0, step, ..., (levels-1)*step} with levels = 2^bits and
// step * levels = 2*pi. Phases are always handled as integer level indices;
// radians are derived on demand so the discrete constraint cannot drift.
class QuantizationScheme {
  public:
    explicit QuantizationScheme(int bits);

    int bits() const { return bits_; }
    long levels() const { return levels_; }
    double step() const { return step_; }
    double phase(long level) const { return static_cast<double>(level) * step_; }

    bool operator==(const QuantizationScheme& o) const { return bits_ == o.bits_; }
    bool operator!=(const QuantizationScheme& o) const { return bits_ != o.bits_; }

  private:
    int bits_;
    long levels_;
    double step_;
};

// A per-cell phase assignment as level indices, each in [0, levels).
class PhaseConfig {
  public:
    PhaseConfig(QuantizationScheme scheme, std::vector<int> indices);

    const QuantizationScheme& scheme() const { return scheme_; }
    const std::vector<int>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    double phase(std::size_t i) const { return scheme_.phase(indices_[i]); }

    // Same configuration with offset added to every index mod levels; the
    // objective is invariant under this shift.
    PhaseConfig shifted(int offset) const;

    bool operator==(const PhaseConfig& o) const {
        return scheme_ == o.scheme_ && indices_ == o.indices_;
    }

  private:
    QuantizationScheme scheme_;
    std::vector<int> indices_;
};

// The vector z defining the inner-product objective |w^H z| with
// w^H z = sum_i e^{j w_i} z_i. Magnitudes and angles are cached at
// construction; angles live in [0, 2*pi) and entries with magnitude below
// 1e-300 are treated as exactly zero with angle 0.
class RankOneObjective {
  public:
    explicit RankOneObjective(cvec z, bool augmented = false);

    std::size_t size() const { return z_.size(); }
    const cvec& z() const { return z_; }
    const std::vector<double>& magnitudes() const { return mag_; }
    const std::vector<double>& angles() const { return tau_; }

    // True when the last slot is the fixed direct-link term introduced by
    // homogenization.
    bool augmented() const { return augmented_; }

  private:
    cvec z_;
    std::vector<double> mag_;
    std::vector<double> tau_;
    bool augmented_;
};

enum class Method {
    Das,
    Binary,
    Exhaustive,
    MeetInMiddle,
    QuantizedAlignment,
    Random,
    AllZeros,
    Continuous,
};

const char* method_name(Method m);

// One solver result. value is always recomputed from the returned config by
// evaluate(), so it matches the config exactly.
struct Solution {
    PhaseConfig config;
    double value = 0.0;
    long candidate_count = 0;
    Method method = Method::Das;
    bool augmented = false;
};

// |sum_i z_i e^{j w_i}|, accumulated in extended precision.
double evaluate(const RankOneObjective& obj, const PhaseConfig& cfg);

// sum_i |z_i|: the exact continuous-phase optimum of the rank-one objective,
// used as the continuous reference throughout.
double continuous_bound(const RankOneObjective& obj);

}  // namespace risopt
