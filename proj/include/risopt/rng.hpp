#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace risopt {

// Deterministic random streams. Every stochastic routine takes an explicit
// seed or TrialRng; per-trial streams are derived with derive_seed(master,
// index), so results are reproducible regardless of how trials are scheduled
// across threads.

// One round of the splitmix64 mixer.
std::uint64_t splitmix64(std::uint64_t x);

// Stream seed for a sub-task: splitmix64 mix of master and index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 plus hand-rolled Box-Muller / rejection draws. The standard
// distributions are implementation-defined, which would make streams differ
// across standard libraries; these are pinned.
class TrialRng {
  public:
    explicit TrialRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform();

    // Uniform integer in [0, bound), bound >= 1, by rejection.
    int uniform_int(int bound);

    // Standard normal.
    double normal();

    // Circularly-symmetric complex Gaussian CN(0, variance): real and
    // imaginary parts i.i.d. N(0, variance/2).
    std::complex<double> complex_normal(double variance);

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// FNV-1a over the IEEE bit patterns of a complex vector; used to assert that
// paired benchmark trials saw the same channel realization.
std::uint64_t hash_complex_vector(const std::vector<std::complex<double>>& z);

}  // namespace risopt
