#pragma once

// Shared helpers for the test suites: tolerant comparisons, random instance
// generation, and small independent oracles kept deliberately naive so they
// share no logic with the solvers under test.

#include <cmath>
#include <complex>
#include <vector>

#include "risopt/rng.hpp"
#include "risopt/types.hpp"

namespace testsupport {

inline bool rel_close(double a, double b, double tol) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) <= tol * scale;
}

// Comparison against an explicit problem scale; the right tool when values
// may sit near zero through cancellation.
inline bool close_at_scale(double a, double b, double tol, double scale) {
    return std::fabs(a - b) <= tol * std::max({std::fabs(a), std::fabs(b), scale, 1e-300});
}

inline risopt::cvec random_gaussian_vector(std::size_t n, std::uint64_t seed) {
    risopt::TrialRng rng(seed);
    risopt::cvec z(n);
    for (auto& c : z) c = rng.complex_normal(1.0);
    return z;
}

// Plain recursive enumeration of |sum z_i e^{j k_i step}| over all level
// assignments. No incremental updates, no sorting: the reference the fast
// paths are judged against.
inline double brute_force_max(const risopt::cvec& z, int bits,
                              std::vector<int>* best_out = nullptr) {
    const long levels = 1L << bits;
    const double step = risopt::kTwoPi / static_cast<double>(levels);
    const std::size_t n = z.size();
    std::vector<int> k(n, 0), best(n, 0);
    double best_val = -1.0;
    while (true) {
        std::complex<double> sum(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            sum += z[i] * std::polar(1.0, step * static_cast<double>(k[i]));
        const double v = std::abs(sum);
        if (v > best_val) {
            best_val = v;
            best = k;
        }
        std::size_t d = 0;
        while (d < n && ++k[d] == levels) k[d++] = 0;
        if (d == n) break;
    }
    if (best_out) *best_out = best;
    return best_val;
}

// Real value of w^H R w for w_i = e^{j phase_i}; the quadratic-form route.
inline double quadratic_form(const std::vector<risopt::cvec>& r,
                             const std::vector<double>& phases) {
    const std::size_t n = r.size();
    std::complex<long double> acc(0.0L, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::complex<long double> wi =
                std::polar(1.0L, static_cast<long double>(phases[i]));
            const std::complex<long double> wk =
                std::polar(1.0L, static_cast<long double>(phases[k]));
            acc += std::conj(wi) * std::complex<long double>(r[i][k]) * wk;
        }
    }
    return static_cast<double>(acc.real());
}

}  // namespace testsupport
