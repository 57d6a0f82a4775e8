#include "risopt/rng.hpp"

#include <cmath>
#include <numbers>

namespace risopt {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

double TrialRng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

int TrialRng::uniform_int(int bound) {
    // Rejection from the top to avoid modulo bias.
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return static_cast<int>(x % b);
}

double TrialRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> TrialRng::complex_normal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
}

std::uint64_t hash_complex_vector(const std::vector<std::complex<double>>& z) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        __builtin_memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffULL;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& c : z) {
        mix(c.real());
        mix(c.imag());
    }
    return h;
}

}  // namespace risopt
