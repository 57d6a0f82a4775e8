#include "risopt/types.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace risopt {

namespace {
constexpr double kZeroMagnitude = 1e-300;
}

double wrap_to_2pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double circ_dist(double a, double b) {
    return std::fabs(std::remainder(a - b, kTwoPi));
}

QuantizationScheme::QuantizationScheme(int bits) : bits_(bits) {
    if (bits < 1 || bits > 20)
        throw DomainError("quantization bits must be in [1, 20], got " + std::to_string(bits));
    levels_ = 1L << bits;
    step_ = kTwoPi / static_cast<double>(levels_);
}

PhaseConfig::PhaseConfig(QuantizationScheme scheme, std::vector<int> indices)
    : scheme_(scheme), indices_(std::move(indices)) {
    if (indices_.empty()) throw DimensionError("phase config must have at least one entry");
    for (int k : indices_) {
        if (k < 0 || k >= scheme_.levels())
            throw DomainError("phase index " + std::to_string(k) + " outside [0, " +
                              std::to_string(scheme_.levels()) + ")");
    }
}

PhaseConfig PhaseConfig::shifted(int offset) const {
    const long levels = scheme_.levels();
    std::vector<int> out(indices_.size());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        long k = (static_cast<long>(indices_[i]) + offset) % levels;
        if (k < 0) k += levels;
        out[i] = static_cast<int>(k);
    }
    return PhaseConfig(scheme_, std::move(out));
}

RankOneObjective::RankOneObjective(cvec z, bool augmented)
    : z_(std::move(z)), augmented_(augmented) {
    if (z_.empty()) throw DimensionError("objective vector must have at least one entry");
    mag_.resize(z_.size());
    tau_.resize(z_.size());
    for (std::size_t i = 0; i < z_.size(); ++i) {
        const double m = std::abs(z_[i]);
        if (!(std::isfinite(z_[i].real()) && std::isfinite(z_[i].imag())))
            throw DomainError("objective entry is not finite");
        if (m < kZeroMagnitude) {
            mag_[i] = 0.0;
            tau_[i] = 0.0;
        } else {
            mag_[i] = m;
            double t = std::arg(z_[i]);  // (-pi, pi]
            if (t < 0.0) t += kTwoPi;
            if (t >= kTwoPi) t = 0.0;
            tau_[i] = t;
        }
    }
}

const char* method_name(Method m) {
    switch (m) {
        case Method::Das: return "das";
        case Method::Binary: return "binary";
        case Method::Exhaustive: return "exhaustive";
        case Method::MeetInMiddle: return "mim";
        case Method::QuantizedAlignment: return "quantized";
        case Method::Random: return "random";
        case Method::AllZeros: return "allzeros";
        case Method::Continuous: return "continuous";
    }
    return "unknown";
}

double evaluate(const RankOneObjective& obj, const PhaseConfig& cfg) {
    if (obj.size() != cfg.size())
        throw DimensionError("objective has " + std::to_string(obj.size()) +
                             " entries, config has " + std::to_string(cfg.size()));
    const double step = cfg.scheme().step();
    std::complex<long double> acc(0.0L, 0.0L);
    for (std::size_t i = 0; i < obj.size(); ++i) {
        const long double w = static_cast<long double>(cfg.indices()[i]) *
                              static_cast<long double>(step);
        const std::complex<long double> rot(std::cos(w), std::sin(w));
        acc += std::complex<long double>(obj.z()[i]) * rot;
    }
    return static_cast<double>(std::abs(acc));
}

double continuous_bound(const RankOneObjective& obj) {
    long double s = 0.0L;
    for (double m : obj.magnitudes()) s += m;
    return static_cast<double>(s);
}

}  // namespace risopt
