#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "risopt/qp_reduce.hpp"
#include "risopt/types.hpp"

namespace risopt {

// Channel models: i.i.d. Gaussian cascades, the statistical pathloss model
// (model 1), and the far-field angle-based model (model 2). All generators
// are seeded and bit-reproducible; no hidden global state.

struct Model1Params {
    std::array<double, 3> tx_pos{50.0, -200.0, 20.0};
    std::array<double, 3> ris_pos{-2.0, -1.0, 0.0};
    std::array<double, 3> rx_pos{0.0, 0.0, 0.0};
    int cells = 200;
    double p_dbm = 30.0;       // transmit power
    double noise_dbm = -90.0;  // noise power sigma^2
};

struct FarFieldScene {
    std::vector<std::array<double, 3>> cell_positions;  // meters
    double wavelength = 0.062;                          // meters
    double departure_theta = 0.0, departure_phi = 0.0;  // radians
    std::vector<std::array<double, 2>> arrivals;        // (theta, phi) radians per path
    cvec amplitudes;                                    // one complex amplitude per arrival
    cdouble path_gain{1.0, 0.0};                        // free attenuation factor eta
};

// h_s, h_r entries and h_d all i.i.d. CN(0, variance). Scaling with variance
// is exact: the same unit draws are multiplied by sqrt(variance/2).
CascadedChannel sample_gaussian_cascade(std::size_t n, double variance, std::uint64_t seed);

// [h_0, h_1, ..., h_N]: background channel with pathloss
// 32.6 + 36.7 log10(d0) dB and reflected channels with
// (30 + 22 log10(d1)) + (30 + 22 log10(d2)) dB, Rayleigh CN(0,1) fading.
// d0 = |tx-rx|, d1 = |tx-ris|, d2 = |ris-rx|; coincident positions are a
// geometry error.
cvec sample_model1(const Model1Params& params, std::uint64_t seed);

// Augmented objective [h_1..h_N, h_0] for a model-1 draw.
RankOneObjective model1_objective(const cvec& h);

// e^{j 2 pi p.u(theta,phi) / wavelength} with
// u = [sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)].
cdouble steering_entry(const std::array<double, 3>& p, double theta, double phi,
                       double wavelength);

// Departure steering vector b (one entry per cell).
cvec departure_vector(const FarFieldScene& scene);

// Arrival steering matrix, one row per cell, one column per incoming path.
std::vector<cvec> arrival_matrix(const FarFieldScene& scene);

// Objective for the far-field model: z_i = eta * b_i * (Bx)_i, so that
// |sum_i e^{j w_i} z_i|^2 equals the received power quadratic form.
RankOneObjective build_model2_objective(const FarFieldScene& scene);

// Dense |eta|^2 (Q o P^T) with P = B x x^H B^H and Q = conj(b) b^T, built by
// explicit matrix products. Reference route for the quadratic-form identity;
// independent of the generator shortcut above.
std::vector<cvec> build_model2_matrix(const FarFieldScene& scene);

// p_dbm - noise_dbm + 20 log10(|h|); nullopt for |h| = 0 (the minus-infinity
// sentinel, never a float infinity).
std::optional<double> snr_db(cdouble h, double p_dbm, double noise_dbm);

// Uniform planar array in the x-y plane, centered at the origin, row-major
// cell order (index = row * cols + col), +z broadside.
std::vector<std::array<double, 3>> planar_grid(int rows, int cols, double spacing);

// JSON round-trips; angles are degrees at this boundary and radians inside.
FarFieldScene scene_from_json(const nlohmann::json& j);
nlohmann::json scene_to_json(const FarFieldScene& scene);
Model1Params model1_from_json(const nlohmann::json& j);
nlohmann::json model1_to_json(const Model1Params& params);

}  // namespace risopt
