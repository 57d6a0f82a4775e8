#pragma once

#include <optional>
#include <vector>

#include "risopt/types.hpp"

namespace risopt {

// Reduction pipeline from channel models to the rank-one inner-product
// objective: cascade the per-cell channels into phi, absorb the direct link
// by homogenization, and map solutions back.

struct CascadedChannel {
    cvec h_s;                 // BS -> RIS
    cvec h_r;                 // RIS -> user
    cdouble h_d{0.0, 0.0};    // direct link, may be zero
};

// phi_i = conj(h_r_i) * h_s_i.
cvec build_phi(const CascadedChannel& ch);

// Objective over N+1 variables with z = [phi; h_d], augmented. Use the plain
// RankOneObjective(phi) when h_d is zero.
RankOneObjective homogenize(const cvec& phi, cdouble h_d);

// Convenience: build_phi + homogenize, skipping augmentation when h_d == 0.
RankOneObjective reduce_channel(const CascadedChannel& ch);

// Divide out the auxiliary slot of a solution to an augmented problem:
// indices become (k_i - k_last) mod levels and the last entry is dropped.
// The value is preserved exactly (division by a unit-modulus scalar).
Solution dehomogenize(const Solution& sol);

// Hermitian positive-semidefinite matrix of numerical rank one. Keeps its
// generating vector when construction provides one; dense matrices admitted
// through from_matrix are checked (second eigenvalue at most 1e-9 of the
// first) and violations are errors.
class RankOneMatrix {
  public:
    static RankOneMatrix from_generator(cvec v);

    // rows: dense row-major Hermitian matrix. Throws DegeneracyError when the
    // eigenvalue ratio exceeds 1e-9, DomainError when not Hermitian.
    static RankOneMatrix from_matrix(std::vector<cvec> rows);

    std::size_t dim() const { return dim_; }
    const cvec* generator() const { return generator_ ? &*generator_ : nullptr; }
    cdouble entry(std::size_t i, std::size_t j) const;
    std::vector<cvec> dense() const;

  private:
    RankOneMatrix() = default;
    std::size_t dim_ = 0;
    std::optional<cvec> generator_;
    std::vector<cvec> rows_;
};

// v with R ~= v v^H (so v = sqrt(lambda) z up to a global phase). Exact when
// the generator is stored; otherwise extracted by power iteration.
cvec principal_vector(const RankOneMatrix& R);

}  // namespace risopt
