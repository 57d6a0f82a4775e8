#include "risopt/qp_reduce.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace risopt {

namespace {

void check_finite(const cvec& v, const char* name) {
    for (const auto& c : v) {
        if (!(std::isfinite(c.real()) && std::isfinite(c.imag())))
            throw DomainError(std::string(name) + " contains a non-finite entry");
    }
}

double frob_norm(const std::vector<cvec>& rows) {
    long double s = 0.0L;
    for (const auto& row : rows)
        for (const auto& c : row) s += std::norm(c);
    return static_cast<double>(std::sqrt(s));
}

cvec mat_vec(const std::vector<cvec>& rows, const cvec& v) {
    const std::size_t n = rows.size();
    cvec out(n, cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        cdouble acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) acc += rows[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

double vec_norm(const cvec& v) {
    long double s = 0.0L;
    for (const auto& c : v) s += std::norm(c);
    return static_cast<double>(std::sqrt(s));
}

// Dominant eigenpair of a Hermitian PSD matrix by power iteration: start at
// the column of largest norm, stop when successive Rayleigh quotients agree
// to 1e-14 relative or after 200 iterations.
struct EigenPair {
    double value = 0.0;
    cvec vector;
};

EigenPair dominant_eigenpair(const std::vector<cvec>& rows) {
    const std::size_t n = rows.size();
    std::size_t best_col = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        long double s = 0.0L;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(rows[i][j]);
        if (static_cast<double>(s) > best_norm) {
            best_norm = static_cast<double>(s);
            best_col = j;
        }
    }
    cvec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rows[i][best_col];
    double nv = vec_norm(v);
    if (nv == 0.0) return {0.0, cvec(n, cdouble(0.0, 0.0))};
    for (auto& c : v) c /= nv;

    double rho_prev = 0.0;
    for (int it = 0; it < 200; ++it) {
        cvec av = mat_vec(rows, v);
        long double rho_acc = 0.0L;
        for (std::size_t i = 0; i < n; ++i)
            rho_acc += (std::conj(v[i]) * av[i]).real();
        const double rho = static_cast<double>(rho_acc);
        const double na = vec_norm(av);
        if (na == 0.0) return {0.0, v};
        for (auto& c : av) c /= na;
        v = std::move(av);
        if (it > 0 && std::fabs(rho - rho_prev) < 1e-14 * std::fabs(rho)) {
            rho_prev = rho;
            break;
        }
        rho_prev = rho;
    }
    return {rho_prev, v};
}

}  // namespace

cvec build_phi(const CascadedChannel& ch) {
    if (ch.h_s.size() != ch.h_r.size())
        throw DimensionError("cascaded channel lengths differ: h_s has " +
                             std::to_string(ch.h_s.size()) + ", h_r has " +
                             std::to_string(ch.h_r.size()));
    check_finite(ch.h_s, "h_s");
    check_finite(ch.h_r, "h_r");
    cvec phi(ch.h_s.size());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = std::conj(ch.h_r[i]) * ch.h_s[i];
    return phi;
}

RankOneObjective homogenize(const cvec& phi, cdouble h_d) {
    if (phi.empty()) throw DimensionError("phi must be nonempty");
    cvec z = phi;
    z.push_back(h_d);
    return RankOneObjective(std::move(z), /*augmented=*/true);
}

RankOneObjective reduce_channel(const CascadedChannel& ch) {
    cvec phi = build_phi(ch);
    if (ch.h_d == cdouble(0.0, 0.0)) return RankOneObjective(std::move(phi));
    return homogenize(phi, ch.h_d);
}

Solution dehomogenize(const Solution& sol) {
    if (!sol.augmented)
        throw MisuseError("dehomogenize requires a solution of an augmented objective");
    if (sol.config.size() < 2)
        throw DimensionError("augmented solution must have at least two entries");
    const long levels = sol.config.scheme().levels();
    const std::vector<int>& k = sol.config.indices();
    const int pivot = k.back();
    std::vector<int> out(k.size() - 1);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        long v = (static_cast<long>(k[i]) - pivot) % levels;
        if (v < 0) v += levels;
        out[i] = static_cast<int>(v);
    }
    Solution res{PhaseConfig(sol.config.scheme(), std::move(out)), sol.value,
                 sol.candidate_count, sol.method, false};
    return res;
}

RankOneMatrix RankOneMatrix::from_generator(cvec v) {
    if (v.empty()) throw DimensionError("generator must be nonempty");
    check_finite(v, "generator");
    RankOneMatrix m;
    m.dim_ = v.size();
    m.generator_ = std::move(v);
    return m;
}

RankOneMatrix RankOneMatrix::from_matrix(std::vector<cvec> rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw DimensionError("matrix must be nonempty");
    for (const auto& row : rows) {
        if (row.size() != n) throw DimensionError("matrix must be square");
        check_finite(row, "matrix");
    }
    const double scale = frob_norm(rows);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (std::abs(rows[i][j] - std::conj(rows[j][i])) > 1e-9 * std::max(scale, 1e-300))
                throw DomainError("matrix is not Hermitian");
        }
    }

    EigenPair top = dominant_eigenpair(rows);
    if (top.value <= 0.0)
        throw DegeneracyError("matrix is not positive semidefinite rank one", 1.0);

    // Deflate and measure the second eigenvalue.
    std::vector<cvec> deflated = rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            deflated[i][j] -= top.value * top.vector[i] * std::conj(top.vector[j]);
    EigenPair second = dominant_eigenpair(deflated);
    const double ratio = std::fabs(second.value) / top.value;
    if (ratio > 1e-9)
        throw DegeneracyError("matrix is not numerically rank one (eigenvalue ratio " +
                                  std::to_string(ratio) + ")",
                              ratio);

    RankOneMatrix m;
    m.dim_ = n;
    m.rows_ = std::move(rows);
    return m;
}

cdouble RankOneMatrix::entry(std::size_t i, std::size_t j) const {
    if (generator_) return (*generator_)[i] * std::conj((*generator_)[j]);
    return rows_[i][j];
}

std::vector<cvec> RankOneMatrix::dense() const {
    std::vector<cvec> out(dim_, cvec(dim_));
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out[i][j] = entry(i, j);
    return out;
}

cvec principal_vector(const RankOneMatrix& R) {
    if (R.generator()) return *R.generator();
    EigenPair top = dominant_eigenpair(R.dense());
    const double s = std::sqrt(std::max(top.value, 0.0));
    cvec v = top.vector;
    for (auto& c : v) c *= s;
    return v;
}

}  // namespace risopt
