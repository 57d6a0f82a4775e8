#include "risopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "risopt/das.hpp"
#include "risopt/rng.hpp"

namespace risopt {

namespace {

// levels^n, or -1 on overflow past cap.
long checked_pow(long levels, std::size_t n, long cap) {
    long v = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (v > cap / levels) return -1;
        v *= levels;
    }
    return v;
}

struct OdometerBest {
    double best_sq = -1.0;
    std::vector<int> best;
};

// The fastest digit contributes one of levels precomputed rotations of its
// term, so the hot loop is branch-free; the remaining digits advance
// odometer-style with one term swap per carry. A digit wrapping to 0 resets
// its term from the cached base value, which bounds rotation drift to levels
// multiplications per term.
std::vector<cdouble> last_digit_rotations(const cdouble& base, long levels, const cdouble& rot) {
    std::vector<cdouble> r(static_cast<std::size_t>(levels));
    r[0] = base;
    for (long k = 1; k < levels; ++k) r[static_cast<std::size_t>(k)] = r[k - 1] * rot;
    return r;
}

// Argmax of |base_sum + sum of terms|^2 over all levels^n assignments of the
// elements listed in idx, enumerated in lexicographic order (ties keep the
// lexicographically smallest config).
OdometerBest odometer_max(const RankOneObjective& obj, const QuantizationScheme& scheme,
                          const std::vector<int>& idx, cdouble base_sum) {
    const long levels = scheme.levels();
    const std::size_t n = idx.size();
    const cdouble rot = std::polar(1.0, scheme.step());

    OdometerBest out;
    if (n == 0) {
        out.best_sq = std::norm(base_sum);
        return out;
    }

    const std::vector<cdouble> last_rot =
        last_digit_rotations(obj.z()[static_cast<std::size_t>(idx[n - 1])], levels, rot);

    const std::size_t np = n - 1;
    std::vector<cdouble> base_term(np), term(np);
    cdouble prefix = base_sum;
    for (std::size_t i = 0; i < np; ++i) {
        base_term[i] = obj.z()[static_cast<std::size_t>(idx[i])];
        term[i] = base_term[i];
        prefix += term[i];
    }

    std::vector<int> digits(np, 0);
    std::vector<int> best_prefix(np, 0);
    int best_last = 0;
    while (true) {
        const double pre_re = prefix.real();
        const double pre_im = prefix.imag();
        for (long k = 0; k < levels; ++k) {
            const double re = pre_re + last_rot[static_cast<std::size_t>(k)].real();
            const double im = pre_im + last_rot[static_cast<std::size_t>(k)].imag();
            const double sq = re * re + im * im;
            if (sq > out.best_sq) {
                out.best_sq = sq;
                best_prefix = digits;
                best_last = static_cast<int>(k);
            }
        }
        std::size_t d = np;
        bool done = np == 0;
        while (d > 0) {
            --d;
            prefix -= term[d];
            if (digits[d] + 1 < levels) {
                ++digits[d];
                term[d] *= rot;
                prefix += term[d];
                break;
            }
            digits[d] = 0;
            term[d] = base_term[d];
            prefix += term[d];
            if (d == 0) done = true;
        }
        if (done) break;
    }
    out.best = std::move(best_prefix);
    out.best.push_back(best_last);
    return out;
}

// Every partial sum over the elements in idx, indexed by lexicographic rank
// (last digit least significant), for the meet-in-the-middle halves.
std::vector<cdouble> odometer_sums(const RankOneObjective& obj, const QuantizationScheme& scheme,
                                   const std::vector<int>& idx) {
    const long levels = scheme.levels();
    const std::size_t n = idx.size();
    if (n == 0) return {cdouble(0.0, 0.0)};
    const long total = checked_pow(levels, n, kMeetInMiddleCap);
    const cdouble rot = std::polar(1.0, scheme.step());

    const std::vector<cdouble> last_rot =
        last_digit_rotations(obj.z()[static_cast<std::size_t>(idx[n - 1])], levels, rot);

    const std::size_t np = n - 1;
    std::vector<cdouble> base_term(np), term(np);
    cdouble prefix(0.0, 0.0);
    for (std::size_t i = 0; i < np; ++i) {
        base_term[i] = obj.z()[static_cast<std::size_t>(idx[i])];
        term[i] = base_term[i];
        prefix += term[i];
    }

    std::vector<cdouble> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<int> digits(np, 0);
    while (true) {
        for (long k = 0; k < levels; ++k)
            out.push_back(prefix + last_rot[static_cast<std::size_t>(k)]);
        std::size_t d = np;
        bool done = np == 0;
        while (d > 0) {
            --d;
            prefix -= term[d];
            if (digits[d] + 1 < levels) {
                ++digits[d];
                term[d] *= rot;
                prefix += term[d];
                break;
            }
            digits[d] = 0;
            term[d] = base_term[d];
            prefix += term[d];
            if (d == 0) done = true;
        }
        if (done) break;
    }
    return out;
}

// Decode the lexicographic rank produced by the odometer (last digit
// fastest) back into digits.
std::vector<int> decode_rank(std::size_t rank, std::size_t n, long levels) {
    std::vector<int> digits(n, 0);
    for (std::size_t i = n; i > 0; --i) {
        digits[i - 1] = static_cast<int>(rank % static_cast<std::size_t>(levels));
        rank /= static_cast<std::size_t>(levels);
    }
    return digits;
}

double cross(const cdouble& o, const cdouble& a, const cdouble& b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

// Indices of points that cannot be strict interior points of the octagon
// spanned by the extremes in the 8 axis/diagonal directions. The clouds here
// concentrate toward the origin, so this linear pass discards almost
// everything before the hull sort.
std::vector<std::size_t> akl_toussaint_survivors(const std::vector<cdouble>& pts) {
    const std::size_t n = pts.size();
    auto key = [&](std::size_t i, int dir) {
        const double x = pts[i].real(), y = pts[i].imag();
        switch (dir) {
            case 0: return x;
            case 1: return x + y;
            case 2: return y;
            case 3: return y - x;
            case 4: return -x;
            case 5: return -x - y;
            case 6: return -y;
            default: return x - y;
        }
    };
    std::size_t extreme[8] = {};
    for (int dir = 0; dir < 8; ++dir) {
        for (std::size_t i = 1; i < n; ++i)
            if (key(i, dir) > key(extreme[dir], dir)) extreme[dir] = i;
    }
    std::vector<cdouble> poly;  // counterclockwise
    for (int dir = 0; dir < 8; ++dir) {
        const cdouble p = pts[extreme[dir]];
        if (poly.empty() || std::abs(p - poly.back()) > 0.0) poly.push_back(p);
    }
    if (poly.size() >= 2 && std::abs(poly.front() - poly.back()) == 0.0) poly.pop_back();

    std::vector<std::size_t> out;
    if (poly.size() < 3) {
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = i;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool inside = true;
        for (std::size_t e = 0; e < poly.size() && inside; ++e) {
            const cdouble& a = poly[e];
            const cdouble& b = poly[(e + 1) % poly.size()];
            if (cross(a, b, pts[i]) <= 0.0) inside = false;
        }
        if (!inside) out.push_back(i);
    }
    return out;
}

// Andrew monotone chain over (re, im); returns indices of hull vertices.
// Collinear points are dropped, which is safe here: an interior point of a
// segment never strictly beats both endpoints in |a + .|.
std::vector<std::size_t> convex_hull(const std::vector<cdouble>& pts) {
    const std::size_t n = pts.size();
    if (n <= 2) {
        std::vector<std::size_t> ord(n);
        for (std::size_t i = 0; i < n; ++i) ord[i] = i;
        return ord;
    }
    std::vector<std::size_t> ord = akl_toussaint_survivors(pts);
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        if (pts[a].real() != pts[b].real()) return pts[a].real() < pts[b].real();
        return pts[a].imag() < pts[b].imag();
    });
    const std::size_t m = ord.size();
    if (m <= 2) return ord;

    std::vector<std::size_t> hull(2 * m);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {  // lower
        while (k >= 2 && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[ord[i]]) <= 0.0) --k;
        hull[k++] = ord[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = m - 1; i-- > 0;) {  // upper
        while (k >= lower && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[ord[i]]) <= 0.0) --k;
        hull[k++] = ord[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

Solution exhaustive(const RankOneObjective& obj, const QuantizationScheme& scheme) {
    const std::size_t n = obj.size();
    const long total = checked_pow(scheme.levels(), n, kExhaustiveCap);
    if (total < 0)
        throw RefusalError("exhaustive search refused: levels^N exceeds the 2^24 (" +
                           std::to_string(kExhaustiveCap) + ") evaluation cap");

    std::vector<int> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
    OdometerBest best = odometer_max(obj, scheme, idx, cdouble(0.0, 0.0));

    PhaseConfig cfg(scheme, std::move(best.best));
    return Solution{cfg, evaluate(obj, cfg), total, Method::Exhaustive, obj.augmented()};
}

Solution meet_in_middle(const RankOneObjective& obj, const QuantizationScheme& scheme) {
    const std::size_t n = obj.size();
    const std::size_t n_a = n / 2;
    const std::size_t n_b = n - n_a;
    if (checked_pow(scheme.levels(), n_b, kMeetInMiddleCap) < 0)
        throw RefusalError("meet-in-the-middle refused: levels^(N/2) exceeds the " +
                           std::to_string(kMeetInMiddleCap) + " point cap");

    std::vector<int> idx_a, idx_b;
    for (std::size_t i = 0; i < n_a; ++i) idx_a.push_back(static_cast<int>(i));
    for (std::size_t i = n_a; i < n; ++i) idx_b.push_back(static_cast<int>(i));

    // The empty half contributes the single partial sum 0.
    std::vector<cdouble> sums_a =
        idx_a.empty() ? std::vector<cdouble>{cdouble(0.0, 0.0)}
                      : odometer_sums(obj, scheme, idx_a);
    std::vector<cdouble> sums_b = odometer_sums(obj, scheme, idx_b);

    // The joint optimum is attained with both halves at hull vertices, since
    // |a + b| is convex in each argument separately.
    std::vector<std::size_t> hull_a = convex_hull(sums_a);
    std::vector<std::size_t> hull_b = convex_hull(sums_b);

    double best_sq = -1.0;
    std::size_t best_a = 0, best_b = 0;
    for (std::size_t ia : hull_a) {
        for (std::size_t ib : hull_b) {
            const double sq = std::norm(sums_a[ia] + sums_b[ib]);
            if (sq > best_sq) {
                best_sq = sq;
                best_a = ia;
                best_b = ib;
            }
        }
    }

    std::vector<int> digits_a = decode_rank(best_a, n_a, scheme.levels());
    std::vector<int> digits_b = decode_rank(best_b, n_b, scheme.levels());
    digits_a.insert(digits_a.end(), digits_b.begin(), digits_b.end());
    PhaseConfig cfg(scheme, std::move(digits_a));
    const long count = static_cast<long>(hull_a.size() * hull_b.size());
    return Solution{cfg, evaluate(obj, cfg), count, Method::MeetInMiddle, obj.augmented()};
}

Solution quantized_alignment(const RankOneObjective& obj, const QuantizationScheme& scheme) {
    std::vector<int> levels_vec(obj.size(), 0);
    for (std::size_t i = 0; i < obj.size(); ++i) {
        if (obj.magnitudes()[i] <= 0.0) continue;
        // Nearest level to -tau_i, i.e. the level aligning this term to 0.
        levels_vec[i] = subproblem_best(obj.angles()[i], 0.0, scheme);
    }
    PhaseConfig cfg(scheme, std::move(levels_vec));
    return Solution{cfg, evaluate(obj, cfg), 1, Method::QuantizedAlignment, obj.augmented()};
}

PhaseConfig trivial_codebook(BaselineKind kind, std::size_t n, const QuantizationScheme& scheme,
                             std::uint64_t seed) {
    if (n == 0) throw DimensionError("codebook must have at least one cell");
    std::vector<int> levels_vec(n, 0);
    switch (kind) {
        case BaselineKind::AllZeros: {
            const int pi_level = static_cast<int>(scheme.levels() / 2);
            std::fill(levels_vec.begin(), levels_vec.end(), pi_level);
            break;
        }
        case BaselineKind::Random: {
            TrialRng rng(seed);
            for (auto& k : levels_vec) k = rng.uniform_int(static_cast<int>(scheme.levels()));
            break;
        }
        default:
            throw DomainError("trivial_codebook expects AllZeros or Random");
    }
    return PhaseConfig(scheme, std::move(levels_vec));
}

}  // namespace risopt
