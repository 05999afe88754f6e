#pragma once

// Closed-form noise thresholds, worst-case bases-bias tolerance curves,
// concentration-of-measure and Welch-bound diagnostics, and the constrained
// quartic maximizer with its brute-force oracle.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "entcert/bases.hpp"
#include "entcert/states.hpp"
#include "entcert/witness.hpp"

namespace entcert::analysis {

/// Scan variable + grid for CSV emission; values must be strictly increasing.
struct ScanGrid {
    std::string variable;
    std::vector<double> values;
    std::map<std::string, double> fixed;

    ScanGrid(std::string var, std::vector<double> vals, std::map<std::string, double> fix = {})
        : variable(std::move(var)), values(std::move(vals)), fixed(std::move(fix)) {
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] <= values[i - 1])
                throw RangeExceeded("ScanGrid: values must be strictly increasing");
    }
};

/// White-noise threshold for witnessing Schmidt number >= k+1 in an isotropic
/// state: p < (m - T)(d - k) / (m (d - 1)), clamped at 0.
inline double p_threshold_iso(int d, int k, int m, double T) {
    if (k < 1 || k > d - 1) throw RangeExceeded("p_threshold_iso: need 1 <= k <= d-1");
    if (T < 1.0 - 1e-12 || T > m + 1e-12)
        throw RangeExceeded("p_threshold_iso: need 1 <= T <= m");
    return std::max(0.0, (m - T) * (d - k) / (m * (d - 1.0)));
}

/// T-bar for the worst bases compatible with a given c_min: every pair set to
/// (c_max = 1 - (d-1) c_min, c_min).
inline double worst_case_T(int d, int m, double c_min) {
    if (c_min < 0.0 || c_min > 1.0 / d + 1e-12)
        throw InvalidOverlapSummary("worst_case_T: c_min in [0, 1/d]");
    std::vector<witness::PairSummary> pairs;
    const double c_max = 1.0 - (d - 1) * c_min;
    for (int z = 0; z < m; ++z)
        for (int zp = 0; zp < m; ++zp)
            if (z != zp) pairs.push_back({z, zp, c_max, c_min});
    return witness::loose_bounds(pairs, d, m).T_bar;
}

/// c_min at and below which no Schmidt number of the isotropic state can be
/// witnessed with worst-case bases: (3d - 1 - sqrt(d^2 + 10d - 7)) / (2d(d-1)).
inline double cmin_no_witness_bound(int d) {
    if (d < 2) throw DimensionMismatch("cmin_no_witness_bound: d >= 2");
    return (3.0 * d - 1.0 - std::sqrt(static_cast<double>(d) * d + 10.0 * d - 7.0)) /
           (2.0 * d * (d - 1.0));
}

/// Minimum c_min (worst-case bases) above which Schmidt number >= k+1 of the
/// isotropic state with noise p is witnessed with m bases.
inline double cmin_tolerance_iso(int d, int k, int m, double p) {
    if (k < 1 || k > d - 1) throw RangeExceeded("cmin_tolerance_iso: need 1 <= k <= d-1");
    if (m < 2) throw DimensionMismatch("cmin_tolerance_iso: m >= 2");
    if (p < 0.0) throw RangeExceeded("cmin_tolerance_iso: p >= 0");
    if (p >= (m - 1.0) * (d - k) / (m * (d - 1.0)))
        throw InfeasibleNoise("cmin_tolerance_iso: p at or above the MUB threshold");
    const double r = 1.0 + 2.0 * m * (p * (d - 1.0) / (d - k) - 1.0);
    const double g_max = (r * r - 1.0) / (2.0 * d * m * (m - 1.0));
    const double disc = (d + 1.0) * (d + 1.0) + 4.0 * d * (d - 1.0) * g_max;
    return (3.0 * d - 1.0 - std::sqrt(disc)) / (2.0 * d * (d - 1.0));
}

/// Analytic envelope of the (2,3) overlaps of the phase-drifted quadratic
/// basis triple: c+- = (sqrt(d) +- 2|sin(theta/2)|)^2 / d^2.
struct OverlapEnvelope {
    double c_minus = 0.0;
    double c_plus = 0.0;
};

inline OverlapEnvelope phase_drift_overlap_bounds(int d, double theta) {
    const double s = 2.0 * std::abs(std::sin(theta / 2.0));
    const double rd = std::sqrt(static_cast<double>(d));
    const double dd = static_cast<double>(d) * d;
    // overlaps cannot exceed 1; in small d the raw envelope can
    return {(rd - s) * (rd - s) / dd, std::min(1.0, (rd + s) * (rd + s) / dd)};
}

/// White-noise threshold for the noisy purified thermal state measured in the
/// computational/Fourier/drifted-quadratic triple (m = 3) or its first two
/// members (m = 2): (tau d - k m - (d-k) T-bar) / (tau d - m), clamped to [0,1].
inline double p_threshold_thermal(int d, int k, int m, double beta, double theta) {
    if (!numtheory::is_prime(d) || d % 2 == 0)
        throw NotOddPrime("p_threshold_thermal: d must be an odd prime");
    if (m != 2 && m != 3) throw RangeExceeded("p_threshold_thermal: m in {2, 3}");
    if (k < 1 || k > d - 1) throw RangeExceeded("p_threshold_thermal: need 1 <= k <= d-1");
    std::vector<witness::PairSummary> pairs;
    const double u = 1.0 / d;
    pairs.push_back({0, 1, u, u});
    pairs.push_back({1, 0, u, u});
    if (m == 3) {
        const OverlapEnvelope e = phase_drift_overlap_bounds(d, theta);
        pairs.push_back({0, 2, u, u});
        pairs.push_back({2, 0, u, u});
        pairs.push_back({1, 2, e.c_plus, e.c_minus});
        pairs.push_back({2, 1, e.c_plus, e.c_minus});
    }
    const double T = witness::loose_bounds(pairs, d, m).T_bar;
    const double tau = states::tau_thermal(d, beta, m);
    const double p = (tau * d - k * m - (d - k) * T) / (tau * d - m);
    return std::clamp(p, 0.0, 1.0);
}

/// Welch-bound cap on the number of orthonormal bases:
/// m <= (d+1)/2 (1 + sqrt(1 + 8 lambda(lambda-1)/(d^2-1))).
inline double max_bases_bound(int d, double lambda) {
    if (d < 2) throw DimensionMismatch("max_bases_bound: d >= 2");
    if (lambda < 1.0) throw RangeExceeded("max_bases_bound: lambda >= 1");
    return 0.5 * (d + 1.0) *
           (1.0 + std::sqrt(1.0 + 8.0 * lambda * (lambda - 1.0) /
                                      (static_cast<double>(d) * d - 1.0)));
}

/// Welch slack: sum_{ij} |<psi_i|psi_j>|^{2k} - M^2 / binom(d+k-1, k); >= 0
/// for every set of unit vectors.
inline double welch_check(const std::vector<Ket>& vectors, int k) {
    if (k != 1 && k != 2) throw RangeExceeded("welch_check: k in {1, 2}");
    if (vectors.empty()) throw DimensionMismatch("welch_check: empty vector set");
    const auto d = vectors.front().size();
    double sum = 0.0;
    for (const auto& a : vectors) {
        if (a.size() != d) throw DimensionMismatch("welch_check: mixed dimensions");
        for (const auto& b : vectors) {
            const double o = std::norm(a.dot(b));
            sum += (k == 1) ? o : o * o;
        }
    }
    const double M = static_cast<double>(vectors.size());
    const double binom = (k == 1) ? d : d * (d + 1.0) / 2.0;
    return sum - M * M / binom;
}

/// Levy tail bound: min(1, 2 exp(-d eps^2 / (18 pi^3 ln 2))).
inline double levy_bound(int d, double eps) {
    if (eps <= 0.0) throw RangeExceeded("levy_bound: eps > 0");
    const double c = 18.0 * std::pow(std::numbers::pi, 3) * std::numbers::ln2;
    return std::min(1.0, 2.0 * std::exp(-d * eps * eps / c));
}

struct ConcentrationResult {
    double empirical_rate = 0.0;  // fraction of overlaps with ||.|^2 - 1/d| > eps
    double bound = 1.0;           // levy_bound(d, eps)
    double mean_overlap = 0.0;
    double mean_std_error = 0.0;
    std::size_t samples = 0;
};

/// Samples `trials` pairs of Haar bases (d^2 overlaps each) and compares the
/// deviation rate against the Levy bound.
inline ConcentrationResult concentration_experiment(int d, int trials, double eps,
                                                    std::uint64_t seed) {
    if (trials < 1 || static_cast<long long>(trials) * d * d < 1000)
        throw RangeExceeded("concentration_experiment: need at least 1e3 overlap samples");
    std::mt19937_64 rng(seed);
    ConcentrationResult res;
    res.bound = levy_bound(d, eps);
    double sum = 0.0, sum_sq = 0.0;
    std::size_t over = 0;
    for (int t = 0; t < trials; ++t) {
        const Basis u = bases::random_basis(d, rng);
        const Basis v = bases::random_basis(d, rng);
        const Eigen::MatrixXd w = (u.vectors.adjoint() * v.vectors).cwiseAbs2();
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const double x = w(a, b);
                sum += x;
                sum_sq += x * x;
                if (std::abs(x - 1.0 / d) > eps) ++over;
            }
    }
    res.samples = static_cast<std::size_t>(trials) * d * d;
    res.mean_overlap = sum / res.samples;
    const double var = sum_sq / res.samples - res.mean_overlap * res.mean_overlap;
    res.mean_std_error = std::sqrt(std::max(var, 0.0) / res.samples);
    res.empirical_rate = static_cast<double>(over) / res.samples;
    return res;
}

/// Maximum of sum_{i=1}^{d^2} x_i^4 subject to the d row constraints
/// sum x_i^2 = 1 and sqrt(c_min) <= x_i <= sqrt(c_max):
/// d [L c_max^2 + (d-L-1) c_min^2 + (1 - L c_max - (d-L-1) c_min)^2].
inline double prop3_closed_form(int d, double c_min, double c_max) {
    if (d < 2) throw DimensionMismatch("prop3_closed_form: d >= 2");
    if (c_min < -1e-12 || c_max > 1.0 + 1e-12 || c_max < c_min - 1e-12)
        throw InvalidOverlapSummary("prop3_closed_form: need 0 <= c_min <= c_max <= 1");
    if (c_max * d < 1.0 - 1e-12 || c_min * d > 1.0 + 1e-12)
        throw Infeasible("prop3_closed_form: box cannot satisfy the row constraint");
    return d * witness::loose_pair_terms(c_max, c_min, d).omega;
}

/// Independent oracle for prop3_closed_form: recursive grid search over one
/// row's feasible slice with two local refinement passes.
inline double prop3_brute_oracle(int d, double c_min, double c_max, double grid_step) {
    if (d < 2 || d > 4) throw DimensionMismatch("prop3_brute_oracle: 2 <= d <= 4");
    if (grid_step > 1e-2 || grid_step <= 0.0)
        throw RangeExceeded("prop3_brute_oracle: grid_step <= 1e-2");
    if (c_max * d < 1.0 - 1e-12 || c_min * d > 1.0 + 1e-12)
        throw Infeasible("prop3_brute_oracle: box cannot satisfy the row constraint");
    c_min = std::max(0.0, c_min);
    c_max = std::min(1.0, c_max);

    // y_i = x_i^2: maximize sum y_i^2 over the simplex slice sum y_i = 1,
    // c_min <= y_i <= c_max. y_1..y_{d-1} are swept; y_d closes the constraint.
    // Both window endpoints always belong to the grid: the maximizer pins
    // coordinates to the box walls.
    std::vector<double> y(d, c_min), best_y(d, c_min);
    double best = -1.0;
    const double slack = 1e-9;

    auto evaluate = [&] {
        double rest = 1.0;
        for (int j = 0; j < d - 1; ++j) rest -= y[j];
        if (rest < c_min - slack || rest > c_max + slack) return;
        y[d - 1] = std::clamp(rest, c_min, c_max);
        double val = 0.0;
        for (int j = 0; j < d; ++j) val += y[j] * y[j];
        if (val > best) {
            best = val;
            best_y = y;
        }
    };

    auto sweep = [&](auto&& self, int i, const std::vector<std::pair<double, double>>& windows,
                     double step) -> void {
        if (i == d - 1) {
            evaluate();
            return;
        }
        const auto [lo, hi] = windows[i];
        for (double v = lo; v < hi; v += step) {
            y[i] = v;
            self(self, i + 1, windows, step);
        }
        y[i] = hi;
        self(self, i + 1, windows, step);
    };

    std::vector<std::pair<double, double>> box(d - 1, {c_min, c_max});
    sweep(sweep, 0, box, grid_step);
    if (best < 0.0) throw Infeasible("prop3_brute_oracle: no feasible grid point");

    double step = grid_step;
    for (int pass = 0; pass < 2; ++pass) {
        const std::vector<double> centre = best_y;
        const double fine = step / 10.0;
        std::vector<std::pair<double, double>> windows(d - 1);
        for (int j = 0; j < d - 1; ++j)
            windows[j] = {std::max(c_min, centre[j] - step), std::min(c_max, centre[j] + step)};
        sweep(sweep, 0, windows, fine);
        step = fine;
    }
    return d * best;
}

/// Noise threshold of a generic benchmark family rho(p) = (1-p) rho0 + p/d^2:
/// S(p) is affine, so the crossing with B_k solves in closed form.
inline double noise_threshold(const DensityMatrix& rho0, const BasisSet& bs, int k,
                              witness::BoundMode mode) {
    if (k < 1 || k > bs.dim() - 1) throw RangeExceeded("noise_threshold: 1 <= k <= d-1");
    const double s0 = witness::witness_value(rho0, bs);
    const double s1 = static_cast<double>(bs.count()) / bs.dim();  // fully mixed value
    const OverlapTable t = overlap_table(bs);
    const double bk = (mode == witness::BoundMode::Tight)
                          ? witness::tight_bounds(t).B_k[k - 1]
                          : witness::loose_bounds(t).Bbar_k[k - 1];
    if (s0 <= s1 + 1e-15) return 0.0;
    return std::clamp((s0 - bk) / (s0 - s1), 0.0, 1.0);
}

}  // namespace entcert::analysis
