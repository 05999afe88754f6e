#pragma once

// The fidelity-based comparison witness: target Schmidt coefficients read off
// the measured diagonal, the tilted-bases fidelity lower bound F~(M) with its
// Dirichlet-kernel cross terms, the Schmidt bound B~_k, and white-noise
// thresholds for the isotropic and purified-thermal benchmark families.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "entcert/bases.hpp"
#include "entcert/qcore.hpp"

namespace entcert::baseline {

struct TargetCoefficients {
    Eigen::VectorXd lambda;         // descending, sum lambda^2 = 1
    std::vector<int> permutation;   // lambda(i) came from diagonal entry permutation[i]
};

/// lambda_i = sqrt(<ii|rho|ii> / sum_j <jj|rho|jj>), sorted descending.
inline TargetCoefficients target_coefficients(const DensityMatrix& rho) {
    const int d = rho.local_dim;
    Eigen::VectorXd diag(d);
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        diag(i) = std::max(0.0, rho.mat(i * d + i, i * d + i).real());
        total += diag(i);
    }
    if (total <= 0.0)
        throw ZeroDiagonal("target_coefficients: no matching-outcome probability mass");
    TargetCoefficients tc;
    tc.permutation.resize(d);
    std::iota(tc.permutation.begin(), tc.permutation.end(), 0);
    std::stable_sort(tc.permutation.begin(), tc.permutation.end(),
                     [&](int a, int b) { return diag(a) > diag(b); });
    tc.lambda.resize(d);
    for (int i = 0; i < d; ++i) tc.lambda(i) = std::sqrt(diag(tc.permutation[i]) / total);
    return tc;
}

/// |sum_{alpha=0}^{M-1} w^{alpha q}| = |sin(pi M q / d)| / |sin(pi q / d)|,
/// with the removable singularity at q = 0 mod d evaluated as the limit M.
inline double dirichlet_kernel_mag(int d, int M, long long q) {
    long long r = q % d;
    if (r < 0) r += d;
    if (r == 0) return static_cast<double>(M);
    const double x = std::numbers::pi * static_cast<double>(r) / d;
    return std::abs(std::sin(M * x)) / std::abs(std::sin(x));
}

namespace detail {

// Applies fn(m, mp, n, np, q) over the constrained index set of the Dirichlet
// sums: m != m', m != n, n != n', n' != m', (m - m' - n + n') mod d = 0.
template <typename F>
inline void for_constrained_tuples(int d, F&& fn) {
    for (int m = 0; m < d; ++m)
        for (int mp = 0; mp < d; ++mp) {
            if (mp == m) continue;
            for (int n = 0; n < d; ++n) {
                if (n == m) continue;
                for (int np = 0; np < d; ++np) {
                    if (np == n || np == mp) continue;
                    if ((m - mp - n + np) % d != 0) continue;
                    const long long q = static_cast<long long>(m) * m -
                                        static_cast<long long>(mp) * mp -
                                        static_cast<long long>(n) * n +
                                        static_cast<long long>(np) * np;
                    fn(m, mp, n, np, q);
                }
            }
        }
}

}  // namespace detail

/// D_d^(M): the unweighted constrained Dirichlet sum. Zero at M = d for every
/// odd prime d.
inline double dirichlet_sum_D(int d, int M) {
    if (d < 2 || M < 1 || M > d) throw RangeExceeded("dirichlet_sum_D: need d >= 2, 1 <= M <= d");
    double sum = 0.0;
    detail::for_constrained_tuples(
        d, [&](int, int, int, int, long long q) { sum += dirichlet_kernel_mag(d, M, q); });
    return sum;
}

/// D-bar_d^(M): the same sum weighted by sqrt(lambda_m lambda_n lambda_m' lambda_n').
inline double dirichlet_sum_D_weighted(int d, int M, const Eigen::VectorXd& lambda) {
    if (lambda.size() != d) throw DimensionMismatch("dirichlet_sum_D_weighted: lambda size");
    double sum = 0.0;
    detail::for_constrained_tuples(d, [&](int m, int mp, int n, int np, long long q) {
        sum += std::sqrt(lambda(m) * lambda(n) * lambda(mp) * lambda(np)) *
               dirichlet_kernel_mag(d, M, q);
    });
    return sum;
}

/// B~_k = sum_{i<k} lambda_i^2.
inline double baseline_Bk(const Eigen::VectorXd& lambda, int k) {
    if (k < 1 || k > lambda.size()) throw RangeExceeded("baseline_Bk: 1 <= k <= d");
    return lambda.head(k).squaredNorm();
}

struct BaselineReport {
    Eigen::VectorXd lambda;
    double F1 = 0.0;
    double F2_tilde = 0.0;
    double F_tilde = 0.0;
    std::vector<double> B_tilde_k;  // k = 1..d
    int certified_k_lower = 1;
    int M = 1;
};

/// Assembles F~(M) = F1 + F~2(M) from the state's matrix elements and the
/// tilted-bases projections, then certifies against B~_k.
inline BaselineReport baseline_fidelity_bound(const DensityMatrix& rho, int M) {
    const int d = rho.local_dim;
    if (d > 12) throw DimensionTooLarge("baseline_fidelity_bound: d <= 12");
    if (M < 1 || M > d) throw RangeExceeded("baseline_fidelity_bound: 1 <= M <= d");
    const TargetCoefficients tc = target_coefficients(rho);

    // Work in the relabeled computational basis that makes lambda descending.
    const auto& perm = tc.permutation;
    auto idx = [&](int i, int j) { return perm[i] * d + perm[j]; };
    auto diag_prob = [&](int i, int j) {
        return std::max(0.0, rho.mat(idx(i, j), idx(i, j)).real());
    };
    const Eigen::VectorXd& lam = tc.lambda;

    BaselineReport rep;
    rep.lambda = lam;
    rep.M = M;
    for (int n = 0; n < d; ++n) rep.F1 += lam(n) * lam(n) * diag_prob(n, n);

    // Sigma^(M): average matched-outcome correlation over the tilted families.
    const bases::TiltedBases tilted = bases::tilted_bases(lam, M);
    double sigma = 0.0;
    for (int alpha = 0; alpha < M; ++alpha) {
        const Matrix& fam = tilted.families[alpha];
        for (int j = 0; j < d; ++j) {
            Ket v(static_cast<Eigen::Index>(d) * d);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    v(idx(a, b)) = fam(a, j) * std::conj(fam(b, j));
            sigma += (v.dot(rho.mat * v)).real();
        }
    }
    sigma /= M;

    double lam_sum = lam.sum();
    double diag_term = 0.0;
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) diag_term += lam(m) * lam(n) * diag_prob(m, n);

    double cross_term = 0.0;
    detail::for_constrained_tuples(d, [&](int m, int mp, int n, int np, long long q) {
        const double gamma = std::sqrt(lam(m) * lam(n) * lam(mp) * lam(np)) *
                             dirichlet_kernel_mag(d, M, q) / M;
        cross_term += gamma * std::sqrt(diag_prob(mp, np) * diag_prob(m, n));
    });

    rep.F2_tilde = lam_sum * lam_sum / d * sigma - diag_term - cross_term;
    rep.F_tilde = rep.F1 + rep.F2_tilde;

    rep.B_tilde_k.resize(d);
    for (int k = 1; k <= d; ++k) rep.B_tilde_k[k - 1] = baseline_Bk(lam, k);
    for (int k = 1; k <= d - 1; ++k)
        if (rep.F_tilde > rep.B_tilde_k[k - 1]) rep.certified_k_lower = k + 1;
    return rep;
}

/// Isotropic white-noise threshold: p~ = d(d-k) / (d^2 - 1 + D_d^(M)/(M d)).
inline double p_tilde_iso(int d, int k, int M) {
    if (k < 1 || k > d - 1) throw RangeExceeded("p_tilde_iso: 1 <= k <= d-1");
    return d * (d - k) / (static_cast<double>(d) * d - 1.0 + dirichlet_sum_D(d, M) / (M * d));
}

/// Target coefficients of the noisy purified thermal state:
/// lambda_j = sqrt(((1-p) e^{-beta j}/Z + p/d^2) / (1 - p + p/d)).
inline Eigen::VectorXd thermal_lambda(int d, double beta, double p) {
    double z = 0.0;
    for (int n = 0; n < d; ++n) z += std::exp(-beta * n);
    Eigen::VectorXd lam(d);
    for (int j = 0; j < d; ++j)
        lam(j) = std::sqrt(((1.0 - p) * std::exp(-beta * j) / z + p / (static_cast<double>(d) * d)) /
                           (1.0 - p + p / d));
    return lam;
}

/// Closed-form F~(M) for the noisy purified thermal state (beta > 0):
/// (p/d^2)(1 - D-bar/M) + (1-p) kappa, kappa = (sum_n lambda_n e^{-beta n/2})^2 / Z.
inline double thermal_F_tilde_closed(int d, double beta, double p, int M) {
    const Eigen::VectorXd lam = thermal_lambda(d, beta, p);
    double z = 0.0, proj = 0.0;
    for (int n = 0; n < d; ++n) {
        z += std::exp(-beta * n);
        proj += lam(n) * std::exp(-beta * n / 2.0);
    }
    const double kappa = proj * proj / z;
    const double dbar = dirichlet_sum_D_weighted(d, M, lam);
    return p / (static_cast<double>(d) * d) * (1.0 - dbar / M) + (1.0 - p) * kappa;
}

/// Closed-form B~_k for the thermal target (beta > 0):
/// (1/(1-p+p/d)) [ (1-p)(1-e^{-k beta})/(1-e^{-d beta}) + p k/d^2 ].
inline double thermal_Bk_closed(int d, double beta, double p, int k) {
    const double geo = -std::expm1(-k * beta) / -std::expm1(-d * beta);
    return ((1.0 - p) * geo + p * k / (static_cast<double>(d) * d)) / (1.0 - p + p / d);
}

/// White-noise threshold of the thermal family: supremum of p with
/// F~(M)(p) > B~_k(p), located by a 64-point scan plus bisection to 1e-9.
inline double p_tilde_thermal(int d, int k, double beta, int M) {
    if (!numtheory::is_prime(d) || d % 2 == 0)
        throw NotOddPrime("p_tilde_thermal: d must be an odd prime");
    if (beta <= 0.0) throw RangeExceeded("p_tilde_thermal: beta > 0");
    if (k < 1 || k > d - 1) throw RangeExceeded("p_tilde_thermal: 1 <= k <= d-1");
    auto g = [&](double p) {
        return thermal_F_tilde_closed(d, beta, p, M) - thermal_Bk_closed(d, beta, p, k);
    };
    constexpr int kCoarse = 64;
    int last_positive = -1;
    for (int i = 0; i <= kCoarse; ++i)
        if (g(static_cast<double>(i) / kCoarse) > 0.0) last_positive = i;
    if (last_positive < 0) {
        if (g(0.0) < 0.0)
            throw NonBracketed("p_tilde_thermal: no violation at p = 0");
        return 0.0;
    }
    if (last_positive == kCoarse) return 1.0;
    double lo = static_cast<double>(last_positive) / kCoarse;
    double hi = static_cast<double>(last_positive + 1) / kCoarse;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace entcert::baseline
