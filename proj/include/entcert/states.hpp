#pragma once

// Benchmark state families with closed-form reference quantities: isotropic
// states (Bell state + white noise) and purified thermal states + white
// noise, together with their exact Schmidt numbers, witness values, and
// entanglement fidelities.

#include <cmath>

#include "entcert/qcore.hpp"

namespace entcert::states {

// tanh-ratio branch point: below this beta the analytic beta -> 0 limit is used.
inline constexpr double kBetaBranch = 1e-12;

/// rho_iso = (1-p)|Phi+><Phi+| + (p/d^2) 1.
inline DensityMatrix isotropic(int d, double p) {
    if (d < 2) throw DimensionMismatch("isotropic: d >= 2");
    if (p < 0.0 || p > 1.0) throw RangeExceeded("isotropic: p in [0,1]");
    const Ket phi = max_entangled(d);
    Matrix m = (1.0 - p) * (phi * phi.adjoint());
    m.diagonal().array() += p / (static_cast<double>(d) * d);
    return DensityMatrix(d, std::move(m));
}

/// |psi_th(beta)> = (1/sqrt(Z)) sum_n e^{-beta n / 2} |nn>, Z = sum_n e^{-beta n},
/// mixed with white noise: (1-p)|psi_th><psi_th| + (p/d^2) 1.
inline DensityMatrix purified_thermal(int d, double beta, double p) {
    if (d < 2) throw DimensionMismatch("purified_thermal: d >= 2");
    if (p < 0.0 || p > 1.0) throw RangeExceeded("purified_thermal: p in [0,1]");
    if (beta < 0.0) throw RangeExceeded("purified_thermal: beta >= 0");
    Ket psi = Ket::Zero(static_cast<Eigen::Index>(d) * d);
    double z = 0.0;
    for (int n = 0; n < d; ++n) z += std::exp(-beta * n);
    for (int n = 0; n < d; ++n) psi(n * d + n) = std::exp(-beta * n / 2.0) / std::sqrt(z);
    Matrix m = (1.0 - p) * (psi * psi.adjoint());
    m.diagonal().array() += p / (static_cast<double>(d) * d);
    return DensityMatrix(d, std::move(m));
}

/// Exact Schmidt number of the isotropic state: k+1 iff
/// d(d-k-1)/(d^2-1) <= p < d(d-k)/(d^2-1); 1 in the separable regime.
inline int schmidt_number_isotropic(int d, double p) {
    if (d < 2) throw DimensionMismatch("schmidt_number_isotropic: d >= 2");
    if (p < 0.0 || p > 1.0) throw RangeExceeded("schmidt_number_isotropic: p in [0,1]");
    const double den = static_cast<double>(d) * d - 1.0;
    for (int k = d - 1; k >= 1; --k)
        if (p >= d * (d - k - 1.0) / den && p < d * (d - k) / den) return k + 1;
    return 1;
}

/// S(rho_iso) with m mutually unbiased bases: p m/d + (1-p) m.
inline double witness_closed_isotropic(int d, double p, int m) {
    return p * m / d + (1.0 - p) * m;
}

/// F(rho_iso) = 1 - p + p/d^2.
inline double ent_fidelity_isotropic(int d, double p) {
    return 1.0 - p + p / (static_cast<double>(d) * d);
}

/// tau_d^(m)(beta): m at beta = 0, else 1 + (m-1) tanh(d beta/4)/(d tanh(beta/4)).
inline double tau_thermal(int d, double beta, int m) {
    if (beta < 0.0) throw RangeExceeded("tau_thermal: beta >= 0");
    if (beta < kBetaBranch) return static_cast<double>(m);
    return 1.0 + (m - 1) * std::tanh(d * beta / 4.0) / (d * std::tanh(beta / 4.0));
}

/// F(rho_th(p, beta)): 1 - p + p/d^2 at beta = 0, else
/// (1-p) tanh(d beta/4)/(d tanh(beta/4)) + p/d^2.
inline double ent_fidelity_thermal(int d, double beta, double p) {
    if (beta < 0.0) throw RangeExceeded("ent_fidelity_thermal: beta >= 0");
    if (beta < kBetaBranch) return ent_fidelity_isotropic(d, p);
    return (1.0 - p) * std::tanh(d * beta / 4.0) / (d * std::tanh(beta / 4.0)) +
           p / (static_cast<double>(d) * d);
}

}  // namespace entcert::states
