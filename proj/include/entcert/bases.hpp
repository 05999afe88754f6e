#pragma once

// Constructors for every measurement-basis family used by the toolkit:
// computational/Fourier pairs, the quadratic-phase third basis that completes
// three MUBs in any dimension, the quadratic family for odd primes, AMUB
// sets, tilted (generally non-orthogonal) families, and Haar-random bases.
// Phases with rational turn counts are reduced exactly before exponentiation.

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "entcert/numtheory.hpp"
#include "entcert/qcore.hpp"

namespace entcert::bases {

using numtheory::unit_phase;

/// Free phase function f(j) of the three-MUBs construction, in turns.
/// An empty vector means f = 0.
using PhaseFunction = std::vector<double>;

inline cplx extra_phase(const PhaseFunction& f, int j) {
    if (f.empty()) return {1.0, 0.0};
    if (std::size_t(j) >= f.size() || !std::isfinite(f[j]))
        throw IndexOutOfRange("PhaseFunction: need a finite value per row");
    return std::polar(1.0, 2.0 * std::numbers::pi * f[j]);
}

inline Basis computational(int d) {
    if (d < 2) throw DimensionMismatch("computational: d >= 2");
    return Basis(Matrix::Identity(d, d), "computational");
}

/// |e^2_a> = (1/sqrt(d)) sum_j e^{i 2 pi (a j / d + f(j))} |j>.
inline Basis fourier(int d, const PhaseFunction& f = {}) {
    if (d < 2) throw DimensionMismatch("fourier: d >= 2");
    Matrix m(d, d);
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a)
        for (int j = 0; j < d; ++j)
            m(j, a) = w * unit_phase(static_cast<numtheory::i64>(a) * j, d) * extra_phase(f, j);
    return Basis(std::move(m), "fourier");
}

/// |e^3_a> = (1/sqrt(d)) sum_j e^{i 2 pi ((d-p_r) j^2/(2d) + a j/d + f(j))} |j>,
/// the third basis of the any-dimension three-MUBs construction. p_r must be
/// an odd prime power (or 1) coprime to d with d > p_r.
inline Basis quadratic_mub(int d, numtheory::i64 p_r, const PhaseFunction& f = {}) {
    numtheory::validate_quadratic_params(d, p_r);
    Matrix m(d, d);
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a)
        for (int j = 0; j < d; ++j) {
            const numtheory::i64 num = (d - p_r) * j * j + 2LL * a * j;
            m(j, a) = w * unit_phase(num, 2LL * d) * extra_phase(f, j);
        }
    return Basis(std::move(m), "quadratic");
}

/// {computational, fourier, quadratic}: three mutually unbiased bases for any
/// dimension d >= 2.
inline BasisSet three_mubs(int d, numtheory::i64 p_r = 1, const PhaseFunction& f = {}) {
    std::vector<Basis> bs;
    bs.push_back(computational(d));
    bs.push_back(fourier(d, f));
    bs.push_back(quadratic_mub(d, p_r, f));
    return BasisSet(std::move(bs));
}

/// |e^3_j> = sum_k w^{jk + k^2} / sqrt(d) |k>, w = e^{2 pi i / d}, odd prime d.
inline Basis ivonovic_quadratic(int d) {
    if (!numtheory::is_prime(d) || d % 2 == 0)
        throw NotOddPrime("ivonovic_quadratic: d must be an odd prime");
    Matrix m(d, d);
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            m(k, j) = w * unit_phase(static_cast<numtheory::i64>(j) * k + static_cast<numtheory::i64>(k) * k, d);
    return Basis(std::move(m), "ivonovic");
}

/// Z_alpha(theta) = sum_k e^{i delta_{alpha,k} theta} |k><k| applied to every
/// vector: a single-row phase drift.
inline Basis phase_drift(const Basis& b, int alpha, double theta) {
    if (alpha < 0 || alpha >= b.dim())
        throw IndexOutOfRange("phase_drift: alpha out of range");
    Matrix m = b.vectors;
    m.row(alpha) *= std::polar(1.0, theta);
    return Basis(std::move(m), b.label + "+drift");
}

/// Standard basis plus d quadratic-phase bases with amplitudes
/// exp[i 2 pi (z j^2 / p_eff + a j / d)]/sqrt(d), j = 1..d stored at row j-1.
/// Integer p_eff reproduces the published AMUB family; real p_eff covers the
/// modified-p experiment.
inline BasisSet amub_set(int d, double p_eff) {
    if (d < 2) throw DimensionMismatch("amub_set: d >= 2");
    if (!(p_eff > 0.0) || !std::isfinite(p_eff))
        throw BadModulusParameter("amub_set: p_eff must be positive");
    std::vector<Basis> bs;
    bs.push_back(computational(d));
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (int z = 1; z <= d; ++z) {
        Matrix m(d, d);
        for (int a = 0; a < d; ++a)
            for (int j = 1; j <= d; ++j) {
                const double quad = std::fmod(static_cast<double>(z) * j * j / p_eff, 1.0);
                m(j - 1, a) = w * std::polar(1.0, 2.0 * std::numbers::pi * quad) *
                              unit_phase(static_cast<numtheory::i64>(a) * j, d);
            }
        bs.push_back(Basis(std::move(m), "amub-" + std::to_string(z)));
    }
    return BasisSet(std::move(bs));
}

/// M tilted vector families |j~_alpha> = sum_n w^{jn + alpha n^2} sqrt(lambda_n)
/// |n> / sqrt(sum_i lambda_i). Unit vectors, but orthogonal only for uniform
/// lambda; `orthonormal` records that.
struct TiltedBases {
    int dim = 0;
    std::vector<Eigen::MatrixXcd> families;  // families[alpha].col(j) = |j~_alpha>
    bool orthonormal = false;
};

inline TiltedBases tilted_bases(const Eigen::VectorXd& lambda, int M) {
    const int d = static_cast<int>(lambda.size());
    if (d < 2) throw BadSchmidtVector("tilted_bases: need d >= 2 coefficients");
    if (M < 1 || M > d) throw BadSchmidtVector("tilted_bases: need 1 <= M <= d");
    for (int i = 0; i < d; ++i) {
        if (lambda(i) < 0.0) throw BadSchmidtVector("tilted_bases: negative coefficient");
        if (i + 1 < d && lambda(i) < lambda(i + 1) - 1e-12)
            throw BadSchmidtVector("tilted_bases: coefficients must be sorted descending");
    }
    if (std::abs(lambda.squaredNorm() - 1.0) > 1e-9)
        throw BadSchmidtVector("tilted_bases: coefficients must satisfy sum lambda^2 = 1");

    TiltedBases out;
    out.dim = d;
    out.orthonormal = (lambda.maxCoeff() - lambda.minCoeff()) <= 1e-12;
    const double norm = std::sqrt(lambda.sum());
    for (int alpha = 0; alpha < M; ++alpha) {
        Matrix m(d, d);
        for (int j = 0; j < d; ++j)
            for (int n = 0; n < d; ++n)
                m(n, j) = std::sqrt(lambda(n)) / norm *
                          unit_phase(static_cast<numtheory::i64>(j) * n +
                                         static_cast<numtheory::i64>(alpha) * n * n,
                                     d);
        out.families.push_back(std::move(m));
    }
    return out;
}

/// Haar-distributed orthonormal basis: orthonormalize a matrix of independent
/// standard complex Gaussians, with the column phases fixed so each QR pivot
/// is real positive. Deterministic for a given engine state.
inline Basis random_basis(int d, std::mt19937_64& rng, const std::string& label = "haar") {
    if (d < 2) throw DimensionMismatch("random_basis: d >= 2");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = cplx{gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const cplx rjj = r(j, j);
        if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
    }
    return Basis(std::move(q), label);
}

inline Basis random_basis(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_basis(d, rng, "haar-" + std::to_string(seed));
}

inline BasisSet random_basis_set(int d, int m, std::uint64_t seed,
                                 const Matrix& frame = Matrix()) {
    if (m < 2) throw DimensionMismatch("random_basis_set: m >= 2");
    std::mt19937_64 rng(seed);
    std::vector<Basis> bs;
    for (int z = 0; z < m; ++z) bs.push_back(random_basis(d, rng, "haar-" + std::to_string(z)));
    return BasisSet(std::move(bs), frame);
}

/// Haar-random unitary, same sampler as random_basis.
inline Matrix random_unitary(int d, std::mt19937_64& rng) {
    return random_basis(d, rng).vectors;
}

/// Computational basis plus the quadratic families w^{an + alpha n^2} for
/// alpha = 0..m-2: up to d+1 pairwise unbiased bases for odd prime d. The
/// alpha = 0 member is the Fourier basis and alpha = 1 the quadratic family
/// of ivonovic_quadratic.
inline BasisSet prime_mubs(int d, int m) {
    if (!numtheory::is_prime(d) || d % 2 == 0)
        throw NotOddPrime("prime_mubs: d must be an odd prime");
    if (m < 2 || m > d + 1) throw RangeExceeded("prime_mubs: need 2 <= m <= d+1");
    std::vector<Basis> bs;
    bs.push_back(computational(d));
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (int alpha = 0; alpha + 2 <= m; ++alpha) {
        Matrix mat(d, d);
        for (int a = 0; a < d; ++a)
            for (int n = 0; n < d; ++n)
                mat(n, a) = w * unit_phase(static_cast<numtheory::i64>(a) * n +
                                               static_cast<numtheory::i64>(alpha) * n * n,
                                           d);
        bs.push_back(Basis(std::move(mat), "mub-" + std::to_string(alpha)));
    }
    return BasisSet(std::move(bs));
}

}  // namespace entcert::bases
