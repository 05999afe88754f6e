#pragma once

// The Schmidt-number witness: the matching-outcome correlation sum S, its
// tight per-Schmidt-number upper bounds B_k built from the full overlap set,
// the loosened bounds built from per-pair (c_max, c_min) summaries only, the
// entanglement-fidelity lower bound, and certification with exhaustive
// subset search over the available bases.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "entcert/qcore.hpp"

namespace entcert::witness {

enum class BoundMode { Tight, Loose };

/// S = sum_z sum_a <e^z_a, e~^z_a* | rho | e^z_a, e~^z_a*> with party B's
/// vectors e~^z_a* = U conj(e^z_a).
inline double witness_value(const DensityMatrix& rho, const BasisSet& bs) {
    if (rho.local_dim != bs.dim())
        throw DimensionMismatch("witness_value: state and bases dimensions differ");
    cplx s{0.0, 0.0};
    for (const auto& basis : bs.bases) {
        const Basis tilde = frame_conjugate(basis, bs.frame);
        for (int a = 0; a < bs.dim(); ++a) {
            const Ket v = kron(Ket(basis.vectors.col(a)), Ket(tilde.vectors.col(a)));
            s += v.dot(rho.mat * v);
        }
    }
    if (std::abs(s.imag()) > 1e-10)
        throw NumericalInconsistency("witness_value: imaginary residue exceeds 1e-10");
    return s.real();
}

struct EmpiricalWitness {
    double value = 0.0;
    double std_error = 0.0;
};

/// Finite-statistics estimate of S: per basis the diagonal count fraction,
/// with the binomial standard errors combined in quadrature.
inline EmpiricalWitness witness_value_empirical(const MeasuredCounts& counts) {
    if (counts.counts.empty()) throw EmptyCounts("witness_value_empirical: no count tables");
    EmpiricalWitness out;
    double var = 0.0;
    for (const auto& table : counts.counts) {
        const double total = table.sum();
        if (total <= 0.0) throw EmptyCounts("witness_value_empirical: basis without counts");
        const double p_match = table.trace() / total;
        out.value += p_match;
        var += p_match * (1.0 - p_match) / total;
    }
    out.std_error = std::sqrt(var);
    return out;
}

struct OrderedPairValue {
    int z = 0;
    int zp = 0;
    double value = 0.0;  // G^{z,z'} (tight) or Gbar^{z,z'} (loose)
};

struct TightBoundReport {
    std::vector<OrderedPairValue> pair_G;
    double lambda_C = 1.0;
    double T_C = 1.0;
    std::vector<double> B_k;  // B_k[k-1] for k = 1..d
};

inline std::vector<double> bound_vector(int d, int m, double T) {
    std::vector<double> b(d);
    for (int k = 1; k <= d; ++k) b[k - 1] = k * (m - T) / d + T;
    return b;
}

/// G^{z,z'} = 1 - (d+1) c_min^{z,z'} + (1/d) sum_{a,a'} |<e^z_a|e^z'_a'>|^4,
/// lambda(C) = (1 + sqrt(1 + 2d sum_{z != z'} G^{z,z'}))/2 over ordered pairs,
/// T(C) = min{lambda(C), m}, B_k = k (m - T)/d + T.
inline TightBoundReport tight_bounds(const OverlapTable& table) {
    if (table.m < 2) throw DimensionMismatch("tight_bounds: need m >= 2 bases");
    TightBoundReport rep;
    double sum_g = 0.0;
    for (int z = 0; z < table.m; ++z) {
        for (int zp = 0; zp < table.m; ++zp) {
            if (z == zp) continue;
            const PairStats& s = table.pair(z, zp);
            // G >= 0 follows from the row-sum argument; clip rounding residue.
            const double g = std::max(
                0.0, 1.0 - (table.dim + 1) * s.c_min + s.quartic_sum / table.dim);
            rep.pair_G.push_back({z, zp, g});
            sum_g += g;
        }
    }
    rep.lambda_C = 0.5 * (1.0 + std::sqrt(1.0 + 2.0 * table.dim * sum_g));
    rep.T_C = std::min(rep.lambda_C, static_cast<double>(table.m));
    rep.B_k = bound_vector(table.dim, table.m, rep.T_C);
    return rep;
}

struct PairSummary {
    int z = 0;
    int zp = 0;
    double c_max = 0.0;
    double c_min = 0.0;
};

/// Ordered-pair (c_max, c_min) summaries of an overlap table.
inline std::vector<PairSummary> pair_summaries(const OverlapTable& t) {
    std::vector<PairSummary> out;
    for (int z = 0; z < t.m; ++z)
        for (int zp = 0; zp < t.m; ++zp)
            if (z != zp) out.push_back({z, zp, t.pair(z, zp).c_max, t.pair(z, zp).c_min});
    return out;
}

struct LoosePairTerms {
    long long L = 0;
    double omega = 0.0;
    double g_bar = 0.0;
};

/// The per-pair pieces of the loosened bound. L counts overlap entries pinned
/// at c_max in the row that maximizes sum_a' |.|^4; overlaps closer than 1e-12
/// are treated as equal and the floor numerator is nudged by +1e-12 so that
/// exact-integer boundaries (MUB-like inputs) land on the analytic branch.
inline LoosePairTerms loose_pair_terms(double c_max, double c_min, int d) {
    if (c_min < -1e-12 || c_max > 1.0 + 1e-12 || c_max < c_min - 1e-12)
        throw InvalidOverlapSummary("loose_pair_terms: need 0 <= c_min <= c_max <= 1");
    if (c_min > 1.0 / d + 1e-12)
        throw InvalidOverlapSummary("loose_pair_terms: c_min > 1/d is infeasible");
    if (c_max < 1.0 / d - 1e-12)
        throw InvalidOverlapSummary("loose_pair_terms: c_max < 1/d breaks row sums");
    c_min = std::max(c_min, 0.0);
    c_max = std::min(c_max, 1.0);
    LoosePairTerms t;
    if (c_max - c_min < 1e-12) {
        t.L = d;
    } else {
        t.L = static_cast<long long>(std::floor((1.0 - c_min * d + 1e-12) / (c_max - c_min)));
        t.L = std::clamp(t.L, 0LL, static_cast<long long>(d));
    }
    const double rest = 1.0 - t.L * c_max - (d - t.L - 1) * c_min;
    t.omega = t.L * c_max * c_max + (d - t.L - 1) * c_min * c_min + rest * rest;
    t.g_bar = std::max(0.0, 1.0 - (d + 1) * c_min + t.omega);
    return t;
}

struct LoosePairReport {
    int z = 0;
    int zp = 0;
    long long L = 0;
    double omega = 0.0;
    double g_bar = 0.0;
};

struct LooseBoundReport {
    std::vector<LoosePairReport> pairs;
    double lambda_bar = 1.0;
    double T_bar = 1.0;
    std::vector<double> Bbar_k;
};

/// Lemma-level bounds from (c_max, c_min) summaries only. The summaries must
/// enumerate ordered pairs, exactly as the bound's sum does.
inline LooseBoundReport loose_bounds(const std::vector<PairSummary>& pairs, int d, int m) {
    if (d < 2 || m < 2) throw DimensionMismatch("loose_bounds: need d >= 2 and m >= 2");
    LooseBoundReport rep;
    double sum_g = 0.0;
    for (const auto& p : pairs) {
        const LoosePairTerms t = loose_pair_terms(p.c_max, p.c_min, d);
        rep.pairs.push_back({p.z, p.zp, t.L, t.omega, t.g_bar});
        sum_g += t.g_bar;
    }
    rep.lambda_bar = 0.5 * (1.0 + std::sqrt(1.0 + 2.0 * d * sum_g));
    rep.T_bar = std::min(rep.lambda_bar, static_cast<double>(m));
    rep.Bbar_k = bound_vector(d, m, rep.T_bar);
    return rep;
}

inline LooseBoundReport loose_bounds(const OverlapTable& t) {
    return loose_bounds(pair_summaries(t), t.dim, t.m);
}

/// max{0, (S - T)/(m - T)}; zero in the degenerate T = m case.
inline double fidelity_lower(double S, int m, double T) {
    if (m < 2) throw DimensionMismatch("fidelity_lower: m >= 2");
    if (T < 1.0 - 1e-9 || T > m + 1e-9)
        throw NumericalInconsistency("fidelity_lower: need 1 <= T <= m");
    if (m - T < 1e-12) return 0.0;
    return std::max(0.0, (S - T) / (m - T));
}

/// W = sum_z sum_a |e^z_a><e^z_a| (x) |e~^z_a*><e~^z_a*|.
inline Matrix witness_operator(const BasisSet& bs) {
    if (bs.dim() > 12) throw DimensionTooLarge("witness_operator: d <= 12");
    const int d = bs.dim();
    Matrix W = Matrix::Zero(d * d, d * d);
    for (const auto& basis : bs.bases) {
        const Basis tilde = frame_conjugate(basis, bs.frame);
        for (int a = 0; a < d; ++a) {
            const Ket v = kron(Ket(basis.vectors.col(a)), Ket(tilde.vectors.col(a)));
            W += v * v.adjoint();
        }
    }
    return W;
}

/// Largest eigenvalue of W - (m - T)|Phi~+><Phi~+| - T 1; <= 0 for every
/// valid basis set up to rounding.
inline double operator_inequality_check(const BasisSet& bs) {
    if (bs.dim() > 8) throw DimensionTooLarge("operator_inequality_check: d <= 8");
    const int d = bs.dim();
    const TightBoundReport rep = tight_bounds(overlap_table(bs));
    const Ket phi = max_entangled(d, bs.frame);
    Matrix M = witness_operator(bs) - (bs.count() - rep.T_C) * (phi * phi.adjoint());
    M.diagonal().array() -= rep.T_C;
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

struct WitnessReport {
    double S_value = 0.0;
    BoundMode bound_mode = BoundMode::Tight;
    double T_value = 1.0;
    std::vector<double> bounds;  // bound vector of the winning subset, k = 1..d
    int certified_k_lower = 1;   // 1 means "no entanglement certified"
    double fidelity_lower = 0.0;  // max over all subsets
    std::vector<int> subset;      // winning subset, indices into the basis set
};

namespace detail {

// Subset search shared by the state and counts entry points. s[z] is the
// per-basis correlation contribution; pair_g[(z,zp)] the per-ordered-pair G
// (tight) or Gbar (loose) value; only bases listed in `usable` participate.
inline WitnessReport certify_impl(const std::vector<double>& s,
                                  const std::vector<std::vector<double>>& pair_g,
                                  const std::vector<int>& usable, int d, BoundMode mode) {
    const int n = static_cast<int>(usable.size());
    if (n < 2) throw DimensionMismatch("certify: need at least two usable bases");
    if (n > 12) throw TooManyBases("certify: subset search capped at 12 bases");

    WitnessReport best;
    best.bound_mode = mode;
    bool have_best = false;
    double best_margin = 0.0;
    double best_fidelity = 0.0;

    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int msub = std::popcount(mask);
        if (msub < 2) continue;
        double S = 0.0;
        double sum_g = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            S += s[usable[i]];
            for (int j = 0; j < n; ++j)
                if (j != i && (mask >> j & 1)) sum_g += pair_g[usable[i]][usable[j]];
        }
        const double lambda = 0.5 * (1.0 + std::sqrt(1.0 + 2.0 * d * sum_g));
        const double T = std::min(lambda, static_cast<double>(msub));
        const std::vector<double> b = bound_vector(d, msub, T);
        int certified = 1;
        for (int k = 1; k <= d - 1; ++k)
            if (S > b[k - 1]) certified = k + 1;
        const double margin = S - b[std::max(certified - 2, 0)];
        const double fid = fidelity_lower(S, msub, T);
        best_fidelity = std::max(best_fidelity, fid);

        const bool better =
            !have_best || certified > best.certified_k_lower ||
            (certified == best.certified_k_lower &&
             (margin > best_margin + 1e-15 ||
              (std::abs(margin - best_margin) <= 1e-15 &&
               msub < static_cast<int>(best.subset.size()))));
        if (better) {
            have_best = true;
            best.S_value = S;
            best.T_value = T;
            best.bounds = b;
            best.certified_k_lower = certified;
            best_margin = margin;
            best.subset.clear();
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) best.subset.push_back(usable[i]);
        }
    }
    best.fidelity_lower = best_fidelity;
    return best;
}

inline std::vector<std::vector<double>> pair_value_matrix(const OverlapTable& t, BoundMode mode) {
    std::vector<std::vector<double>> g(t.m, std::vector<double>(t.m, 0.0));
    for (int z = 0; z < t.m; ++z) {
        for (int zp = z + 1; zp < t.m; ++zp) {
            double v;
            if (mode == BoundMode::Tight) {
                const PairStats& s = t.pair(z, zp);
                v = std::max(0.0, 1.0 - (t.dim + 1) * s.c_min + s.quartic_sum / t.dim);
            } else {
                v = loose_pair_terms(t.pair(z, zp).c_max, t.pair(z, zp).c_min, t.dim).g_bar;
            }
            g[z][zp] = g[zp][z] = v;
        }
    }
    return g;
}

}  // namespace detail

/// Exhaustive subset certification: every subset of >= 2 bases is scored, the
/// report carries the subset with the highest certified Schmidt number (ties:
/// larger violation margin, then fewer bases), and fidelity_lower is the best
/// value over all subsets.
inline WitnessReport certify(const DensityMatrix& rho, const BasisSet& bs, BoundMode mode) {
    const OverlapTable table = overlap_table(bs);
    std::vector<double> s(bs.count());
    for (int z = 0; z < bs.count(); ++z) {
        const Basis tilde = frame_conjugate(bs.bases[z], bs.frame);
        cplx acc{0.0, 0.0};
        for (int a = 0; a < bs.dim(); ++a) {
            const Ket v = kron(Ket(bs.bases[z].vectors.col(a)), Ket(tilde.vectors.col(a)));
            acc += v.dot(rho.mat * v);
        }
        if (std::abs(acc.imag()) > 1e-10)
            throw NumericalInconsistency("certify: imaginary residue exceeds 1e-10");
        s[z] = acc.real();
    }
    std::vector<int> usable(bs.count());
    for (int z = 0; z < bs.count(); ++z) usable[z] = z;
    return detail::certify_impl(s, detail::pair_value_matrix(table, mode), usable, bs.dim(),
                                mode);
}

/// Counts-based certification; count tables are matched to bases by label and
/// only measured bases enter the subset search.
inline WitnessReport certify(const MeasuredCounts& counts, const BasisSet& bs, BoundMode mode) {
    if (counts.dim != bs.dim())
        throw DimensionMismatch("certify: counts and bases dimensions differ");
    const OverlapTable table = overlap_table(bs);
    std::vector<double> s(bs.count(), 0.0);
    std::vector<int> usable;
    for (std::size_t i = 0; i < counts.basis_labels.size(); ++i) {
        int z = -1;
        for (int j = 0; j < bs.count(); ++j)
            if (bs.bases[j].label == counts.basis_labels[i]) z = j;
        if (z < 0)
            throw SchemaViolation("certify: counts label '" + counts.basis_labels[i] +
                                  "' has no matching basis");
        const double total = counts.counts[i].sum();
        s[z] = counts.counts[i].trace() / total;
        usable.push_back(z);
    }
    std::sort(usable.begin(), usable.end());
    return detail::certify_impl(s, detail::pair_value_matrix(table, mode), usable, bs.dim(),
                                mode);
}

}  // namespace entcert::witness
