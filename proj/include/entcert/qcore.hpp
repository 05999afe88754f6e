#pragma once

// Complex linear algebra primitives shared by every other module: validated
// measurement bases, basis sets with a relative frame, overlap tables, and
// bipartite density matrices. Bipartite indices follow |i>_A (x) |j>_B -> i*d+j.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "entcert/errors.hpp"

namespace entcert {

using cplx = std::complex<double>;
using Ket = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Orthonormality/unitarity is enforced at 1e-10 for internally constructed
// objects and 1e-8 for user-supplied data. Noisy input bases are rejected,
// not re-orthonormalized: the witness bounds assume exact orthonormality.
inline constexpr double kConstructTol = 1e-10;
inline constexpr double kAcceptTol = 1e-8;

inline bool is_unitary(const Matrix& U, double tol) {
    if (U.rows() != U.cols() || U.rows() == 0) return false;
    Matrix G = U.adjoint() * U;
    G.diagonal().array() -= 1.0;
    return G.cwiseAbs().maxCoeff() <= tol;
}

inline Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

inline Ket kron(const Ket& a, const Ket& b) {
    Ket out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// An ordered orthonormal basis of C^d; column a of `vectors` is |e_a>.
struct Basis {
    Eigen::MatrixXcd vectors;
    std::string label;

    Basis(Eigen::MatrixXcd vecs, std::string name, double tol = kConstructTol)
        : vectors(std::move(vecs)), label(std::move(name)) {
        if (vectors.rows() < 2 || vectors.rows() != vectors.cols())
            throw DimensionMismatch("Basis: need d >= 2 column vectors of length d");
        Matrix G = vectors.adjoint() * vectors;
        G.diagonal().array() -= 1.0;
        if (G.cwiseAbs().maxCoeff() > tol)
            throw NotOrthonormal("Basis '" + label + "': Gram matrix deviates from identity");
    }

    int dim() const { return static_cast<int>(vectors.rows()); }
    Ket vector(int a) const { return vectors.col(a); }
};

/// Validates user-supplied vectors at the 1e-8 acceptance tolerance. Vector
/// norms within 1e-8 of 1 are normalized; anything worse is rejected.
inline Basis make_basis(const std::vector<Ket>& vecs, const std::string& label) {
    if (vecs.size() < 2) throw DimensionMismatch("make_basis: need d >= 2 vectors");
    const auto d = static_cast<Eigen::Index>(vecs.size());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        if (vecs[a].size() != d)
            throw DimensionMismatch("make_basis: vector length must equal the basis size");
        const double n = vecs[a].norm();
        if (std::abs(n - 1.0) > kAcceptTol)
            throw NotOrthonormal("make_basis: vector " + std::to_string(a) + " is not unit norm");
        // rescale only when the norm genuinely deviates, so loading a valid
        // file reproduces it bit for bit
        m.col(a) = std::abs(n - 1.0) > 1e-12 ? Ket(vecs[a] / n) : vecs[a];
    }
    return Basis(std::move(m), label, kAcceptTol);
}

/// m >= 2 bases of a common dimension plus the relative frame U in which
/// party B's conjugated vectors are expressed (identity unless specified).
struct BasisSet {
    std::vector<Basis> bases;
    Eigen::MatrixXcd frame;

    explicit BasisSet(std::vector<Basis> bs, Eigen::MatrixXcd U = Eigen::MatrixXcd())
        : bases(std::move(bs)) {
        if (bases.size() < 2) throw DimensionMismatch("BasisSet: need m >= 2 bases");
        const int d = bases.front().dim();
        for (const auto& b : bases)
            if (b.dim() != d) throw DimensionMismatch("BasisSet: bases of unequal dimension");
        if (U.size() == 0) U = Eigen::MatrixXcd::Identity(d, d);
        if (U.rows() != d || U.cols() != d || !is_unitary(U, kConstructTol))
            throw NotUnitary("BasisSet: frame must be a d x d unitary");
        frame = std::move(U);
    }

    int dim() const { return bases.front().dim(); }
    int count() const { return static_cast<int>(bases.size()); }
};

struct PairStats {
    double c_max = 0.0;
    double c_min = 0.0;
    double quartic_sum = 0.0;  // sum_{a,a'} |<e^z_a|e^z'_a'>|^4
};

/// All squared cross overlaps |<e^z_a|e^z'_a'>|^2 of a basis set, with the
/// per-pair (c_max, c_min) summary cached. Symmetric under (z,a) <-> (z',a').
struct OverlapTable {
    int dim = 0;
    int m = 0;
    std::vector<Eigen::MatrixXd> cross;  // unordered pairs z < z', row a, col a'
    std::vector<PairStats> stats;

    int pair_index(int z, int zp) const {
        if (z > zp) std::swap(z, zp);
        return z * m - z * (z + 1) / 2 + (zp - z - 1);
    }
    double overlap(int z, int zp, int a, int ap) const {
        if (z == zp) return a == ap ? 1.0 : 0.0;
        return z < zp ? cross[pair_index(z, zp)](a, ap) : cross[pair_index(z, zp)](ap, a);
    }
    const PairStats& pair(int z, int zp) const { return stats[pair_index(z, zp)]; }
};

inline OverlapTable overlap_table(const BasisSet& bs) {
    OverlapTable t;
    t.dim = bs.dim();
    t.m = bs.count();
    for (int z = 0; z < t.m; ++z) {
        for (int zp = z + 1; zp < t.m; ++zp) {
            Eigen::MatrixXd w =
                (bs.bases[z].vectors.adjoint() * bs.bases[zp].vectors).cwiseAbs2();
            PairStats s;
            s.c_max = w.maxCoeff();
            s.c_min = w.minCoeff();
            s.quartic_sum = w.cwiseAbs2().sum();
            const double excess = s.c_min - 1.0 / t.dim;
            if (excess > 1e-12)
                throw NumericalInconsistency("overlap_table: c_min exceeds 1/d");
            for (int a = 0; a < t.dim; ++a) {
                if (std::abs(w.row(a).sum() - 1.0) > 1e-9 ||
                    std::abs(w.col(a).sum() - 1.0) > 1e-9)
                    throw NumericalInconsistency("overlap_table: row normalization broken");
            }
            t.cross.push_back(std::move(w));
            t.stats.push_back(s);
        }
    }
    return t;
}

/// Party B's measurement basis: U applied to the entrywise conjugate of each
/// vector, conjugation taken in the computational basis.
inline Basis frame_conjugate(const Basis& b, const Matrix& U) {
    if (U.rows() != b.dim() || U.cols() != b.dim() || !is_unitary(U, kConstructTol))
        throw NotUnitary("frame_conjugate: U must be a d x d unitary");
    return Basis(U * b.vectors.conjugate(), b.label);
}

/// |Phi~+> = (1 (x) U) (1/sqrt(d)) sum_i |ii>.
inline Ket max_entangled(int d, const Matrix& U) {
    if (d < 2) throw DimensionMismatch("max_entangled: d >= 2");
    if (U.rows() != d || U.cols() != d || !is_unitary(U, kConstructTol))
        throw NotUnitary("max_entangled: U must be a d x d unitary");
    Ket v = Ket::Zero(static_cast<Eigen::Index>(d) * d);
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) v(i * d + j) = w * U(j, i);
    return v;
}

inline Ket max_entangled(int d) { return max_entangled(d, Matrix::Identity(d, d)); }

/// || (A (x) 1)|Phi+> - (1 (x) A^T)|Phi+> ||_inf; zero for every A.
inline double bell_symmetry_check(const Matrix& A, int d) {
    if (A.rows() != d || A.cols() != d)
        throw DimensionMismatch("bell_symmetry_check: A must be d x d");
    const Ket phi = max_entangled(d);
    const Matrix id = Matrix::Identity(d, d);
    Ket lhs = kron(A, id) * phi;
    Ket rhs = kron(id, Matrix(A.transpose())) * phi;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

/// All eigenvalues of |psi><phi| + |phi><psi| lie in +-(|<psi|phi>| + 1).
inline bool rank_one_sum_eig_bound_check(const Ket& psi, const Ket& phi) {
    if (psi.size() != phi.size())
        throw DimensionMismatch("rank_one_sum_eig_bound_check: kets of unequal dimension");
    if (std::abs(psi.norm() - 1.0) > kAcceptTol || std::abs(phi.norm() - 1.0) > kAcceptTol)
        throw NotOrthonormal("rank_one_sum_eig_bound_check: kets must be unit norm");
    Matrix M = psi * phi.adjoint() + phi * psi.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    const double bound = std::abs(psi.dot(phi)) + 1.0;
    return es.eigenvalues().cwiseAbs().maxCoeff() <= bound + 1e-10;
}

/// A d^2 x d^2 Hermitian, PSD, unit-trace matrix with declared local dimension.
struct DensityMatrix {
    int local_dim;
    Eigen::MatrixXcd mat;

    DensityMatrix(int d, Eigen::MatrixXcd m) : local_dim(d), mat(std::move(m)) {
        const auto n = static_cast<Eigen::Index>(d) * d;
        if (d < 2 || mat.rows() != n || mat.cols() != n)
            throw DimensionMismatch("DensityMatrix: matrix must be d^2 x d^2");
        if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > kConstructTol)
            throw NumericalInconsistency("DensityMatrix: not Hermitian");
        if (std::abs(mat.trace().real() - 1.0) > kConstructTol ||
            std::abs(mat.trace().imag()) > kConstructTol)
            throw NumericalInconsistency("DensityMatrix: trace must be 1");
        Eigen::SelfAdjointEigenSolver<Matrix> es(mat, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-9)
            throw NumericalInconsistency("DensityMatrix: negative eigenvalue");
    }
};

enum class Party { A, B };

/// Partial trace over the complementary party; Hermitian with trace 1.
inline Matrix reduced_state(const DensityMatrix& rho, Party party) {
    const int d = rho.local_dim;
    Matrix r = Matrix::Zero(d, d);
    if (party == Party::A) {
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                for (int j = 0; j < d; ++j) r(i, k) += rho.mat(i * d + j, k * d + j);
    } else {
        for (int j = 0; j < d; ++j)
            for (int l = 0; l < d; ++l)
                for (int i = 0; i < d; ++i) r(j, l) += rho.mat(i * d + j, i * d + l);
    }
    return r;
}

inline Matrix partial_transpose_b(const DensityMatrix& rho) {
    const int d = rho.local_dim;
    Matrix pt(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    pt(i * d + j, k * d + l) = rho.mat(i * d + l, k * d + j);
    return pt;
}

/// Sum of |negative eigenvalues| of the partial transpose over B.
inline double negativity(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(partial_transpose_b(rho), Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) < 0.0) neg -= es.eigenvalues()(i);
    return neg;
}

/// Joint outcome counts n_z(a,b) for each measured basis pair.
struct MeasuredCounts {
    int dim;
    std::vector<std::string> basis_labels;
    std::vector<Eigen::MatrixXd> counts;

    MeasuredCounts(int d, std::vector<std::string> labels, std::vector<Eigen::MatrixXd> tables)
        : dim(d), basis_labels(std::move(labels)), counts(std::move(tables)) {
        if (dim < 2) throw DimensionMismatch("MeasuredCounts: d >= 2");
        if (basis_labels.empty() || basis_labels.size() != counts.size())
            throw SchemaViolation("MeasuredCounts: one table per basis label required");
        for (std::size_t i = 0; i < basis_labels.size(); ++i)
            for (std::size_t j = i + 1; j < basis_labels.size(); ++j)
                if (basis_labels[i] == basis_labels[j])
                    throw SchemaViolation("MeasuredCounts: duplicate basis label '" +
                                          basis_labels[i] + "'");
        for (const auto& c : counts) {
            if (c.rows() != dim || c.cols() != dim)
                throw SchemaViolation("MeasuredCounts: tables must be d x d");
            if (c.minCoeff() < 0.0) throw NegativeCount("MeasuredCounts: negative count");
            if (c.sum() <= 0.0) throw EmptyCounts("MeasuredCounts: basis with zero total counts");
        }
    }
};

}  // namespace entcert
