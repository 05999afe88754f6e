#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "entcert/analysis.hpp"
#include "entcert/bases.hpp"
#include "entcert/qcore.hpp"

using namespace entcert;
using bases::PhaseFunction;

namespace {

// largest deviation of the cross overlaps of (b1, b2) from 1/d
double unbiasedness_defect(const Basis& b1, const Basis& b2) {
    const Eigen::MatrixXd w = (b1.vectors.adjoint() * b2.vectors).cwiseAbs2();
    return (w.array() - 1.0 / b1.dim()).abs().maxCoeff();
}

PhaseFunction random_phase(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PhaseFunction f(d);
    for (double& x : f) x = u(rng);
    return f;
}

}  // namespace

TEST_CASE("computational basis", "[bases]") {
    const Basis c2 = bases::computational(2);
    CHECK((c2.vectors - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    const Basis c5 = bases::computational(5);
    for (int a = 0; a < 5; ++a)
        for (int j = 0; j < 5; ++j)
            REQUIRE(std::abs(c5.vectors(j, a) - (a == j ? 1.0 : 0.0)) == 0.0);
    CHECK_THROWS_AS(bases::computational(1), DimensionMismatch);
}

TEST_CASE("fourier basis", "[bases]") {
    const Basis f2 = bases::fourier(2);
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    CHECK((f2.vectors - h).cwiseAbs().maxCoeff() < 1e-15);

    for (int d : {2, 3, 7, 12})
        REQUIRE(unbiasedness_defect(bases::computational(d), bases::fourier(d)) < 1e-12);

    std::mt19937_64 rng(2);
    const PhaseFunction f = random_phase(3, rng);
    const Basis f3 = bases::fourier(3, f);
    REQUIRE(unbiasedness_defect(bases::computational(3), f3) < 1e-12);
}

TEST_CASE("quadratic third basis", "[bases]") {
    CHECK(unbiasedness_defect(bases::fourier(6), bases::quadratic_mub(6, 1)) < 1e-9);

    const BasisSet t43(std::vector<Basis>{bases::computational(4), bases::fourier(4),
                                          bases::quadratic_mub(4, 3)});
    const OverlapTable t = overlap_table(t43);
    for (int z = 0; z < 3; ++z)
        for (int zp = z + 1; zp < 3; ++zp)
            REQUIRE(std::abs(t.pair(z, zp).c_max - 0.25) < 1e-9);

    CHECK_THROWS_AS(bases::quadratic_mub(9, 3), BadModulusParameter);
    CHECK_THROWS_AS(bases::quadratic_mub(6, 4), BadModulusParameter);
    CHECK_THROWS_AS(bases::quadratic_mub(3, 5), BadModulusParameter);
}

TEST_CASE("three MUBs in every dimension", "[bases]") {
    std::mt19937_64 rng(41);
    for (int d = 2; d <= 30; ++d) {
        for (numtheory::i64 p_r : {1, 3, 5, 7, 9}) {
            if (p_r >= d || std::gcd<numtheory::i64>(d, p_r) != 1) continue;
            if (!numtheory::is_odd_prime_power_or_one(p_r)) continue;
            for (int rep = 0; rep < 5; ++rep) {
                const PhaseFunction f = rep == 0 ? PhaseFunction{} : random_phase(d, rng);
                const BasisSet mubs = bases::three_mubs(d, p_r, f);
                for (int z = 0; z < 3; ++z)
                    for (int zp = z + 1; zp < 3; ++zp)
                        REQUIRE(unbiasedness_defect(mubs.bases[z], mubs.bases[zp]) < 1e-9);
            }
        }
    }
}

TEST_CASE("lemma-2 overlaps are independent of the free phase", "[bases]") {
    std::mt19937_64 rng(43);
    for (int d : {3, 6, 10}) {
        const BasisSet plain = bases::three_mubs(d, d == 10 ? 3 : 1);
        const BasisSet phased = bases::three_mubs(d, d == 10 ? 3 : 1, random_phase(d, rng));
        for (int z = 0; z < 3; ++z)
            for (int zp = z + 1; zp < 3; ++zp) {
                const Eigen::MatrixXd a =
                    (plain.bases[z].vectors.adjoint() * plain.bases[zp].vectors).cwiseAbs();
                const Eigen::MatrixXd b =
                    (phased.bases[z].vectors.adjoint() * phased.bases[zp].vectors).cwiseAbs();
                REQUIRE((a - b).cwiseAbs().maxCoeff() <= 1e-10);
            }
    }
}

TEST_CASE("quadratic family for odd primes", "[bases]") {
    const Basis q3 = bases::ivonovic_quadratic(3);
    CHECK(unbiasedness_defect(bases::computational(3), q3) < 1e-12);
    CHECK(unbiasedness_defect(bases::fourier(3), q3) < 1e-12);

    const Basis q5 = bases::ivonovic_quadratic(5);
    const Eigen::MatrixXd w = (bases::fourier(5).vectors.adjoint() * q5.vectors).cwiseAbs2();
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) REQUIRE(w(a, b) == Catch::Approx(0.2).margin(1e-12));

    CHECK_THROWS_AS(bases::ivonovic_quadratic(4), NotOddPrime);
    CHECK_THROWS_AS(bases::ivonovic_quadratic(9), NotOddPrime);
}

TEST_CASE("phase drift", "[bases]") {
    const Basis q5 = bases::ivonovic_quadratic(5);
    CHECK((bases::phase_drift(q5, 2, 0.0).vectors - q5.vectors).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(bases::phase_drift(q5, 5, 0.1), IndexOutOfRange);

    // theta = pi, alpha = 0: overlaps with the Fourier basis stay inside the
    // analytic envelope (sqrt(d) +- 2|sin(theta/2)|)^2/d^2 and reach its floor
    const Basis drifted = bases::phase_drift(q5, 0, std::numbers::pi);
    const Eigen::MatrixXd w = (bases::fourier(5).vectors.adjoint() * drifted.vectors).cwiseAbs2();
    const auto env = analysis::phase_drift_overlap_bounds(5, std::numbers::pi);
    CHECK(env.c_minus == Catch::Approx(std::pow(std::sqrt(5.0) - 2.0, 2) / 25.0));
    CHECK(env.c_plus == Catch::Approx(std::pow(std::sqrt(5.0) + 2.0, 2) / 25.0));
    CHECK(w.minCoeff() >= env.c_minus - 1e-9);
    CHECK(w.maxCoeff() <= env.c_plus + 1e-9);
    CHECK(w.minCoeff() == Catch::Approx(env.c_minus).margin(1e-9));

    // |sin(theta/2)| symmetry: theta and 2pi - theta give the same multiset of
    // overlap moduli with the Fourier basis
    for (double theta : {0.3, 1.1}) {
        auto moduli = [&](double th) {
            const Eigen::MatrixXd m =
                (bases::fourier(5).vectors.adjoint() * bases::phase_drift(q5, 0, th).vectors)
                    .cwiseAbs();
            std::vector<double> v(m.data(), m.data() + m.size());
            std::sort(v.begin(), v.end());
            return v;
        };
        const auto a = moduli(theta), b = moduli(2.0 * std::numbers::pi - theta);
        for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == Catch::Approx(b[i]).margin(1e-12));
    }
}

TEST_CASE("AMUB family", "[bases]") {
    const BasisSet amubs = bases::amub_set(6, 7.0);
    REQUIRE(amubs.count() == 7);
    for (int z = 1; z <= 6; ++z)
        REQUIRE(unbiasedness_defect(amubs.bases[0], amubs.bases[z]) < 1e-12);

    // published overlap cap, p the smallest prime >= d
    const double gamma = 0.57721566490153286;
    for (int d : {6, 10}) {
        const double p = static_cast<double>(numtheory::smallest_prime_geq(d));
        const BasisSet set = bases::amub_set(d, p);
        const double cap = 4.0 * p / (std::numbers::pi * d * d) *
                               (std::log(p) + gamma - std::log(std::numbers::pi / 2.0) +
                                (std::numbers::pi - 1.0) / (2.0 * p)) +
                           1.0 / d;
        const OverlapTable t = overlap_table(set);
        for (int z = 1; z <= d; ++z)
            for (int zp = z + 1; zp <= d; ++zp) REQUIRE(t.pair(z, zp).c_max < cap);
    }

    // the modified-p experiment: with p_eff = 7.2 some 3-subset is unbiased
    const BasisSet mod = bases::amub_set(6, 7.2);
    bool found = false;
    for (int a = 0; a < 7 && !found; ++a)
        for (int b = a + 1; b < 7 && !found; ++b)
            for (int c = b + 1; c < 7 && !found; ++c)
                found = unbiasedness_defect(mod.bases[a], mod.bases[b]) < 1e-9 &&
                        unbiasedness_defect(mod.bases[a], mod.bases[c]) < 1e-9 &&
                        unbiasedness_defect(mod.bases[b], mod.bases[c]) < 1e-9;
    CHECK(found);

    CHECK_THROWS_AS(bases::amub_set(6, 0.0), BadModulusParameter);
}

TEST_CASE("tilted families", "[bases]") {
    const int d = 5;
    Eigen::VectorXd uniform = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(5.0));
    const bases::TiltedBases t1 = bases::tilted_bases(uniform, 1);
    CHECK(t1.orthonormal);
    CHECK((t1.families[0] - bases::fourier(d).vectors).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::VectorXd u3 = Eigen::VectorXd::Constant(3, 1.0 / std::sqrt(3.0));
    const bases::TiltedBases t3 = bases::tilted_bases(u3, 2);
    CHECK((t3.families[1] - bases::ivonovic_quadratic(3).vectors).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::VectorXd degenerate = Eigen::VectorXd::Zero(4);
    degenerate(0) = 1.0;
    const bases::TiltedBases td = bases::tilted_bases(degenerate, 2);
    CHECK_FALSE(td.orthonormal);
    for (const auto& fam : td.families)
        for (int j = 0; j < 4; ++j) {
            REQUIRE(std::abs(fam(0, j)) == Catch::Approx(1.0));
            REQUIRE(fam.col(j).tail(3).norm() < 1e-15);
        }

    Eigen::VectorXd unsorted(2);
    unsorted << 0.3, std::sqrt(1.0 - 0.09);
    CHECK_THROWS_AS(bases::tilted_bases(unsorted, 1), BadSchmidtVector);
    Eigen::VectorXd unnormalized = Eigen::VectorXd::Constant(3, 0.5);
    CHECK_THROWS_AS(bases::tilted_bases(unnormalized, 1), BadSchmidtVector);
}

TEST_CASE("tilted families with uniform coefficients are MUBs for odd primes", "[bases]") {
    for (int d : {3, 5, 7}) {
        Eigen::VectorXd uniform = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(double(d)));
        const bases::TiltedBases t = bases::tilted_bases(uniform, d);
        REQUIRE(t.orthonormal);
        std::vector<Basis> all;
        for (int alpha = 0; alpha < d; ++alpha)
            all.push_back(Basis(t.families[alpha], "tilted-" + std::to_string(alpha)));
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                REQUIRE(unbiasedness_defect(all[i], all[j]) < 1e-9);
    }
}

TEST_CASE("Haar random bases", "[bases]") {
    const Basis a = bases::random_basis(7, std::uint64_t{123});
    const Basis b = bases::random_basis(7, std::uint64_t{123});
    CHECK((a.vectors - b.vectors).cwiseAbs().maxCoeff() == 0.0);

    const Basis c = bases::random_basis(7, std::uint64_t{124});
    CHECK((a.vectors - c.vectors).cwiseAbs().maxCoeff() > 1e-3);

    Matrix gram = a.vectors.adjoint() * a.vectors;
    gram.diagonal().array() -= 1.0;
    CHECK(gram.cwiseAbs().maxCoeff() < 1e-10);

    // the overlap grand mean per pair is pinned to 1/d by the row sums
    std::mt19937_64 rng(77);
    const Basis u = bases::random_basis(20, rng), v = bases::random_basis(20, rng);
    const Eigen::MatrixXd w = (u.vectors.adjoint() * v.vectors).cwiseAbs2();
    CHECK(w.mean() == Catch::Approx(1.0 / 20).margin(1e-12));
}

TEST_CASE("Haar overlap deviations obey the concentration bound", "[bases]") {
    std::mt19937_64 rng(2718);
    const int d = 100;
    const Basis u = bases::random_basis(d, rng), v = bases::random_basis(d, rng);
    const Eigen::MatrixXd w = (u.vectors.adjoint() * v.vectors).cwiseAbs2();
    for (double eps : {0.02, 0.05, 0.1}) {
        const double rate =
            static_cast<double>(((w.array() - 1.0 / d).abs() > eps).count()) / (d * d);
        REQUIRE(rate <= analysis::levy_bound(d, eps));
    }
}

TEST_CASE("prime-dimension MUB sets", "[bases]") {
    const BasisSet m6 = bases::prime_mubs(5, 6);
    REQUIRE(m6.count() == 6);
    for (int z = 0; z < 6; ++z)
        for (int zp = z + 1; zp < 6; ++zp)
            REQUIRE(unbiasedness_defect(m6.bases[z], m6.bases[zp]) < 1e-9);

    const BasisSet m3 = bases::prime_mubs(3, 3);
    CHECK((m3.bases[1].vectors - bases::fourier(3).vectors).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((m3.bases[2].vectors - bases::ivonovic_quadratic(3).vectors).cwiseAbs().maxCoeff() <
          1e-14);

    CHECK_THROWS_AS(bases::prime_mubs(4, 3), NotOddPrime);
    CHECK_THROWS_AS(bases::prime_mubs(5, 7), RangeExceeded);
}
