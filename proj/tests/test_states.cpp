#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "entcert/bases.hpp"
#include "entcert/states.hpp"
#include "entcert/witness.hpp"

using namespace entcert;

TEST_CASE("isotropic family", "[states]") {
    const DensityMatrix pure = states::isotropic(3, 0.0);
    const Ket phi = max_entangled(3);
    CHECK((pure.mat - phi * phi.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

    const DensityMatrix mixed = states::isotropic(3, 1.0);
    CHECK((mixed.mat - Matrix::Identity(9, 9) / 9.0).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_NOTHROW(states::isotropic(3, 0.5));  // constructor enforces trace/PSD
    CHECK_THROWS_AS(states::isotropic(3, 1.5), RangeExceeded);
}

TEST_CASE("purified thermal family", "[states]") {
    for (double p : {0.0, 0.4}) {
        const DensityMatrix a = states::purified_thermal(4, 0.0, p);
        const DensityMatrix b = states::isotropic(4, p);
        REQUIRE((a.mat - b.mat).cwiseAbs().maxCoeff() < 1e-12);
    }

    const DensityMatrix frozen = states::purified_thermal(3, 50.0, 0.0);
    CHECK(frozen.mat(0, 0).real() == Catch::Approx(1.0).margin(1e-12));

    const Matrix ra = reduced_state(states::purified_thermal(2, 1.0, 0.0), Party::A);
    const double z = 1.0 + std::exp(-1.0);
    CHECK(ra(0, 0).real() == Catch::Approx(1.0 / z));
    CHECK(ra(1, 1).real() == Catch::Approx(std::exp(-1.0) / z));
}

TEST_CASE("exact isotropic Schmidt number", "[states]") {
    CHECK(states::schmidt_number_isotropic(5, 0.0) == 5);
    CHECK(states::schmidt_number_isotropic(5, 5.0 / 24.0 - 1e-9) == 5);
    CHECK(states::schmidt_number_isotropic(5, 5.0 / 24.0) == 4);
    CHECK(states::schmidt_number_isotropic(5, 0.9) == 1);
    CHECK(states::schmidt_number_isotropic(5, 1.0) == 1);
    // at the interval edge p = d(d-k)/(d^2-1) the Schmidt number drops to k
    for (int k = 1; k <= 4; ++k)
        CHECK(states::schmidt_number_isotropic(5, 5.0 * (5 - k) / 24.0) == k);
}

TEST_CASE("isotropic closed forms", "[states]") {
    CHECK(states::witness_closed_isotropic(5, 0.0, 3) == 3.0);
    CHECK(states::witness_closed_isotropic(5, 1.0, 3) == Catch::Approx(0.6));
    CHECK(states::witness_closed_isotropic(5, 0.3, 3) == Catch::Approx(2.28));

    CHECK(states::ent_fidelity_isotropic(5, 0.0) == 1.0);
    CHECK(states::ent_fidelity_isotropic(5, 1.0) == Catch::Approx(1.0 / 25));
    CHECK(states::ent_fidelity_isotropic(5, 0.2) == Catch::Approx(0.808));

    // numeric witness equals the closed form on a p-grid
    for (int d : {3, 5, 7}) {
        const BasisSet mubs = bases::prime_mubs(d, std::min(d + 1, 4));
        for (double p = 0.0; p <= 1.0 + 1e-12; p += 0.25) {
            const double s = witness::witness_value(states::isotropic(d, p), mubs);
            REQUIRE(s == Catch::Approx(states::witness_closed_isotropic(d, p, mubs.count()))
                             .margin(1e-9));
        }
    }
}

TEST_CASE("thermal tau closed form", "[states]") {
    CHECK(states::tau_thermal(5, 0.0, 3) == 3.0);
    // beta -> infinity limit: 1 + (m-1)/d
    CHECK(states::tau_thermal(5, 400.0, 3) == Catch::Approx(1.0 + 2.0 / 5.0).margin(1e-12));

    // matches the full matrix computation on the measurement triple
    for (double beta : {0.0, 0.5, 2.0}) {
        for (double p : {0.0, 0.3}) {
            for (int m : {2, 3}) {
                std::vector<Basis> v{bases::computational(5), bases::fourier(5)};
                if (m == 3) v.push_back(bases::ivonovic_quadratic(5));
                const double s =
                    witness::witness_value(states::purified_thermal(5, beta, p), BasisSet(v));
                const double closed =
                    (1.0 - p) * states::tau_thermal(5, beta, m) + m * p / 5.0;
                REQUIRE(s == Catch::Approx(closed).margin(1e-9));
            }
        }
    }
}

TEST_CASE("thermal entanglement fidelity", "[states]") {
    for (double p : {0.0, 0.5, 1.0})
        CHECK(states::ent_fidelity_thermal(4, 0.0, p) ==
              Catch::Approx(states::ent_fidelity_isotropic(4, p)));
    CHECK(states::ent_fidelity_thermal(5, 2.0, 1.0) == Catch::Approx(1.0 / 25));
    CHECK(states::ent_fidelity_thermal(5, 1.0, 0.0) ==
          Catch::Approx(std::tanh(1.25) / (5.0 * std::tanh(0.25))));

    // oracle: maximize <Phi+|(U x 1) rho (U x 1)^dag|Phi+> over diagonal-phase
    // unitaries; positive thermal amplitudes make U = 1 optimal
    const int d = 3;
    const double beta = 1.0;
    const DensityMatrix rho = states::purified_thermal(d, beta, 0.0);
    const Ket phi = max_entangled(d);
    double best = 0.0;
    const int steps = 24;
    for (int a = 0; a < steps; ++a)
        for (int b = 0; b < steps; ++b) {
            Matrix u = Matrix::Identity(d, d);
            u(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi * a / steps);
            u(2, 2) = std::polar(1.0, 2.0 * std::numbers::pi * b / steps);
            const Matrix ua = kron(u, Matrix::Identity(d, d));
            best = std::max(best, (phi.adjoint() * ua * rho.mat * ua.adjoint() * phi)(0).real());
        }
    CHECK(best == Catch::Approx(states::ent_fidelity_thermal(d, beta, 0.0)).margin(1e-9));
}
