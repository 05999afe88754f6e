// Minimal library walkthrough: certify the Schmidt number of noisy benchmark
// states from correlations in a handful of measurement bases.

#include <cstdio>

#include "entcert/analysis.hpp"
#include "entcert/bases.hpp"
#include "entcert/states.hpp"
#include "entcert/witness.hpp"

using namespace entcert;

int main() {
    const int d = 5;

    std::printf("isotropic states in d = %d, measured in 6 MUBs (tight bounds)\n", d);
    std::printf("%8s %10s %12s %10s %12s\n", "p", "S", "certified k", "exact k", "fidelity >=");
    const BasisSet mubs = bases::prime_mubs(d, 6);
    for (double p : {0.0, 0.1, 0.2, 0.3, 0.5, 0.8}) {
        const auto rep = witness::certify(states::isotropic(d, p), mubs,
                                          witness::BoundMode::Tight);
        std::printf("%8.2f %10.4f %12d %10d %12.4f\n", p, rep.S_value, rep.certified_k_lower,
                    states::schmidt_number_isotropic(d, p), rep.fidelity_lower);
    }

    std::printf("\nnoisy purified thermal state, third basis drifted by theta = 2.5\n");
    std::vector<Basis> v{bases::computational(d), bases::fourier(d),
                         bases::phase_drift(bases::ivonovic_quadratic(d), 0, 2.5)};
    const auto rep = witness::certify(states::purified_thermal(d, 0.5, 0.3), BasisSet(v),
                                      witness::BoundMode::Loose);
    std::printf("certified k >= %d using %zu of 3 bases (the drifted basis is dropped)\n",
                rep.certified_k_lower, rep.subset.size());

    std::printf("\nworst-case bias tolerance in d = %d: no Schmidt number is witnessable\n", d);
    std::printf("once c_min <= %.5f (eps_min >= %.5f)\n", analysis::cmin_no_witness_bound(d),
                1.0 / d - analysis::cmin_no_witness_bound(d));
    return 0;
}
