// Command-line front end: basis/state generation, certification, scan curves,
// the baseline comparison, and the self-check suite.
//
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "entcert/analysis.hpp"
#include "entcert/baseline.hpp"
#include "entcert/bases.hpp"
#include "entcert/io.hpp"
#include "entcert/states.hpp"
#include "entcert/witness.hpp"

using namespace entcert;

namespace {

std::map<std::string, double> parse_params(const std::string& spec) {
    std::map<std::string, double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw SchemaViolation("--params entries must look like key=value");
        out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return out;
}

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

std::vector<double> parse_csv_doubles(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int run_gen_bases(const std::string& family, int dim, long long pr, double p_eff,
                  std::optional<std::uint64_t> seed, int count, const std::string& lambda_csv,
                  double theta, int alpha, const std::string& out_path) {
    io::json j;
    if (family == "three-mubs") {
        j = io::basis_set_to_json(bases::three_mubs(dim, pr));
    } else if (family == "amub") {
        const double p = p_eff > 0.0
                             ? p_eff
                             : static_cast<double>(numtheory::smallest_prime_geq(dim));
        j = io::basis_set_to_json(bases::amub_set(dim, p));
    } else if (family == "random") {
        if (!seed) {
            std::cerr << "gen-bases: --seed is required for --family random\n";
            return 2;
        }
        j = io::basis_set_to_json(bases::random_basis_set(dim, count, *seed));
    } else if (family == "ivonovic") {
        std::vector<Basis> v{bases::computational(dim), bases::fourier(dim),
                             theta != 0.0
                                 ? bases::phase_drift(bases::ivonovic_quadratic(dim), alpha, theta)
                                 : bases::ivonovic_quadratic(dim)};
        j = io::basis_set_to_json(BasisSet(std::move(v)));
    } else if (family == "prime-mubs") {
        j = io::basis_set_to_json(bases::prime_mubs(dim, count));
    } else if (family == "tilted") {
        if (lambda_csv.empty()) {
            std::cerr << "gen-bases: --lambda is required for --family tilted\n";
            return 2;
        }
        const std::vector<double> vals = parse_csv_doubles(lambda_csv);
        Eigen::VectorXd lam(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) lam(i) = vals[i];
        const bases::TiltedBases tb = bases::tilted_bases(lam, count);
        j["dim"] = tb.dim;
        j["kind"] = "tilted";
        j["orthonormal"] = tb.orthonormal;
        io::json fams = io::json::array();
        for (const auto& fam : tb.families) {
            io::json vecs = io::json::array();
            for (int col = 0; col < tb.dim; ++col) {
                io::json v = io::json::array();
                for (int row = 0; row < tb.dim; ++row) v.push_back(io::to_json(fam(row, col)));
                vecs.push_back(std::move(v));
            }
            fams.push_back(std::move(vecs));
        }
        j["families"] = std::move(fams);
    } else {
        std::cerr << "gen-bases: unknown family '" << family << "'\n";
        return 2;
    }
    io::save_json(out_path, j);
    return 0;
}

int run_gen_state(const std::string& family, int dim, double p, double beta,
                  const std::string& out_path) {
    DensityMatrix rho = family == "thermal" ? states::purified_thermal(dim, beta, p)
                                            : states::isotropic(dim, p);
    io::save_json(out_path, io::density_to_json(rho));
    return 0;
}

int run_certify(const std::string& state_path, const std::string& bases_path,
                const std::string& counts_path, const std::string& mode,
                const std::string& report_path) {
    const BasisSet bs = io::basis_set_from_json(io::load_json(bases_path));
    const witness::BoundMode bm =
        mode == "loose" ? witness::BoundMode::Loose : witness::BoundMode::Tight;
    io::json out;
    witness::WitnessReport rep;
    if (!counts_path.empty()) {
        const MeasuredCounts counts = io::counts_from_json(io::load_json(counts_path));
        rep = witness::certify(counts, bs, bm);
        const auto est = witness::witness_value_empirical(counts);
        out = io::witness_report_to_json(rep);
        out["empirical"] = {{"S_total", est.value}, {"std_error", est.std_error}};
    } else {
        const DensityMatrix rho = io::density_from_json(io::load_json(state_path));
        rep = witness::certify(rho, bs, bm);
        out = io::witness_report_to_json(rep);
    }
    io::save_json(report_path, out);
    std::printf("S = %.9f, certified Schmidt number >= %d, fidelity >= %.9f\n", rep.S_value,
                rep.certified_k_lower, rep.fidelity_lower);
    return 0;
}

int run_scan(const std::string& curve, const std::map<std::string, double>& params,
             const std::string& out_path) {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    if (curve == "fig1") {
        const int d = static_cast<int>(param(params, "dim", 5));
        const int points = static_cast<int>(param(params, "points", 51));
        header = {"eps_min", "m", "k", "p_threshold"};
        for (int m : {2, 3, d + 1})
            for (int k = 1; k <= d - 1; ++k)
                for (int i = 0; i < points; ++i) {
                    const double eps = (1.0 / d) * i / (points - 1);
                    const double T = analysis::worst_case_T(d, m, 1.0 / d - eps);
                    rows.push_back(
                        {eps, double(m), double(k), analysis::p_threshold_iso(d, k, m, T)});
                }
    } else if (curve == "figA1") {
        const int dmin = static_cast<int>(param(params, "dmin", 2));
        const int dmax = static_cast<int>(param(params, "dmax", 32));
        const double p = param(params, "p", 0.005);
        const int m = static_cast<int>(param(params, "m", 2));
        header = {"d", "k", "p", "d_eps_min"};
        for (int d = dmin; d <= dmax; ++d)
            for (int k = 1; k <= d - 1; ++k) {
                double supremum = 0.0;
                try {
                    supremum = 1.0 - d * analysis::cmin_tolerance_iso(d, k, m, p);
                } catch (const InfeasibleNoise&) {
                    supremum = 0.0;  // noise already above the MUB threshold
                }
                rows.push_back({double(d), double(k), p, supremum});
            }
    } else if (curve == "figA3") {
        const int d = static_cast<int>(param(params, "dim", 5));
        const double beta = param(params, "beta", 0.5);
        const int points = static_cast<int>(param(params, "points", 64));
        header = {"theta", "m", "k", "p_threshold"};
        for (int m : {2, 3})
            for (int k = 1; k <= d - 1; ++k)
                for (int i = 0; i < points; ++i) {
                    const double theta = std::numbers::pi * i / (points - 1);
                    rows.push_back({theta, double(m), double(k),
                                    analysis::p_threshold_thermal(d, k, m, beta, theta)});
                }
    } else if (curve == "figA4") {
        const int d = static_cast<int>(param(params, "dim", 5));
        const double theta = param(params, "theta", 0.05);
        const double beta_max = param(params, "betamax", 3.0);
        const int points = static_cast<int>(param(params, "points", 61));
        header = {"beta", "m", "k", "p_threshold"};
        for (int m : {2, 3})
            for (int k = 1; k <= d - 1; ++k)
                for (int i = 0; i < points; ++i) {
                    const double beta = beta_max * i / (points - 1);
                    rows.push_back({beta, double(m), double(k),
                                    analysis::p_threshold_thermal(d, k, m, beta, theta)});
                }
    } else if (curve == "cmin-bound") {
        const int dmin = static_cast<int>(param(params, "dmin", 2));
        const int dmax = static_cast<int>(param(params, "dmax", 100));
        header = {"d", "cmin_bound", "eps_min"};
        for (int d = dmin; d <= dmax; ++d) {
            const double c = analysis::cmin_no_witness_bound(d);
            rows.push_back({double(d), c, 1.0 / d - c});
        }
    } else if (curve == "levy") {
        const int dmin = static_cast<int>(param(params, "dmin", 10));
        const int dmax = static_cast<int>(param(params, "dmax", 1000000));
        const int points = static_cast<int>(param(params, "points", 25));
        header = {"d", "eps", "bound"};
        for (double eps : {0.02, 0.05, 0.1})
            for (int i = 0; i < points; ++i) {
                const double t = static_cast<double>(i) / (points - 1);
                const int d = static_cast<int>(
                    std::lround(std::pow(10.0, std::log10(double(dmin)) +
                                                   t * (std::log10(double(dmax)) -
                                                        std::log10(double(dmin))))));
                rows.push_back({double(d), eps, analysis::levy_bound(d, eps)});
            }
    } else {
        std::cerr << "scan: unknown curve '" << curve << "'\n";
        return 2;
    }
    io::save_csv(out_path, header, rows);
    std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
    return 0;
}

int run_compare(const std::string& state_path, int M, const std::string& out_path) {
    const DensityMatrix rho = io::density_from_json(io::load_json(state_path));
    const int d = rho.local_dim;
    const baseline::BaselineReport base = baseline::baseline_fidelity_bound(rho, M);

    // the m = M+1 association: computational basis + M coordinated bases
    const bool odd_prime = numtheory::is_prime(d) && d % 2 == 1;
    const BasisSet bs = odd_prime ? bases::prime_mubs(d, std::min(d + 1, M + 1))
                                  : bases::three_mubs(d);
    const witness::WitnessReport wit = witness::certify(rho, bs, witness::BoundMode::Tight);

    io::json out;
    out["baseline"] = io::baseline_report_to_json(base);
    out["witness"] = io::witness_report_to_json(wit);
    io::json labels = io::json::array();
    for (const auto& b : bs.bases) labels.push_back(b.label);
    out["witness_bases"] = std::move(labels);
    io::save_json(out_path, out);
    std::printf("baseline F~ = %.9f (k >= %d), witness S = %.9f (k >= %d)\n", base.F_tilde,
                base.certified_k_lower, wit.S_value, wit.certified_k_lower);
    return 0;
}

int run_check(std::uint64_t seed) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        std::printf("%-34s %s\n", name.c_str(), ok ? "ok" : "FAIL");
        if (!ok) ++failures;
    };

    // operator inequality on MUBs and random sets with random frames
    {
        bool ok = witness::operator_inequality_check(bases::prime_mubs(3, 2)) <= 1e-8;
        std::mt19937_64 rng(seed);
        for (int d : {3, 4})
            for (int m : {2, 3})
                for (int t = 0; t < 5; ++t) {
                    const Matrix u = bases::random_unitary(d, rng);
                    ok = ok && witness::operator_inequality_check(
                                   bases::random_basis_set(d, m, rng(), u)) <= 1e-8;
                }
        report("operator inequality", ok);
    }

    // three-MUBs unbiasedness across dimensions
    {
        bool ok = true;
        for (int d = 2; d <= 12 && ok; ++d)
            for (long long pr : {1, 3}) {
                if (pr >= d || std::gcd<long long>(d, pr) != 1) continue;
                const OverlapTable t = overlap_table(bases::three_mubs(d, pr));
                for (int z = 0; z < 3; ++z)
                    for (int zp = z + 1; zp < 3; ++zp) {
                        ok = ok && std::abs(t.pair(z, zp).c_max - 1.0 / d) <= 1e-9 &&
                             std::abs(t.pair(z, zp).c_min - 1.0 / d) <= 1e-9;
                    }
            }
        report("three-MUBs unbiasedness", ok);
    }

    // Gauss-sum magnitudes and closed form
    {
        bool ok = true;
        std::mt19937_64 rng(seed + 1);
        for (long long c = 1; c <= 99 && ok; c += 2) {
            std::uniform_int_distribution<long long> bdist(0, c - 1);
            for (long long a = 1; a < std::max<long long>(c, 2) && ok; ++a) {
                if (std::gcd(a, c) != 1) continue;
                for (int t = 0; t < 3; ++t) {
                    const long long b = c == 1 ? 0 : bdist(rng);
                    const auto direct = numtheory::gauss_sum_direct(a, b, c);
                    ok = ok && std::abs(std::abs(direct) - std::sqrt(double(c))) <= 1e-8 &&
                         std::abs(numtheory::gauss_sum_closed(a, b, c) - direct) <=
                             1e-9 * std::sqrt(double(c));
                }
            }
        }
        for (long long d = 2; d <= 40 && ok; ++d)
            for (long long pr : {1, 3})
                if (pr < d && std::gcd(d, pr) == 1)
                    for (long long k = -2; k <= 2; ++k)
                        ok = ok && std::abs(numtheory::lemma2_magnitude(d, k, pr) -
                                            std::sqrt(double(d))) <= 1e-9;
        report("Gauss-sum magnitudes", ok);
    }

    // Welch slack on generated families
    {
        bool ok = true;
        std::vector<BasisSet> sets;
        sets.push_back(bases::prime_mubs(5, 6));
        sets.push_back(bases::three_mubs(6));
        sets.push_back(bases::amub_set(6, 7.0));
        sets.push_back(bases::random_basis_set(8, 3, seed + 2));
        for (const auto& set : sets) {
            std::vector<Ket> vecs;
            for (const auto& b : set.bases)
                for (int a = 0; a < set.dim(); ++a) vecs.push_back(b.vectors.col(a));
            for (int k : {1, 2}) ok = ok && analysis::welch_check(vecs, k) >= -1e-9;
        }
        report("Welch bound slack", ok);
    }

    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schmidt-number witness toolkit for correlations in arbitrary bases"};
    app.require_subcommand(1);

    // gen-bases
    auto* gen_bases = app.add_subcommand("gen-bases", "construct a measurement-basis family");
    std::string gb_family, gb_lambda, gb_out;
    int gb_dim = 0, gb_count = 2, gb_alpha = 0;
    long long gb_pr = 1;
    double gb_peff = 0.0, gb_theta = 0.0;
    std::optional<std::uint64_t> gb_seed;
    gen_bases->add_option("--family", gb_family, "three-mubs|amub|tilted|random|ivonovic|prime-mubs")
        ->required();
    gen_bases->add_option("--dim", gb_dim, "local dimension d")->check(CLI::Range(2, 64));
    gen_bases->add_option("--pr", gb_pr, "odd prime power (or 1) of the quadratic basis");
    gen_bases->add_option("--p-eff", gb_peff, "AMUB modulus (default: smallest prime >= d)");
    gen_bases->add_option("--seed", gb_seed, "RNG seed (required for random)");
    gen_bases->add_option("--count", gb_count, "number of bases/families where applicable");
    gen_bases->add_option("--lambda", gb_lambda, "Schmidt coefficients for tilted, CSV");
    gen_bases->add_option("--theta", gb_theta, "phase drift of the third quadratic basis");
    gen_bases->add_option("--alpha", gb_alpha, "drifted row index");
    gen_bases->add_option("--out", gb_out, "output JSON path")->required();

    // gen-state
    auto* gen_state = app.add_subcommand("gen-state", "construct a benchmark state");
    std::string gs_family, gs_out;
    int gs_dim = 0;
    double gs_p = 0.0, gs_beta = 0.0;
    gen_state->add_option("--family", gs_family, "isotropic|thermal")->required();
    gen_state->add_option("--dim", gs_dim, "local dimension d")->required()->check(CLI::Range(2, 12));
    gen_state->add_option("--p", gs_p, "white-noise ratio in [0,1]")->required();
    gen_state->add_option("--beta", gs_beta, "inverse temperature (thermal)");
    gen_state->add_option("--out", gs_out, "output JSON path")->required();

    // certify
    auto* certify = app.add_subcommand("certify", "evaluate the witness and certify");
    std::string ce_state, ce_bases, ce_counts, ce_mode = "tight", ce_report;
    certify->add_option("--state", ce_state, "state JSON (ignored when --counts given)");
    certify->add_option("--bases", ce_bases, "basis-set JSON")->required();
    certify->add_option("--counts", ce_counts, "measured counts JSON");
    certify->add_option("--mode", ce_mode, "tight|loose")
        ->check(CLI::IsMember({"tight", "loose"}));
    certify->add_option("--report", ce_report, "output report JSON")->required();

    // scan
    auto* scan = app.add_subcommand("scan", "emit a threshold/diagnostic curve as CSV");
    std::string sc_curve, sc_params, sc_out;
    scan->add_option("--curve", sc_curve, "fig1|figA1|figA3|figA4|cmin-bound|levy")->required();
    scan->add_option("--params", sc_params, "comma-separated key=value overrides");
    scan->add_option("--out", sc_out, "output CSV path")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "baseline witness vs this witness");
    std::string cp_state, cp_out;
    int cp_m = 1;
    compare->add_option("--state", cp_state, "state JSON")->required();
    compare->add_option("--M", cp_m, "number of tilted bases")->required()->check(CLI::Range(1, 12));
    compare->add_option("--out", cp_out, "output report JSON")->required();

    // check
    auto* check = app.add_subcommand("check", "run the built-in property suite");
    std::uint64_t ck_seed = 0;
    check->add_option("--seed", ck_seed, "RNG seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen_bases->parsed()) {
            if (gb_dim < 2) {
                std::cerr << "gen-bases: --dim is required\n";
                return 2;
            }
            return run_gen_bases(gb_family, gb_dim, gb_pr, gb_peff, gb_seed, gb_count, gb_lambda,
                                 gb_theta, gb_alpha, gb_out);
        }
        if (gen_state->parsed()) {
            if (gs_family != "isotropic" && gs_family != "thermal") {
                std::cerr << "gen-state: unknown family '" << gs_family << "'\n";
                return 2;
            }
            return run_gen_state(gs_family, gs_dim, gs_p, gs_beta, gs_out);
        }
        if (certify->parsed()) {
            if (ce_state.empty() && ce_counts.empty()) {
                std::cerr << "certify: provide --state or --counts\n";
                return 2;
            }
            return run_certify(ce_state, ce_bases, ce_counts, ce_mode, ce_report);
        }
        if (scan->parsed()) return run_scan(sc_curve, parse_params(sc_params), sc_out);
        if (compare->parsed()) return run_compare(cp_state, cp_m, cp_out);
        if (check->parsed()) return run_check(ck_seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
