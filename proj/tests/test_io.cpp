#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "entcert/bases.hpp"
#include "entcert/io.hpp"
#include "entcert/states.hpp"
#include "entcert/witness.hpp"

using namespace entcert;

namespace {

std::filesystem::path tmp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("entcert_io_" + name);
}

}  // namespace

TEST_CASE("basis set JSON round trip", "[io]") {
    std::mt19937_64 rng(8);
    const Matrix u = bases::random_unitary(4, rng);
    const BasisSet bs = bases::random_basis_set(4, 3, 21, u);
    const io::json j = io::basis_set_to_json(bs);
    const BasisSet back = io::basis_set_from_json(j);
    REQUIRE(back.count() == 3);
    for (int z = 0; z < 3; ++z)
        REQUIRE((back.bases[z].vectors - bs.bases[z].vectors).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE((back.frame - bs.frame).cwiseAbs().maxCoeff() == 0.0);

    // identity frames are implicit
    const io::json plain = io::basis_set_to_json(bases::three_mubs(3));
    CHECK_FALSE(plain.contains("frame"));
    CHECK(io::basis_set_from_json(plain).frame.isIdentity(1e-15));
}

TEST_CASE("non-orthonormal basis files are rejected", "[io]") {
    io::json j;
    j["dim"] = 2;
    j["label"] = "broken";
    j["vectors"] = io::json::array({io::json::array({io::json::array({1.0, 0.0}),
                                                     io::json::array({0.0, 0.0})}),
                                    io::json::array({io::json::array({1.0, 0.0}),
                                                     io::json::array({0.0, 0.0})})});
    CHECK_THROWS_AS(io::basis_from_json(j), NotOrthonormal);
}

TEST_CASE("density matrix JSON round trip", "[io]") {
    const DensityMatrix rho = states::purified_thermal(3, 0.7, 0.25);
    const DensityMatrix back = io::density_from_json(io::density_to_json(rho));
    CHECK(back.local_dim == 3);
    CHECK((back.mat - rho.mat).cwiseAbs().maxCoeff() == 0.0);

    io::json bad = io::density_to_json(rho);
    bad["matrix"].erase(0);
    CHECK_THROWS_AS(io::density_from_json(bad), SchemaViolation);
}

TEST_CASE("counts JSON parsing and validation", "[io]") {
    io::json j;
    j["dim"] = 3;
    j["bases"] = {"computational", "fourier"};
    io::json table = io::json::array();
    for (int a = 0; a < 3; ++a) table.push_back(io::json::array({10, 20, 30}));
    j["counts"]["computational"] = table;
    j["counts"]["fourier"] = table;
    const MeasuredCounts mc = io::counts_from_json(j);
    CHECK(mc.dim == 3);
    CHECK(mc.counts[0](1, 2) == 30.0);

    // round trip
    const MeasuredCounts back = io::counts_from_json(io::counts_to_json(mc));
    CHECK(back.counts[1](2, 1) == mc.counts[1](2, 1));

    io::json wrong_shape = j;
    wrong_shape["counts"]["fourier"].push_back(io::json::array({1, 1, 1}));  // 4 x 3
    CHECK_THROWS_AS(io::counts_from_json(wrong_shape), SchemaViolation);

    io::json negative = j;
    negative["counts"]["fourier"][0][0] = -1;
    CHECK_THROWS_AS(io::counts_from_json(negative), NegativeCount);

    io::json fractional = j;
    fractional["counts"]["fourier"][0][0] = 1.5;
    CHECK_THROWS_AS(io::counts_from_json(fractional), SchemaViolation);

    io::json missing = j;
    missing["counts"].erase("fourier");
    CHECK_THROWS_AS(io::counts_from_json(missing), SchemaViolation);
}

TEST_CASE("witness report JSON round trip", "[io]") {
    const auto rep = witness::certify(states::isotropic(3, 0.1), bases::three_mubs(3),
                                      witness::BoundMode::Loose);
    const auto back = io::witness_report_from_json(io::witness_report_to_json(rep));
    CHECK(back.S_value == rep.S_value);
    CHECK(back.bound_mode == rep.bound_mode);
    CHECK(back.T_value == rep.T_value);
    CHECK(back.bounds == rep.bounds);
    CHECK(back.certified_k_lower == rep.certified_k_lower);
    CHECK(back.fidelity_lower == rep.fidelity_lower);
    CHECK(back.subset == rep.subset);
}

TEST_CASE("file emission is deterministic", "[io]") {
    const auto path1 = tmp_file("det1.json"), path2 = tmp_file("det2.json");
    const io::json j = io::basis_set_to_json(bases::three_mubs(4, 3));
    io::save_json(path1.string(), j);
    io::save_json(path2.string(), j);
    std::ifstream a(path1), b(path2);
    const std::string sa((std::istreambuf_iterator<char>(a)), {});
    const std::string sb((std::istreambuf_iterator<char>(b)), {});
    CHECK(sa == sb);
    CHECK(!sa.empty());
    CHECK(sa.back() == '\n');
    std::filesystem::remove(path1);
    std::filesystem::remove(path2);
}

TEST_CASE("CSV emission", "[io]") {
    const auto path = tmp_file("scan.csv");
    io::save_csv(path.string(), {"eps_min", "m", "k", "p_threshold"},
                 {{0.0, 2, 1, 0.125}, {0.1, 2, 1, 1.0 / 3.0}});
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "eps_min,m,k,p_threshold");
    std::getline(in, line);
    CHECK(line == "0,2,1,0.125");
    std::getline(in, line);
    CHECK(line.find("0.33333333333333331") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("load errors", "[io]") {
    CHECK_THROWS_AS(io::load_json("/nonexistent/entcert.json"), IoFailure);
    const auto path = tmp_file("garbage.json");
    std::ofstream(path) << "{not json";
    CHECK_THROWS_AS(io::load_json(path.string()), SchemaViolation);
    std::filesystem::remove(path);
}
