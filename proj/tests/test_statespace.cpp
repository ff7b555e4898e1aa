#include <catch2/catch_amalgamated.hpp>

#include <adpass/statespace.hpp>

using namespace adpass;

TEST_CASE("two-atom full basis follows the printed eight-state order") {
    BlockadedBasis b = build_basis(2, LevelScheme::three_level, Representation::full);
    std::vector<std::string> expect = {"gg", "ge", "gr", "eg", "ee", "er", "rg", "re"};
    CHECK(b.labels == expect);
}

TEST_CASE("basis dimensions and blockade constraint") {
    CHECK(build_basis(1, LevelScheme::three_level, Representation::full).dim() == 3);
    CHECK(build_basis(3, LevelScheme::three_level, Representation::full).dim() == 20);
    for (int n = 1; n <= 8; ++n) {
        BlockadedBasis full = build_basis(n, LevelScheme::three_level, Representation::full);
        CHECK(full.dim() == (1 << n) + n * (1 << (n - 1)));
        for (const auto& s : full.labels)
            CHECK(std::count(s.begin(), s.end(), 'r') <= 1);
        BlockadedBasis sym =
            build_basis(n, LevelScheme::three_level, Representation::symmetric);
        CHECK(sym.dim() == 2 * n + 1);
    }
    CHECK(build_basis(4, LevelScheme::two_level, Representation::symmetric).dim() == 2);
}

TEST_CASE("capacity limits") {
    CHECK_THROWS_AS(build_basis(13, LevelScheme::three_level, Representation::full),
                    CapacityError);
    CHECK_THROWS_AS(build_basis(0, LevelScheme::three_level, Representation::full),
                    CapacityError);
    CHECK_THROWS_AS(build_basis(101, LevelScheme::three_level, Representation::symmetric),
                    CapacityError);
}

TEST_CASE("symmetric permutation states") {
    BlockadedBasis b2 = build_basis(2, LevelScheme::three_level, Representation::full);
    CollectiveState s = symmetric_state(b2, 1, 0, 1);
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amplitudes(b2.index_of("gr")) - inv_sqrt2) < 1e-15);
    CHECK(std::abs(s.amplitudes(b2.index_of("rg")) - inv_sqrt2) < 1e-15);
    CHECK(std::abs(s.amplitudes.norm() - 1.0) < 1e-15);

    BlockadedBasis b1 = build_basis(1, LevelScheme::three_level, Representation::full);
    CollectiveState r = symmetric_state(b1, 0, 0, 1);
    CHECK(std::abs(r.amplitudes(b1.index_of("r")) - 1.0) < 1e-15);

    BlockadedBasis b3 = build_basis(3, LevelScheme::three_level, Representation::full);
    CollectiveState t = symmetric_state(b3, 2, 0, 1);
    int hits = 0;
    for (int i = 0; i < b3.dim(); ++i)
        if (std::abs(t.amplitudes(i)) > 0.0) {
            CHECK(std::abs(t.amplitudes(i) - 1.0 / std::sqrt(3.0)) < 1e-15);
            ++hits;
        }
    CHECK(hits == 3);

    CHECK_THROWS_AS(symmetric_state(b2, 0, 0, 2), ConfigError);
    CHECK_THROWS_AS(symmetric_state(b2, 1, 1, 1), ConfigError);
}

TEST_CASE("projection onto the symmetric subspace") {
    BlockadedBasis full = build_basis(2, LevelScheme::three_level, Representation::full);
    BlockadedBasis sym = build_basis(2, LevelScheme::three_level, Representation::symmetric);

    SECTION("symmetric states project without leakage") {
        auto [s, leak] = project_to_symmetric(symmetric_state(full, 1, 1, 0), full, sym);
        CHECK(std::abs(leak) < 1e-12);
        CHECK(std::abs(s.amplitudes.norm() - 1.0) < 1e-12);
    }
    SECTION("a single product state splits half-and-half") {
        CollectiveState gr;
        gr.amplitudes = Eigen::VectorXcd::Zero(full.dim());
        gr.amplitudes(full.index_of("gr")) = 1.0;
        auto [s, leak] = project_to_symmetric(gr, full, sym);
        CHECK(leak == Catch::Approx(0.5).epsilon(1e-12));
        double amp = 0.0;
        for (int k = 0; k < sym.dim(); ++k)
            if (sym.occupations[k].n_e == 0 && sym.occupations[k].n_r == 1)
                amp = std::abs(s.amplitudes(k));
        CHECK(amp == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        // norm is preserved: |sym|^2 + leakage = 1
        CHECK(s.amplitudes.squaredNorm() + leak == Catch::Approx(1.0).epsilon(1e-12));
    }
    SECTION("ground state is fully symmetric") {
        auto [s, leak] = project_to_symmetric(ground_state(full), full, sym);
        CHECK(std::abs(leak) < 1e-12);
        CHECK(std::abs(std::abs(s.amplitudes(0)) - 1.0) < 1e-12);
    }
    SECTION("mismatched bases are rejected") {
        BlockadedBasis sym3 =
            build_basis(3, LevelScheme::three_level, Representation::symmetric);
        CHECK_THROWS_AS(project_to_symmetric(ground_state(full), full, sym3),
                        DimensionError);
    }
}

TEST_CASE("rydberg indices cover exactly the singly-excited states") {
    BlockadedBasis full = build_basis(2, LevelScheme::three_level, Representation::full);
    auto idx = rydberg_indices(full);
    CHECK(idx.size() == 4);  // gr, er, rg, re
    for (int i : idx) CHECK(full.labels[i].find('r') != std::string::npos);

    BlockadedBasis sym = build_basis(5, LevelScheme::three_level, Representation::symmetric);
    CHECK(rydberg_indices(sym).size() == 5);
}
