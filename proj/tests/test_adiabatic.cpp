#include <catch2/catch_amalgamated.hpp>

#include <adpass/adiabatic.hpp>

#include <random>

using namespace adpass;

TEST_CASE("mixing angle branch convention") {
    CHECK(mixing_angle(0.0, mhz(1.0)) == Catch::Approx(0.0).margin(1e-12));
    CHECK(mixing_angle(0.0, -mhz(1.0)) ==
          Catch::Approx(0.5 * std::numbers::pi).margin(1e-12));
    CHECK(mixing_angle(mhz(2.0), mhz(2.0)) ==
          Catch::Approx(std::numbers::pi / 8.0).epsilon(1e-12));
    CHECK(mixing_angle(mhz(2.0), mhz(2.0), true) ==
          Catch::Approx(-std::numbers::pi / 8.0).epsilon(1e-12));
    CHECK_THROWS_AS(mixing_angle(0.0, 0.0), ConfigError);
}

TEST_CASE("mixing angle identities at random inputs") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.1, 50.0);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int i = 0; i < 200; ++i) {
        double om = u(rng), d = (sign(rng) ? 1.0 : -1.0) * u(rng);
        double th = mixing_angle(om, d);
        CHECK(th >= 0.0);
        CHECK(th <= 0.5 * std::numbers::pi);
        double s = std::sin(th), c = std::cos(th);
        CHECK(s * s + c * c == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(std::tan(2.0 * th) * d == Catch::Approx(om).epsilon(1e-9));
    }
}

TEST_CASE("generalized pulse area") {
    SECTION("constant resonant pulse: S = Omega0 * T") {
        NonlinearDetuningPulse flat;
        flat.rabi = mhz(3.0);
        flat.centers = {0.0, 10.0};
        PulseArea s = generalized_area(TwoLevelPulse{flat}, 0.0, 2.0);
        CHECK(s.value == Catch::Approx(mhz(3.0) * 2.0).epsilon(1e-10));
    }
    SECTION("resonant Gaussian: S = Omega0 * w * sqrt(2 pi)") {
        GaussianChirpPulse g{mhz(5.0), 1.0, 0.0, 0.0};
        auto [lo, hi] = support_window(g);
        PulseArea s = generalized_area(TwoLevelPulse{g}, lo, hi);
        CHECK(s.value ==
              Catch::Approx(mhz(5.0) * std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-8));
    }
    SECTION("invalid window is rejected") {
        GaussianChirpPulse g{mhz(5.0), 1.0, 0.0, 0.0};
        CHECK_THROWS_AS(generalized_area(TwoLevelPulse{g}, 1.0, 1.0), ConfigError);
    }
}

TEST_CASE("adiabaticity margin") {
    SECTION("constant resonant pulse has margin zero") {
        NonlinearDetuningPulse flat;
        flat.rabi = mhz(3.0);
        flat.centers = {0.0, 10.0};
        TimeGrid grid{0.5, 2.0};
        for (double m : adiabaticity_margin(TwoLevelPulse{flat}, grid, 50))
            CHECK(m == Catch::Approx(0.0).margin(1e-8));
    }
    SECTION("chirped inversion pulse stays well below 0.1") {
        GaussianChirpPulse g{mhz(5.0), 1.0, 0.0, -mhz(1.0)};
        auto [lo, hi] = support_window(g);
        TimeGrid grid{lo, hi};
        double worst = 0.0;
        for (double m : adiabaticity_margin(TwoLevelPulse{g}, grid))
            if (std::isfinite(m)) worst = std::max(worst, m);
        CHECK(worst < 0.1);
        CHECK(worst > 0.0);
    }
    SECTION("zero drive reports infinity") {
        GaussianChirpPulse g{0.0, 1.0, 0.0, 0.0};
        TimeGrid grid{0.0, 1.0};
        auto m = adiabaticity_margin(TwoLevelPulse{g}, grid, 10);
        CHECK(std::isinf(m[0]));
    }
}

TEST_CASE("closed-form double-passage amplitude") {
    DoubleSequence seq;
    seq.first = {mhz(5.0), 1.0, 7.0, -mhz(1.0)};
    seq.second_center = 21.0;

    SECTION("identical pulses return -1") {
        DoubleArpPrediction p = predict_double_arp_amplitude(seq);
        CHECK(std::abs(p.amplitude - std::complex<double>(-1.0, 0.0)) < 1e-9);
        CHECK(p.adiabatic);
    }
    SECTION("phase-flipped second pulse returns +1") {
        seq.mode = SequenceMode::phase_flipped;
        DoubleArpPrediction p = predict_double_arp_amplitude(seq);
        CHECK(std::abs(p.amplitude - std::complex<double>(1.0, 0.0)) < 1e-9);
    }
    SECTION("unequal areas give -exp(i(S2 - S1))") {
        // shrink the second half-window to unbalance the areas
        double mid = sequence_midpoint(seq);
        auto [lo, hi] = support_window(seq);
        TwoLevelPulse p{seq};
        double s1 = generalized_area(p, lo, mid).value;
        double s2 = generalized_area(p, mid, hi).value;
        std::complex<double> expect = -std::polar(1.0, s2 - s1);
        CHECK(std::abs(predict_double_arp_amplitude(seq).amplitude - expect) < 1e-12);
    }
}

TEST_CASE("phase prediction from a zero-eigenvalue branch is zero") {
    ArpModel m{TwoLevelPulse{GaussianChirpPulse{0.0, 1.0, 0.0, 0.0}}};
    TimeGrid grid{0.0, 1.0};
    CollectiveState init;
    init.amplitudes = Eigen::Vector2cd(1.0, 0.0);
    EigenTrack track = eigen_track(m, grid, init, 100);
    for (double ph : predict_phase_from_eigentrack(track))
        CHECK(ph == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("phase wrapping lands in (-pi, pi]") {
    CHECK(wrap_phase(two_pi + 0.1) == Catch::Approx(0.1).epsilon(1e-12));
    CHECK(wrap_phase(-two_pi - 0.1) == Catch::Approx(-0.1).epsilon(1e-12));
    CHECK(wrap_phase(3.0 * std::numbers::pi) ==
          Catch::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(wrap_phase(-std::numbers::pi) ==
          Catch::Approx(std::numbers::pi).epsilon(1e-12));
}
