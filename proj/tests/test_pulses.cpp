#include <catch2/catch_amalgamated.hpp>

#include <adpass/pulses.hpp>

#include <cmath>
#include <random>

using namespace adpass;

TEST_CASE("gaussian chirp pulse evaluation") {
    GaussianChirpPulse p{mhz(5.0), 1.0, 0.0, -mhz(1.0)};
    CHECK(eval_rabi(p, 0.0) == Catch::Approx(mhz(5.0)).epsilon(1e-15));
    CHECK(eval_rabi(p, 1.0) ==
          Catch::Approx(mhz(5.0) * std::exp(-0.5)).epsilon(1e-15));
    CHECK(eval_detuning(p, 1.0) == Catch::Approx(-mhz(1.0)).epsilon(1e-15));
    CHECK(eval_detuning(p, 0.0) == 0.0);
    // even about the center
    CHECK(eval_rabi(p, 0.7) == eval_rabi(p, -0.7));
}

TEST_CASE("gaussian support window at the truncation threshold") {
    GaussianChirpPulse p{mhz(5.0), 1.0, 0.0, 0.0};
    auto [lo, hi] = support_window(p);
    CHECK(hi == Catch::Approx(6.07).margin(0.01));
    CHECK(lo == Catch::Approx(-hi).epsilon(1e-15));
    // at the edge the envelope sits at the threshold
    CHECK(gauss(hi, 1.0) == Catch::Approx(envelope_truncation).epsilon(1e-10));
}

TEST_CASE("purity: repeated evaluation is bit-identical") {
    GaussianChirpPulse p{mhz(3.0), 0.7, 0.2, mhz(2.0)};
    for (double t : {-1.0, 0.0, 0.37, 2.0})
        CHECK(eval_rabi(p, t) == eval_rabi(p, t));
}

TEST_CASE("stirap pair window and sign-switched detuning") {
    StirapPair p;
    p.stokes_peak = mhz(40.0);
    p.pump_peak = mhz(30.0);
    p.stokes_center = -1.0;
    p.pump_center = 1.0;
    p.width = 1.0;
    p.detuning = mhz(10.0);
    auto [lo, hi] = support_window(p);
    CHECK(lo == Catch::Approx(-hi).epsilon(1e-15));
    CHECK(lo < -1.0);
    CHECK(hi > 1.0);
    CHECK(eval_detuning(p, -3.0) == mhz(10.0));

    p.rule = DetuningRule::sign_of_t;
    CHECK(eval_detuning(p, -0.5) == -mhz(10.0));
    CHECK(eval_detuning(p, 0.5) == mhz(10.0));
    // documented convention: sgn(0) = +1
    CHECK(eval_detuning(p, 0.0) == mhz(10.0));
    CHECK(pulse_breakpoints(StirapDrive{p}) == std::vector<double>{0.0});
}

TEST_CASE("optimized pair: envelopes and Pythagorean identity") {
    OptimizedStirapPair p;
    p.amplitude = mhz(50.0);
    p.hyper_width = 2.0;
    p.hyper_order = 3;
    p.steepness = 4.0;
    p.tau = 1.0;
    p.center = 4.0;

    // crossover f(0) = 1/2 forces equal envelopes at the center
    double expect = mhz(50.0) / std::sqrt(2.0);
    CHECK(eval_pump(p, 4.0) == Catch::Approx(expect).epsilon(1e-14));
    CHECK(eval_stokes(p, 4.0) == Catch::Approx(expect).epsilon(1e-14));

    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(0.0, 8.0);
    for (int i = 0; i < 1000; ++i) {
        double t = u(rng);
        double op = eval_pump(p, t), os = eval_stokes(p, t);
        double env = p.amplitude * hyper_envelope(p, t);
        if (env < 1e-300) continue;
        CHECK(std::abs(op * op + os * os - env * env) <= 1e-12 * env * env);
    }
}

TEST_CASE("nonlinear detuning polynomial") {
    NonlinearDetuningPulse p;
    p.rabi = mhz(2.1);
    p.centers = {0.5, 1.5};
    p.slope = -mhz(10.0);
    p.curvature = -mhz(2000.0);
    p.odd_power = 3;

    CHECK(eval_detuning(p, 0.5) == 0.0);
    CHECK(eval_detuning(p, 1.5) == 0.0);
    CHECK(eval_detuning(p, 0.6) == Catch::Approx(-mhz(3.0)).epsilon(1e-12));
    CHECK(eval_rabi(p, 0.123) == mhz(2.1));

    // odd_power = 3 segment is exactly a cubic: Lagrange interpolation through
    // 4 samples reproduces a 5th point
    double xs[4] = {0.05, 0.15, 0.30, 0.45};
    double ys[4];
    for (int i = 0; i < 4; ++i) ys[i] = eval_detuning(p, xs[i]);
    double xq = 0.22, yq = 0.0;
    for (int i = 0; i < 4; ++i) {
        double li = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) li *= (xq - xs[j]) / (xs[i] - xs[j]);
        yq += ys[i] * li;
    }
    CHECK(yq == Catch::Approx(eval_detuning(p, xq)).epsilon(1e-9));

    // each passage gets a window symmetric about its own center
    auto [lo, hi] = support_window(p);
    CHECK(lo == Catch::Approx(0.0).margin(1e-15));
    CHECK(hi == Catch::Approx(2.0).margin(1e-15));
    CHECK(pulse_breakpoints(TwoLevelPulse{p}) == std::vector<double>{1.0});
}

TEST_CASE("double sequence modes") {
    DoubleSequence s;
    s.first = {mhz(5.0), 1.0, 7.0, -mhz(1.0)};
    s.second_center = 21.0;

    SECTION("identical: second pulse repeats the first, shifted") {
        for (double dt : {-0.5, 0.0, 0.8}) {
            CHECK(eval_rabi(s, 21.0 + dt) ==
                  Catch::Approx(eval_rabi(s, 7.0 + dt)).epsilon(1e-12));
            CHECK(eval_detuning(s, 21.0 + dt) ==
                  Catch::Approx(eval_detuning(s, 7.0 + dt)).margin(1e-12));
        }
    }
    SECTION("phase_flipped: second Rabi is pointwise negated") {
        s.mode = SequenceMode::phase_flipped;
        for (double dt : {-0.5, 0.0, 0.8})
            CHECK(eval_rabi(s, 21.0 + dt) ==
                  Catch::Approx(-eval_rabi(s, 7.0 + dt)).epsilon(1e-12));
    }
    SECTION("detuning_sign_switched: second chirp is negated") {
        s.mode = SequenceMode::detuning_sign_switched;
        for (double dt : {-0.5, 0.8})
            CHECK(eval_detuning(s, 21.0 + dt) ==
                  Catch::Approx(-eval_detuning(s, 7.0 + dt)).epsilon(1e-12));
    }
    SECTION("window is segment-symmetric and covers both pulses") {
        auto [lo, hi] = support_window(s);
        CHECK(lo == Catch::Approx(0.0).margin(1e-12));
        CHECK(hi == Catch::Approx(28.0).margin(1e-12));
        CHECK(pulse_breakpoints(TwoLevelPulse{s}) == std::vector<double>{14.0});
    }
}
