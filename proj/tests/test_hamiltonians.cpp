#include <catch2/catch_amalgamated.hpp>

#include <adpass/hamiltonians.hpp>

#include <random>

using namespace adpass;

namespace {

double hermiticity_defect(const Eigen::MatrixXcd& h) {
    double scale = std::max(1.0, h.norm());
    return (h - h.adjoint()).norm() / scale;
}

StirapPair reference_pair(double det_mhz) {
    StirapPair p;
    p.pump_peak = mhz(40.0);
    p.stokes_peak = mhz(30.0);
    p.stokes_center = -1.0;
    p.pump_center = 1.0;
    p.width = 1.0;
    p.detuning = mhz(det_mhz);
    return p;
}

}  // namespace

TEST_CASE("two-level chirped Hamiltonian") {
    SECTION("zero pulse gives the zero matrix") {
        ArpModel m{TwoLevelPulse{GaussianChirpPulse{0.0, 1.0, 0.0, 0.0}}};
        CHECK(m.at(0.3).norm() == 0.0);
    }
    SECTION("resonant coupling has symmetric eigenvalues") {
        ArpModel m{TwoLevelPulse{GaussianChirpPulse{mhz(5.0), 1.0, 0.0, 0.0}}};
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.at(0.0));
        CHECK(es.eigenvalues()(0) == Catch::Approx(-mhz(5.0) / 2).epsilon(1e-12));
        CHECK(es.eigenvalues()(1) == Catch::Approx(mhz(5.0) / 2).epsilon(1e-12));
    }
    SECTION("chirped inversion parameters at the sweep center") {
        ArpModel m{TwoLevelPulse{GaussianChirpPulse{mhz(5.0), 1.0, 0.0, -mhz(1.0)}}};
        Eigen::MatrixXcd h = m.at(0.0);
        CHECK(std::abs(h(0, 1) - mhz(2.5)) < 1e-12);
        CHECK(std::abs(h(0, 0)) < 1e-12);
        CHECK(std::abs(h(1, 1)) < 1e-12);
    }
}

TEST_CASE("three-level Hamiltonian has a dark state") {
    EnsembleModel m = make_stirap_model(StirapDrive{reference_pair(5.0)});
    SECTION("eigenvalues are 0 and +-(1/2)sqrt(delta^2 + P^2 + S^2)") {
        for (double t : {-2.0, -0.4, 0.0, 0.9, 2.5}) {
            Eigen::MatrixXcd h = m.at(t);
            double p = 2.0 * std::abs(h(0, 1)), s = 2.0 * std::abs(h(1, 2));
            double d = std::real(h(1, 1));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
            double w = 0.5 * std::sqrt(d * d + p * p + s * s);
            double zero = 1e10;
            for (int k = 0; k < 3; ++k) zero = std::min(zero, std::abs(es.eigenvalues()(k)));
            CHECK(zero < 1e-10 * std::max(1.0, h.norm()));
            CHECK(es.eigenvalues()(2) - es.eigenvalues()(0) ==
                  Catch::Approx(2.0 * w).epsilon(1e-9));
        }
    }
    SECTION("no coupling leaves only the intermediate-state shift") {
        EnsembleModel bare = make_stirap_model(StirapDrive{reference_pair(200.0)});
        Eigen::MatrixXcd h = bare.at(-20.0);  // far outside the envelopes
        CHECK(std::abs(h(0, 0)) < 1e-9);
        CHECK(std::abs(h(2, 2)) < 1e-9);
        CHECK(std::real(h(1, 1)) == Catch::Approx(mhz(200.0)).epsilon(1e-12));
    }
    SECTION("equal resonant couplings: (|g> - |r>)/sqrt(2) has eigenvalue 0") {
        EnsembleModel res = make_stirap_model(StirapDrive{[] {
            StirapPair p = reference_pair(0.0);
            p.pump_peak = p.stokes_peak = mhz(10.0);
            return p;
        }()});
        Eigen::VectorXcd v(3);
        v << 1.0, 0.0, -1.0;
        v /= std::sqrt(2.0);
        CHECK((res.at(0.0) * v).norm() < 1e-10);
    }
}

TEST_CASE("two-atom ensemble reproduces the printed eight-state matrix") {
    BlockadedBasis b = build_basis(2, LevelScheme::three_level, Representation::full);
    StirapPair pair = reference_pair(7.0);
    EnsembleModel m(b, StirapDrive{pair});
    double t = 0.37;
    double p = 0.5 * eval_pump(pair, t), s = 0.5 * eval_stokes(pair, t);
    double d = eval_detuning(pair, t);

    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(8, 8);
    auto at = [&](const char* a) { return b.index_of(a); };
    auto couple = [&](const char* a, const char* c, double v) {
        expect(at(a), at(c)) = v;
        expect(at(c), at(a)) = v;
    };
    // pump g<->e per atom
    couple("gg", "ge", p);
    couple("gg", "eg", p);
    couple("ge", "ee", p);
    couple("eg", "ee", p);
    couple("gr", "er", p);
    couple("rg", "re", p);
    // Stokes e<->r per atom (double Rydberg removed)
    couple("ge", "gr", s);
    couple("eg", "rg", s);
    couple("ee", "er", s);
    couple("ee", "re", s);
    // diagonal: delta per intermediate-state excitation
    for (const auto& lbl : b.labels)
        expect(at(lbl.c_str()), at(lbl.c_str())) =
            d * std::count(lbl.begin(), lbl.end(), 'e');

    CHECK((m.at(t) - expect.cast<std::complex<double>>()).norm() < 1e-12 * expect.norm());
}

TEST_CASE("single atom reduces to the bare three-level system") {
    BlockadedBasis b1 = build_basis(1, LevelScheme::three_level, Representation::full);
    EnsembleModel one(b1, StirapDrive{reference_pair(5.0)});
    EnsembleModel bare = make_stirap_model(StirapDrive{reference_pair(5.0)});
    for (double t : {-1.0, 0.0, 2.0})
        CHECK((one.at(t) - bare.at(t)).norm() < 1e-14);
}

TEST_CASE("symmetric representation carries combinatorial enhancements") {
    BlockadedBasis sym = build_basis(2, LevelScheme::three_level, Representation::symmetric);
    StirapPair pair = reference_pair(0.0);
    EnsembleModel m(sym, StirapDrive{pair});
    double t = 0.1;
    int i_g = 0;  // (n_e, n_r) = (0, 0)
    int i_e = -1;
    for (int k = 0; k < sym.dim(); ++k)
        if (sym.occupations[k].n_e == 1 && sym.occupations[k].n_r == 0) i_e = k;
    REQUIRE(i_e >= 0);
    double expect = std::sqrt(2.0) * 0.5 * eval_pump(pair, t);
    CHECK(std::abs(m.at(t)(i_g, i_e) - expect) < 1e-12 * std::abs(expect));
}

TEST_CASE("resonant two-atom ensemble keeps a zero eigenvalue throughout") {
    BlockadedBasis sym = build_basis(2, LevelScheme::three_level, Representation::symmetric);
    EnsembleModel m(sym, StirapDrive{reference_pair(0.0)});
    for (double t = -4.0; t <= 4.0; t += 0.25) {
        Eigen::MatrixXcd h = m.at(t);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        double zero = es.eigenvalues().cwiseAbs().minCoeff();
        CHECK(zero < 1e-10 * std::max(1.0, h.norm()));
    }
}

TEST_CASE("sqrt(N)-enhanced two-level ensemble") {
    TwoLevelPulse pulse{GaussianChirpPulse{mhz(2.0), 1.0, 0.0, -mhz(1.0)}};
    TwoLevelEnsembleModel one(1, pulse), four(4, pulse);
    ArpModel arp(pulse);
    for (double t : {-0.5, 0.0, 1.3}) {
        CHECK((one.at(t) - arp.at(t)).norm() < 1e-14);
        CHECK(std::abs(four.at(t)(0, 1) - 2.0 * one.at(t)(0, 1)) < 1e-14);
        CHECK(std::abs(four.at(t)(1, 1) - one.at(t)(1, 1)) < 1e-14);
    }
    CHECK_THROWS_AS(TwoLevelEnsembleModel(0, pulse), ConfigError);
}

TEST_CASE("interaction channel model") {
    ForsterChannelParams c;
    c.coupling_coefficient = mhz(2.0) * 15.5 * 15.5 * 15.5;
    c.distance = 15.5;
    c.detuning_waveform.centers = {-0.3, 0.2993};
    c.detuning_waveform.slope = mhz(22.6);
    c.detuning_waveform.curvature = mhz(28800.0);
    c.detuning_waveform.odd_power = 5;

    ForsterModel m(c);
    CHECK(m.coupling() == Catch::Approx(mhz(2.0)).epsilon(1e-12));
    SECTION("exact resonance at each waveform center") {
        CHECK(std::abs(m.at(-0.3)(1, 1)) < 1e-12);
        CHECK(std::abs(m.at(0.2993)(1, 1)) < 1e-12);
    }
    SECTION("coupling follows the cubic distance law") {
        ForsterChannelParams far = c;
        far.distance = 2.0 * c.distance;
        CHECK(ForsterModel(far).coupling() ==
              Catch::Approx(m.coupling() / 8.0).epsilon(1e-12));
    }
    SECTION("nonpositive distance is rejected") {
        ForsterChannelParams bad = c;
        bad.distance = 0.0;
        CHECK_THROWS_AS(ForsterModel(bad), ConfigError);
    }
}

TEST_CASE("all models are Hermitian at random times") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-5.0, 5.0);

    ArpModel arp{TwoLevelPulse{GaussianChirpPulse{mhz(5.0), 1.0, 0.0, -mhz(1.0)}}};
    EnsembleModel stirap = make_stirap_model(StirapDrive{reference_pair(5.0)});
    EnsembleModel full(build_basis(3, LevelScheme::three_level, Representation::full),
                       StirapDrive{reference_pair(5.0)});
    EnsembleModel sym(build_basis(7, LevelScheme::three_level, Representation::symmetric),
                      StirapDrive{reference_pair(5.0)});
    ForsterChannelParams c;
    c.coupling_coefficient = mhz(2.0);
    c.distance = 1.0;
    c.detuning_waveform.centers = {-0.3, 0.3};
    c.detuning_waveform.slope = mhz(22.6);
    c.detuning_waveform.odd_power = 5;
    ForsterModel forster(c);

    const HamiltonianModel* models[] = {&arp, &stirap, &full, &sym, &forster};
    for (const auto* m : models)
        for (int i = 0; i < 1000; ++i)
            CHECK(hermiticity_defect(m->at(u(rng))) < 1e-12);
}
