#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <vector>

#include "pulses.hpp"
#include "statespace.hpp"

// Instantaneous Hermitian matrices for every model in the library, with
// hbar = 1: entries carry angular-frequency units (rad/us).

namespace adpass {

class HamiltonianModel {
  public:
    virtual ~HamiltonianModel() = default;
    virtual int dim() const = 0;
    virtual Eigen::MatrixXcd at(double t) const = 0;
    // interior times where H(t) is discontinuous; the propagator aligns its
    // grid with these and never evaluates stages across them
    virtual std::vector<double> breakpoints() const { return {}; }
};

// ---------------------------------------------------------------------------
// two-level ARP, H = (1/2) [[-delta, Omega0], [Omega0, delta]]
class ArpModel : public HamiltonianModel {
  public:
    explicit ArpModel(TwoLevelPulse pulse) : pulse_(std::move(pulse)) {}
    int dim() const override { return 2; }
    Eigen::MatrixXcd at(double t) const override {
        double om = eval_rabi(pulse_, t), d = eval_detuning(pulse_, t);
        Eigen::MatrixXcd h(2, 2);
        h << -0.5 * d, 0.5 * om, 0.5 * om, 0.5 * d;
        return h;
    }
    std::vector<double> breakpoints() const override { return pulse_breakpoints(pulse_); }
    const TwoLevelPulse& pulse() const { return pulse_; }

  private:
    TwoLevelPulse pulse_;
};

// two-level blockaded ensemble: ground <-> single-excitation coupling is
// sqrt(N)-enhanced
class TwoLevelEnsembleModel : public HamiltonianModel {
  public:
    TwoLevelEnsembleModel(int n_atoms, TwoLevelPulse pulse)
        : root_n_(std::sqrt(static_cast<double>(n_atoms))), pulse_(std::move(pulse)) {
        if (n_atoms < 1) throw ConfigError("atom count must be positive");
    }
    int dim() const override { return 2; }
    Eigen::MatrixXcd at(double t) const override {
        double om = root_n_ * eval_rabi(pulse_, t), d = eval_detuning(pulse_, t);
        Eigen::MatrixXcd h(2, 2);
        h << -0.5 * d, 0.5 * om, 0.5 * om, 0.5 * d;
        return h;
    }
    std::vector<double> breakpoints() const override { return pulse_breakpoints(pulse_); }

  private:
    double root_n_;
    TwoLevelPulse pulse_;
};

// ---------------------------------------------------------------------------
// N-atom three-level ensemble under perfect blockade. The matrix is
//   H(t) = (1/2) [Omega_P(t) A_P + Omega_S(t) A_S] + delta(t) N_e
// where A_P, A_S are the time-independent pump/Stokes coupling operators and
// N_e counts intermediate-state excitations (the printed two-atom matrix has
// 2*delta per e atom with an overall 1/2). N=1 reduces to the bare
// three-level system.
class EnsembleModel : public HamiltonianModel {
  public:
    EnsembleModel(BlockadedBasis basis, StirapDrive drive)
        : basis_(std::move(basis)), drive_(std::move(drive)) {
        if (basis_.scheme != LevelScheme::three_level)
            throw ConfigError("EnsembleModel requires a three-level scheme");
        build_operators();
    }

    int dim() const override { return basis_.dim(); }
    Eigen::MatrixXcd at(double t) const override {
        Eigen::MatrixXd h = 0.5 * (eval_pump(drive_, t) * a_pump_ +
                                   eval_stokes(drive_, t) * a_stokes_);
        h += eval_detuning(drive_, t) * e_count_.asDiagonal().toDenseMatrix();
        return h.cast<std::complex<double>>();
    }
    std::vector<double> breakpoints() const override { return pulse_breakpoints(drive_); }

    const BlockadedBasis& basis() const { return basis_; }
    const StirapDrive& drive() const { return drive_; }

  private:
    void build_operators() {
        int d = basis_.dim();
        a_pump_ = Eigen::MatrixXd::Zero(d, d);
        a_stokes_ = Eigen::MatrixXd::Zero(d, d);
        e_count_ = Eigen::VectorXd::Zero(d);
        if (basis_.rep == Representation::full) {
            for (int i = 0; i < d; ++i) {
                const auto& s = basis_.labels[i];
                e_count_(i) = static_cast<double>(std::count(s.begin(), s.end(), 'e'));
                for (size_t a = 0; a < s.size(); ++a) {
                    std::string up = s;
                    if (s[a] == 'g') {
                        up[a] = 'e';
                        couple(a_pump_, i, up);
                    } else if (s[a] == 'e') {
                        up[a] = 'r';
                        couple(a_stokes_, i, up);
                    }
                }
            }
            // couplings were accumulated one-directionally; make Hermitian
            a_pump_ = (a_pump_ + a_pump_.transpose()).eval();
            a_stokes_ = (a_stokes_ + a_stokes_.transpose()).eval();
        } else {
            // symmetric subspace: matrix elements follow from applying the
            // full-space operator to normalized Dicke states
            auto index = [&](int ne, int nr) -> int {
                for (int k = 0; k < d; ++k)
                    if (basis_.occupations[k].n_e == ne && basis_.occupations[k].n_r == nr)
                        return k;
                return -1;
            };
            int n = basis_.n_atoms;
            for (int i = 0; i < d; ++i) {
                auto [ne, nr] = basis_.occupations[i];
                e_count_(i) = ne;
                int ng = n - ne - nr;
                if (ng > 0) {
                    int j = index(ne + 1, nr);
                    if (j >= 0) {
                        double v = std::sqrt(static_cast<double>((ne + 1) * ng));
                        a_pump_(i, j) += v;
                        a_pump_(j, i) += v;
                    }
                }
                if (ne > 0 && nr == 0) {
                    int j = index(ne - 1, 1);
                    double v = std::sqrt(static_cast<double>(ne));
                    a_stokes_(i, j) += v;
                    a_stokes_(j, i) += v;
                }
            }
        }
    }
    void couple(Eigen::MatrixXd& op, int i, const std::string& target) {
        // blockade: target may be absent (double Rydberg removed)
        auto it = std::find(basis_.labels.begin(), basis_.labels.end(), target);
        if (it == basis_.labels.end()) return;
        int j = static_cast<int>(it - basis_.labels.begin());
        op(i, j) += 1.0;
    }

    BlockadedBasis basis_;
    StirapDrive drive_;
    Eigen::MatrixXd a_pump_, a_stokes_;
    Eigen::VectorXd e_count_;
};

// ---------------------------------------------------------------------------
// effective two-channel Stark-tuned interaction model,
//   H = [[0, V], [V, delta_F(t)]],  V = C3 / R^3
struct ForsterChannelParams {
    double defect_at_zero_field = 0.0;     // Delta [rad/us], reported only
    double coupling_coefficient = 0.0;     // C3 [rad*um^3/us]
    double distance = 1.0;                 // R [um]
    NonlinearDetuningPulse detuning_waveform;

    double coupling() const {
        if (distance <= 0.0) throw ConfigError("interatomic distance must be positive");
        return coupling_coefficient / (distance * distance * distance);
    }
};

class ForsterModel : public HamiltonianModel {
  public:
    explicit ForsterModel(ForsterChannelParams params)
        : params_(std::move(params)), v_(params_.coupling()) {}
    int dim() const override { return 2; }
    Eigen::MatrixXcd at(double t) const override {
        Eigen::MatrixXcd h(2, 2);
        h << 0.0, v_, v_, eval_detuning(params_.detuning_waveform, t);
        return h;
    }
    std::vector<double> breakpoints() const override {
        const auto& c = params_.detuning_waveform.centers;
        return {0.5 * (c[0] + c[1])};
    }
    const ForsterChannelParams& params() const { return params_; }
    double coupling() const { return v_; }

  private:
    ForsterChannelParams params_;
    double v_;
};

// convenience: the bare three-level system is the N=1 ensemble
inline EnsembleModel make_stirap_model(StirapDrive drive) {
    return EnsembleModel(build_basis(1, LevelScheme::three_level, Representation::full),
                         std::move(drive));
}

}  // namespace adpass
