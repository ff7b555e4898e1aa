#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "propagator.hpp"
#include "pulses.hpp"

// Analytic adiabatic-approximation companions: dressed-state mixing angle,
// generalized pulse area, closed-form double-passage amplitudes, and phase
// prediction from eigenvalue tracks.

namespace adpass {

// mixing angle with sin(theta) = sqrt((1 - delta/W)/2),
// cos(theta) = sqrt((1 + delta/W)/2), W = sqrt(Omega0^2 + delta^2);
// theta in [0, pi/2]. `flipped` selects the sign-flipped branch (theta -> -theta)
// used for the second pulse of a double sequence.
inline double mixing_angle(double omega0, double delta, bool flipped = false) {
    double w = std::hypot(omega0, delta);
    if (w == 0.0) throw ConfigError("mixing angle undefined for Omega0 = delta = 0");
    double theta = 0.5 * std::acos(std::clamp(delta / w, -1.0, 1.0));
    return flipped ? -theta : theta;
}

inline double effective_rabi(double omega0, double delta) {
    return std::hypot(omega0, delta);
}

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double tol = std::max(std::abs(whole), 1.0) * rel_tol;
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

struct PulseArea {
    double value = 0.0;  // S [rad]
    double t_start = 0.0, t_end = 0.0;
};

// generalized pulse area S = Int sqrt(Omega0^2 + delta^2) dt
inline PulseArea generalized_area(const TwoLevelPulse& pulse, double t_start, double t_end) {
    if (!(t_start < t_end)) throw ConfigError("invalid area window");
    auto f = [&](double t) {
        return effective_rabi(eval_rabi(pulse, t), eval_detuning(pulse, t));
    };
    return {detail::integrate(f, t_start, t_end, 1e-11), t_start, t_end};
}

// max of |dOmega0/dt|/W^2 and |ddelta/dt|/W^2 along the grid
inline std::vector<double> adiabaticity_margin(const TwoLevelPulse& pulse,
                                               const TimeGrid& grid, int n_samples = 2000) {
    std::vector<double> out(n_samples);
    double dt = 1e-6;
    for (int i = 0; i < n_samples; ++i) {
        double t = grid.t_start +
                   (grid.t_end - grid.t_start) * static_cast<double>(i) / (n_samples - 1);
        double om = eval_rabi(pulse, t), d = eval_detuning(pulse, t);
        double w2 = om * om + d * d;
        if (w2 == 0.0) {
            out[i] = std::numeric_limits<double>::infinity();
            continue;
        }
        double dom = (eval_rabi(pulse, t + dt) - eval_rabi(pulse, t - dt)) / (2.0 * dt);
        double dd = (eval_detuning(pulse, t + dt) - eval_detuning(pulse, t - dt)) / (2.0 * dt);
        out[i] = std::max(std::abs(dom), std::abs(dd)) / w2;
    }
    return out;
}

struct DoubleArpPrediction {
    std::complex<double> amplitude;  // predicted c1 after the double passage
    bool adiabatic = true;           // false if the margin check failed
    double max_margin = 0.0;
};

// closed-form double-ARP amplitude: identical pulses give -exp(i(S2-S1)) = -1,
// a phase-flipped second pulse gives +1
inline DoubleArpPrediction predict_double_arp_amplitude(const DoubleSequence& seq,
                                                        double margin_threshold = 0.1) {
    double mid = sequence_midpoint(seq);
    auto [lo, hi] = support_window(seq);
    TwoLevelPulse p{seq};
    double s1 = generalized_area(p, lo, mid).value;
    double s2 = generalized_area(p, mid, hi).value;
    std::complex<double> amp = std::polar(1.0, s2 - s1);
    if (seq.mode != SequenceMode::phase_flipped) amp = -amp;

    DoubleArpPrediction pred{amp, true, 0.0};
    TimeGrid grid{lo, hi};
    for (double m : adiabaticity_margin(p, grid))
        if (std::isfinite(m)) pred.max_margin = std::max(pred.max_margin, m);
    pred.adiabatic = pred.max_margin < margin_threshold;
    return pred;
}

// cumulative -Int E dt along the occupied branch, wrapped to (-pi, pi]
inline std::vector<double> predict_phase_from_eigentrack(const EigenTrack& track) {
    int branch = track.initial_state_branch;
    std::vector<double> out(track.times.size(), 0.0);
    double acc = 0.0;
    for (size_t i = 1; i < track.times.size(); ++i) {
        double dt = track.times[i] - track.times[i - 1];
        acc -= 0.5 * dt *
               (track.eigenvalues(static_cast<int>(i), branch) +
                track.eigenvalues(static_cast<int>(i - 1), branch));
        double w = std::remainder(acc, two_pi);
        out[i] = (w <= -std::numbers::pi) ? w + two_pi : w;
    }
    return out;
}

inline double wrap_phase(double phi) {
    double w = std::remainder(phi, two_pi);
    return (w <= -std::numbers::pi) ? w + two_pi : w;
}

}  // namespace adpass
