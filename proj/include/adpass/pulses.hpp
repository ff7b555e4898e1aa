#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "units.hpp"

// Time-dependent Rabi-frequency and detuning waveforms. All pulse types are
// plain value types; eval_* functions are pure.

namespace adpass {

// envelopes below this fraction of peak are treated as zero for *window*
// computation only (never for evaluation)
inline constexpr double envelope_truncation = 1e-8;

// half-width at which a unit Gaussian drops to `envelope_truncation`
inline double gaussian_support_halfwidth(double width) {
    return width * std::sqrt(-2.0 * std::log(envelope_truncation));
}

inline double gauss(double x, double w) { return std::exp(-x * x / (2.0 * w * w)); }

// ---------------------------------------------------------------------------
// two-level ARP pulse: Omega(t) = Omega0 exp(-(t-c)^2/2w^2), delta(t) = alpha (t-c)
struct GaussianChirpPulse {
    double peak_rabi = 0.0;   // Omega0 [rad/us]
    double width = 1.0;       // w [us]
    double center = 0.0;      // [us]
    double chirp_rate = 0.0;  // alpha [rad/us^2]
    int phase_sign = +1;      // -1 flips the Rabi sign (second pulse of a flipped pair)
};

inline double eval_rabi(const GaussianChirpPulse& p, double t) {
    return p.phase_sign * p.peak_rabi * gauss(t - p.center, p.width);
}
inline double eval_detuning(const GaussianChirpPulse& p, double t) {
    return p.chirp_rate * (t - p.center);
}
inline std::pair<double, double> support_window(const GaussianChirpPulse& p) {
    double h = gaussian_support_halfwidth(p.width);
    return {p.center - h, p.center + h};
}

// ---------------------------------------------------------------------------
// counterintuitive Stokes/pump Gaussian pair with constant or sign-switched
// detuning
enum class DetuningRule { constant, sign_of_t };

struct StirapPair {
    double stokes_peak = 0.0;    // Omega_S0 [rad/us]
    double pump_peak = 0.0;      // Omega_P0 [rad/us]
    double stokes_center = 0.0;  // t1 [us], precedes the pump
    double pump_center = 0.0;    // t2 [us]
    double width = 1.0;          // w [us]
    double detuning = 0.0;       // delta [rad/us]
    DetuningRule rule = DetuningRule::constant;
};

inline double eval_pump(const StirapPair& p, double t) {
    return p.pump_peak * gauss(t - p.pump_center, p.width);
}
inline double eval_stokes(const StirapPair& p, double t) {
    return p.stokes_peak * gauss(t - p.stokes_center, p.width);
}
inline double eval_detuning(const StirapPair& p, double t) {
    return p.rule == DetuningRule::sign_of_t ? p.detuning * sgn(t) : p.detuning;
}
inline std::pair<double, double> support_window(const StirapPair& p) {
    double h = gaussian_support_halfwidth(p.width);
    return {std::min(p.stokes_center, p.pump_center) - h,
            std::max(p.stokes_center, p.pump_center) + h};
}

// ---------------------------------------------------------------------------
// double STIRAP sequence: each channel is a sum of two Gaussians (transfer
// and back-transfer), used by the phase-accumulation scenarios
struct DoubleStirap {
    double pump_peak = 0.0;
    double stokes_peak = 0.0;
    std::array<double, 2> pump_centers{};
    std::array<double, 2> stokes_centers{};
    double width = 1.0;
    double detuning = 0.0;
    DetuningRule rule = DetuningRule::constant;
};

inline double eval_pump(const DoubleStirap& p, double t) {
    return p.pump_peak *
           (gauss(t - p.pump_centers[0], p.width) + gauss(t - p.pump_centers[1], p.width));
}
inline double eval_stokes(const DoubleStirap& p, double t) {
    return p.stokes_peak *
           (gauss(t - p.stokes_centers[0], p.width) + gauss(t - p.stokes_centers[1], p.width));
}
inline double eval_detuning(const DoubleStirap& p, double t) {
    return p.rule == DetuningRule::sign_of_t ? p.detuning * sgn(t) : p.detuning;
}
inline std::pair<double, double> support_window(const DoubleStirap& p) {
    double h = gaussian_support_halfwidth(p.width);
    double lo = std::min({p.pump_centers[0], p.pump_centers[1], p.stokes_centers[0],
                          p.stokes_centers[1]});
    double hi = std::max({p.pump_centers[0], p.pump_centers[1], p.stokes_centers[0],
                          p.stokes_centers[1]});
    return {lo - h, hi + h};
}

// ---------------------------------------------------------------------------
// flat-top pair with hyper-Gaussian envelope and sigmoid crossover:
//   Omega_P = A F(x) cos(pi f(x)/2),  Omega_S = A F(x) sin(pi f(x)/2)
//   F(x) = exp[-(x/T0)^2n],  f(x) = 1/(1+exp(-lambda x/tau)),  x = t - t0
struct OptimizedStirapPair {
    double amplitude = 0.0;   // Omega_V [rad/us]
    double hyper_width = 2.0; // T0 [us]
    int hyper_order = 3;      // n
    double steepness = 4.0;   // lambda
    double tau = 1.0;         // [us]; binding rule tau = T0/2
    double center = 0.0;      // t0 [us]
    double detuning = 0.0;    // delta [rad/us]
};

inline double hyper_envelope(const OptimizedStirapPair& p, double t) {
    double u = (t - p.center) / p.hyper_width;
    return std::exp(-std::pow(u * u, p.hyper_order));
}
inline double crossover(const OptimizedStirapPair& p, double t) {
    return 1.0 / (1.0 + std::exp(-p.steepness * (t - p.center) / p.tau));
}
inline double eval_pump(const OptimizedStirapPair& p, double t) {
    return p.amplitude * hyper_envelope(p, t) *
           std::cos(0.5 * std::numbers::pi * crossover(p, t));
}
inline double eval_stokes(const OptimizedStirapPair& p, double t) {
    return p.amplitude * hyper_envelope(p, t) *
           std::sin(0.5 * std::numbers::pi * crossover(p, t));
}
inline double eval_detuning(const OptimizedStirapPair& p, double) { return p.detuning; }
inline std::pair<double, double> support_window(const OptimizedStirapPair& p) {
    double h = p.hyper_width *
               std::pow(-std::log(envelope_truncation), 0.5 / p.hyper_order);
    return {p.center - h, p.center + h};
}

// ---------------------------------------------------------------------------
// constant Rabi frequency with piecewise odd-polynomial detuning,
//   delta_j(t) = s1 (t - t_j) + s2 (t - t_j)^p,  p in {3, 5}
// one polynomial segment per center; segment boundaries at midpoints
struct NonlinearDetuningPulse {
    double rabi = 0.0;                 // Omega0 [rad/us], constant
    std::array<double, 2> centers{};   // t_j [us], ascending
    double slope = 0.0;                // s1 [rad/us^2]
    double curvature = 0.0;            // s2 [rad/us^(p+1)]
    int odd_power = 3;                 // p
};

inline double eval_rabi(const NonlinearDetuningPulse& p, double) { return p.rabi; }
inline double eval_detuning(const NonlinearDetuningPulse& p, double t) {
    double mid = 0.5 * (p.centers[0] + p.centers[1]);
    double x = t - (t < mid ? p.centers[0] : p.centers[1]);
    return p.slope * x + p.curvature * std::pow(x, p.odd_power);
}
// segment-symmetric window: each passage gets an interval symmetric about its
// center so the per-passage detuning integral vanishes exactly
inline std::pair<double, double> support_window(const NonlinearDetuningPulse& p) {
    double half = 0.5 * (p.centers[1] - p.centers[0]);
    return {p.centers[0] - half, p.centers[1] + half};
}

// ---------------------------------------------------------------------------
// two consecutive ARP pulses sharing one shape
enum class SequenceMode { identical, phase_flipped, detuning_sign_switched };

struct DoubleSequence {
    GaussianChirpPulse first;      // second pulse is the same shape shifted
    double second_center = 0.0;
    SequenceMode mode = SequenceMode::identical;
};

inline double sequence_midpoint(const DoubleSequence& s) {
    return 0.5 * (s.first.center + s.second_center);
}
inline double eval_rabi(const DoubleSequence& s, double t) {
    bool late = t >= sequence_midpoint(s);
    GaussianChirpPulse p = s.first;
    if (late) {
        p.center = s.second_center;
        if (s.mode == SequenceMode::phase_flipped) p.phase_sign = -p.phase_sign;
    }
    return eval_rabi(p, t);
}
inline double eval_detuning(const DoubleSequence& s, double t) {
    bool late = t >= sequence_midpoint(s);
    GaussianChirpPulse p = s.first;
    if (late) {
        p.center = s.second_center;
        if (s.mode == SequenceMode::detuning_sign_switched) p.chirp_rate = -p.chirp_rate;
    }
    return eval_detuning(p, t);
}
// segment-symmetric window, same rationale as NonlinearDetuningPulse
inline std::pair<double, double> support_window(const DoubleSequence& s) {
    double half = 0.5 * (s.second_center - s.first.center);
    return {s.first.center - half, s.second_center + half};
}

// ---------------------------------------------------------------------------
// variant over all two-level drive shapes (single ARP line)
using TwoLevelPulse = std::variant<GaussianChirpPulse, NonlinearDetuningPulse, DoubleSequence>;

inline double eval_rabi(const TwoLevelPulse& p, double t) {
    return std::visit([t](const auto& q) { return eval_rabi(q, t); }, p);
}
inline double eval_detuning(const TwoLevelPulse& p, double t) {
    return std::visit([t](const auto& q) { return eval_detuning(q, t); }, p);
}
inline std::pair<double, double> support_window(const TwoLevelPulse& p) {
    return std::visit([](const auto& q) { return support_window(q); }, p);
}

// variant over three-level (pump/Stokes) drives
using StirapDrive = std::variant<StirapPair, DoubleStirap, OptimizedStirapPair>;

inline double eval_pump(const StirapDrive& p, double t) {
    return std::visit([t](const auto& q) { return eval_pump(q, t); }, p);
}
inline double eval_stokes(const StirapDrive& p, double t) {
    return std::visit([t](const auto& q) { return eval_stokes(q, t); }, p);
}
inline double eval_detuning(const StirapDrive& p, double t) {
    return std::visit([t](const auto& q) { return eval_detuning(q, t); }, p);
}
inline std::pair<double, double> support_window(const StirapDrive& p) {
    return std::visit([](const auto& q) { return support_window(q); }, p);
}

// Hamiltonian discontinuities a propagator must align its grid with
inline std::vector<double> pulse_breakpoints(const TwoLevelPulse& p) {
    if (std::holds_alternative<NonlinearDetuningPulse>(p)) {
        const auto& q = std::get<NonlinearDetuningPulse>(p);
        return {0.5 * (q.centers[0] + q.centers[1])};
    }
    if (std::holds_alternative<DoubleSequence>(p))
        return {sequence_midpoint(std::get<DoubleSequence>(p))};
    return {};
}
inline std::vector<double> pulse_breakpoints(const StirapDrive& p) {
    bool switched = std::visit([](const auto& q) {
        if constexpr (requires { q.rule; })
            return q.rule == DetuningRule::sign_of_t;
        else
            return false;
    }, p);
    if (switched) return {0.0};
    return {};
}

}  // namespace adpass
