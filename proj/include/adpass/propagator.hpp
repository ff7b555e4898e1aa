#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "hamiltonians.hpp"
#include "statespace.hpp"

// Fixed-step RK4 integration of i dc/dt = H(t) c, with the time grid split at
// Hamiltonian breakpoints and all stage evaluations clamped to the current
// segment (evaluating a stage across a discontinuity costs ~1e-7 in norm).

namespace adpass {

inline constexpr double default_steps_per_us = 1e4;
inline constexpr double phase_population_floor = 1e-6;

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    long n_steps = 0;  // 0: derive from steps_per_us
    double steps_per_us = default_steps_per_us;
    bool adaptive = false;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;

    long total_steps() const {
        if (n_steps > 0) return n_steps;
        long n = static_cast<long>(std::ceil((t_end - t_start) * steps_per_us));
        return std::max(n, 2L);
    }
    void validate() const {
        if (!(t_start < t_end)) throw ConfigError("time grid requires t_start < t_end");
        if (total_steps() < 2) throw ConfigError("time grid requires at least 2 steps");
    }
};

struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXcd amplitudes;   // sample x basis
    Eigen::MatrixXd populations;   // |amplitude|^2
    Eigen::MatrixXd phases;        // unwrapped arg, NaN below population floor
    std::vector<double> norms;

    int samples() const { return static_cast<int>(times.size()); }
    Eigen::VectorXcd final_state() const { return amplitudes.row(samples() - 1).transpose(); }
    double final_population(int k) const { return populations(samples() - 1, k); }
    double final_phase(int k) const { return phases(samples() - 1, k); }
    double max_norm_drift() const {
        double m = 0.0;
        for (double n : norms) m = std::max(m, std::abs(n - 1.0));
        return m;
    }
};

namespace detail {

inline std::vector<std::pair<double, double>> split_segments(const TimeGrid& grid,
                                                             std::vector<double> breaks) {
    std::sort(breaks.begin(), breaks.end());
    std::vector<std::pair<double, double>> segs;
    double a = grid.t_start;
    for (double b : breaks)
        if (b > grid.t_start && b < grid.t_end) {
            segs.emplace_back(a, b);
            a = b;
        }
    segs.emplace_back(a, grid.t_end);
    return segs;
}

// one classic RK4 step of i dc/dt = H(t) c; H evaluated through `h_of`
template <typename HFn>
inline void rk4_step(const HFn& h_of, double t, double h, Eigen::VectorXcd& psi,
                     Eigen::VectorXcd& k1, Eigen::VectorXcd& k2, Eigen::VectorXcd& k3,
                     Eigen::VectorXcd& k4) {
    const std::complex<double> mi(0.0, -1.0);
    k1 = mi * (h_of(t) * psi);
    k2 = mi * (h_of(t + 0.5 * h) * (psi + 0.5 * h * k1));
    k3 = mi * (h_of(t + 0.5 * h) * (psi + 0.5 * h * k2));
    k4 = mi * (h_of(t + h) * (psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// unwrap phases column-wise, masking samples whose population is below the
// floor; unwrapping resumes from the last valid sample
inline void fill_phases(Trajectory& traj) {
    int ns = traj.samples(), d = static_cast<int>(traj.amplitudes.cols());
    traj.phases = Eigen::MatrixXd::Constant(ns, d, std::numeric_limits<double>::quiet_NaN());
    for (int k = 0; k < d; ++k) {
        double offset = 0.0, prev = 0.0;
        bool have_prev = false;
        for (int i = 0; i < ns; ++i) {
            if (traj.populations(i, k) < phase_population_floor) continue;
            double raw = std::arg(traj.amplitudes(i, k));
            if (have_prev) {
                double jump = raw + offset - prev;
                offset -= two_pi * std::round(jump / two_pi);
            }
            double ph = raw + offset;
            traj.phases(i, k) = ph;
            prev = ph;
            have_prev = true;
        }
    }
}

}  // namespace detail

inline Trajectory propagate(const HamiltonianModel& model, const CollectiveState& psi0,
                            const TimeGrid& grid, int max_samples = 40000) {
    grid.validate();
    if (psi0.amplitudes.size() != model.dim())
        throw DimensionError("initial state dimension does not match model");
    if (!psi0.normalized()) throw ConfigError("initial state is not normalized");

    auto segments = detail::split_segments(grid, model.breakpoints());
    double span = grid.t_end - grid.t_start;
    long total = grid.total_steps();
    long stride = std::max(1L, total / std::max(1, max_samples));

    Trajectory traj;
    std::vector<Eigen::VectorXcd> recorded;
    Eigen::VectorXcd psi = psi0.amplitudes;
    auto record = [&](double t) {
        traj.times.push_back(t);
        recorded.push_back(psi);
    };
    record(grid.t_start);

    Eigen::VectorXcd k1, k2, k3, k4;
    for (auto [a, b] : segments) {
        // stage times never cross the segment's right edge, so the one-sided
        // limit of H is used at the discontinuity
        double eps = 1e-12 * std::max(1.0, std::abs(b));
        auto h_of = [&](double t) { return model.at(std::min(t, b - eps)); };

        if (!grid.adaptive) {
            long n = std::max(2L, static_cast<long>(std::llround(total * (b - a) / span)));
            double h = (b - a) / static_cast<double>(n);
            for (long i = 0; i < n; ++i) {
                double t = a + static_cast<double>(i) * h;
                detail::rk4_step(h_of, t, h, psi, k1, k2, k3, k4);
                if ((i + 1) % stride == 0 || i + 1 == n)
                    record(i + 1 == n ? b : t + h);
            }
        } else {
            // step-doubling error control on top of the same RK4 kernel
            double t = a, h = (b - a) / 100.0;
            double h_min = (b - a) * 1e-12;
            while (t < b - eps) {
                h = std::min(h, b - t);
                Eigen::VectorXcd full = psi, half = psi;
                detail::rk4_step(h_of, t, h, full, k1, k2, k3, k4);
                detail::rk4_step(h_of, t, 0.5 * h, half, k1, k2, k3, k4);
                detail::rk4_step(h_of, t + 0.5 * h, 0.5 * h, half, k1, k2, k3, k4);
                double err = (full - half).norm();
                double tol = grid.abs_tol + grid.rel_tol * half.norm();
                if (err <= tol) {
                    psi = half;
                    t += h;
                    record(t);
                }
                double scale = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
                h *= std::clamp(scale, 0.1, 4.0);
                if (h < h_min)
                    throw IntegrationError("adaptive step size underflow", t);
            }
        }
    }

    int ns = static_cast<int>(recorded.size());
    traj.amplitudes.resize(ns, model.dim());
    for (int i = 0; i < ns; ++i) traj.amplitudes.row(i) = recorded[i];
    traj.populations = traj.amplitudes.cwiseAbs2();
    traj.norms.resize(ns);
    for (int i = 0; i < ns; ++i) traj.norms[i] = traj.amplitudes.row(i).norm();
    detail::fill_phases(traj);
    return traj;
}

// ---------------------------------------------------------------------------
// instantaneous eigenvalues, continuity-ordered between samples

struct EigenTrack {
    std::vector<double> times;
    Eigen::MatrixXd eigenvalues;  // sample x dim, continuity-ordered
    int initial_state_branch = 0;
    std::vector<int> ambiguous_samples;  // nearest-match tie within tolerance
};

inline EigenTrack eigen_track(const HamiltonianModel& model, const TimeGrid& grid,
                              const CollectiveState& psi0, int n_samples = 2000) {
    grid.validate();
    if (model.dim() > 64) throw CapacityError("eigen_track supports dimension <= 64");
    EigenTrack track;
    int d = model.dim();
    track.eigenvalues.resize(n_samples, d);
    std::vector<int> perm(d);
    Eigen::VectorXd prev(d);
    for (int i = 0; i < n_samples; ++i) {
        double t = grid.t_start +
                   (grid.t_end - grid.t_start) * static_cast<double>(i) / (n_samples - 1);
        track.times.push_back(t);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(model.at(t));
        Eigen::VectorXd vals = solver.eigenvalues();
        if (i == 0) {
            for (int k = 0; k < d; ++k) track.eigenvalues(0, k) = vals(k);
            // branch occupied by the initial state, by eigenvector overlap
            int best = 0;
            double best_ov = -1.0;
            for (int k = 0; k < d; ++k) {
                double ov = std::abs(solver.eigenvectors().col(k).dot(psi0.amplitudes));
                if (ov > best_ov) {
                    best_ov = ov;
                    best = k;
                }
            }
            track.initial_state_branch = best;
        } else {
            // greedy nearest-match to the previous sample's ordered values
            std::vector<bool> used(d, false);
            bool ambiguous = false;
            for (int k = 0; k < d; ++k) {
                int pick = -1;
                double best = std::numeric_limits<double>::infinity(), second = best;
                for (int m = 0; m < d; ++m) {
                    if (used[m]) continue;
                    double dist = std::abs(vals(m) - prev(k));
                    if (dist < best) {
                        second = best;
                        best = dist;
                        pick = m;
                    } else if (dist < second) {
                        second = dist;
                    }
                }
                if (second - best < 1e-12 * std::max(1.0, std::abs(prev(k))))
                    ambiguous = true;
                used[pick] = true;
                track.eigenvalues(i, k) = vals(pick);
            }
            if (ambiguous) {
                track.ambiguous_samples.push_back(i);
                // fall back to plain value sort at ambiguous crossings
                Eigen::VectorXd sorted = vals;
                std::sort(sorted.data(), sorted.data() + d);
                for (int k = 0; k < d; ++k) track.eigenvalues(i, k) = sorted(k);
            }
        }
        prev = track.eigenvalues.row(i);
    }
    return track;
}

// unwrapped phase history of one basis component
inline std::vector<double> extract_phase(const Trajectory& traj, int basis_index) {
    std::vector<double> out(traj.samples());
    for (int i = 0; i < traj.samples(); ++i) out[i] = traj.phases(i, basis_index);
    return out;
}

// total single-Rydberg population at the end of a run
inline double run_excitation_probability(const HamiltonianModel& model,
                                         const BlockadedBasis& basis,
                                         const TimeGrid& grid) {
    Trajectory traj = propagate(model, ground_state(basis), grid);
    double p1 = 0.0;
    for (int k : rydberg_indices(basis)) p1 += traj.final_population(k);
    return p1;
}

}  // namespace adpass
