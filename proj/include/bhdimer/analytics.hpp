// analytics.hpp: Dephasing theory of the Josephson current: sector-sum
// reconstruction, squeezed Gaussian number distribution, decay-time estimate,
// Gaussian-envelope fitting and revival detection.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bhdimer/errors.hpp"
#include "bhdimer/meanfield.hpp"
#include "bhdimer/observables.hpp"

namespace bhdimer {

enum class FrequencyModel {
    josephson,  // omega_N = sqrt(J^2 + 4 J U N)
    bogoliubov, // omega_N = sqrt(J^2 + J U N)
};

inline double model_frequency(FrequencyModel m, double J, double U, double N) {
    return m == FrequencyModel::josephson ? josephson_frequency(J, U * N)
                                          : bogoliubov_frequency(J, U, N);
}

// How P_N evolves while the current is reconstructed.
enum class HistogramEvolution {
    frozen,  // P_N fixed at its switch-off value
    shifted, // P_N rigidly shifted so the mean follows N(0) exp(-gamma t)
    exact,   // caller supplies P_N(t) for every grid point
};

struct ReconstructionOptions {
    FrequencyModel frequency{FrequencyModel::josephson};
    HistogramEvolution evolution{HistogramEvolution::shifted};
    double gamma{0.0}; // used by `shifted`
};

namespace detail {

// P evaluated at fractional index x by linear interpolation; zero outside.
inline double interpolate_histogram(const std::vector<double>& p, double x) {
    if (x < 0.0 || x > static_cast<double>(p.size() - 1)) return 0.0;
    const auto k = static_cast<std::size_t>(std::floor(x));
    if (k + 1 >= p.size()) return p.back();
    const double f = x - static_cast<double>(k);
    return (1.0 - f) * p[k] + f * p[k + 1];
}

} // namespace detail

// s(t) = sum_N P_N(t) sin(omega_N t), t measured from switch-off. Unscaled;
// see scale_to_reference.
inline std::vector<double> reconstruct_current(const NumberHistogram& P, double J, double U,
                                               std::span<const double> t_grid,
                                               const ReconstructionOptions& opt = {},
                                               std::span<const NumberHistogram> exact = {}) {
    if (P.p.empty()) throw std::invalid_argument("reconstruct_current: empty histogram");
    if (opt.evolution == HistogramEvolution::exact && exact.size() != t_grid.size()) {
        throw std::invalid_argument("reconstruct_current: exact mode needs one histogram per time");
    }
    const std::size_t n = P.p.size();
    std::vector<double> omega(n);
    for (std::size_t N = 0; N < n; ++N) {
        omega[N] = model_frequency(opt.frequency, J, U, static_cast<double>(N));
    }
    const double mean0 = P.mean();
    std::vector<double> out(t_grid.size(), 0.0);
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double t = t_grid[k];
        double s = 0.0;
        switch (opt.evolution) {
        case HistogramEvolution::frozen:
            for (std::size_t N = 0; N < n; ++N) s += P.p[N] * std::sin(omega[N] * t);
            break;
        case HistogramEvolution::shifted: {
            const double shift = mean0 * (1.0 - std::exp(-opt.gamma * t));
            for (std::size_t N = 0; N < n; ++N) {
                const double w = detail::interpolate_histogram(P.p, static_cast<double>(N) + shift);
                s += w * std::sin(omega[N] * t);
            }
            break;
        }
        case HistogramEvolution::exact: {
            const auto& q = exact[k].p;
            for (std::size_t N = 0; N < std::min(n, q.size()); ++N) s += q[N] * std::sin(omega[N] * t);
            break;
        }
        }
        out[k] = s;
    }
    return out;
}

// Index of the first interior local extremum of x, if any.
inline std::optional<std::size_t> first_extremum(std::span<const double> x) {
    for (std::size_t k = 1; k + 1 < x.size(); ++k) {
        const double a = x[k] - x[k - 1];
        const double b = x[k + 1] - x[k];
        if ((a > 0.0 && b <= 0.0) || (a < 0.0 && b >= 0.0)) return k;
    }
    return std::nullopt;
}

// Multiplies `series` so its first extremum equals the first extremum of
// `reference` (sign included).
inline std::vector<double> scale_to_reference(std::span<const double> series,
                                              std::span<const double> reference) {
    const auto ks = first_extremum(series);
    const auto kr = first_extremum(reference);
    if (!ks || !kr || series[*ks] == 0.0) {
        throw std::invalid_argument("scale_to_reference: no extremum to match");
    }
    const double c = reference[*kr] / series[*ks];
    std::vector<double> out(series.begin(), series.end());
    for (double& v : out) v *= c;
    return out;
}

// P_N ~ exp[-(N - Nbar)^2 / (2 sqrt(Nbar))], normalized over N = 0..n_max.
inline NumberHistogram gaussian_histogram(double mean, int n_max) {
    if (!(mean > 0.0)) throw std::invalid_argument("gaussian_histogram: mean must be > 0");
    if (n_max < 0) throw std::invalid_argument("gaussian_histogram: n_max must be >= 0");
    NumberHistogram h;
    h.p.resize(static_cast<std::size_t>(n_max) + 1);
    const double denom = 2.0 * std::sqrt(mean);
    double z = 0.0;
    for (int N = 0; N <= n_max; ++N) {
        const double d = N - mean;
        h.p[N] = std::exp(-d * d / denom);
        z += h.p[N];
    }
    for (double& v : h.p) v /= z;
    return h;
}

// tau = 2 omega / (J U Nbar^(1/4)), omega = sqrt(J^2 + 4 J U Nbar).
// Infinite when U = 0.
inline double predicted_decay_time(double J, double U, double mean) {
    if (!(J > 0.0) || !(mean > 0.0) || U < 0.0 || !std::isfinite(U)) {
        throw std::invalid_argument("predicted_decay_time: need J > 0, U >= 0, Nbar > 0");
    }
    if (U == 0.0) return std::numeric_limits<double>::infinity();
    const double omega = josephson_frequency(J, U * mean);
    return 2.0 * omega / (J * U * std::pow(mean, 0.25));
}

// Width estimate of the quantum nonlinear resonance, (Omega sqrt(Nbar) / U)^(1/2).
inline double resonance_width(double Omega, double mean, double U) {
    if (!(U > 0.0) || mean < 0.0) throw std::invalid_argument("resonance_width: need U > 0");
    return std::sqrt(std::abs(Omega) * std::sqrt(mean) / U);
}

struct EnvelopeFit {
    double amplitude{0.0};
    double omega{0.0};
    double tau{std::numeric_limits<double>::infinity()};
    double phase{0.0};
    double offset{0.0};
    double residual{0.0};     // rms(residual) / rms(series - offset) over the window
    double window_end{0.0};   // last time included in the fit
    bool decay_measurable{true};
    int iterations{0};
};

struct FitOptions {
    bool fit_offset{true};
    int max_iterations{500};
    double ambiguity_ratio{0.8}; // second spectral peak / first peak above which omega is ambiguous
    std::optional<double> window_end; // overrides automatic choice
};

struct EnvelopePeak {
    double t{0.0};
    double amplitude{0.0};
};

// Local maxima of |x - offset|, refined by a parabola through the neighbours.
inline std::vector<EnvelopePeak> envelope_peaks(std::span<const double> t, std::span<const double> x,
                                                double offset = 0.0) {
    std::vector<EnvelopePeak> out;
    for (std::size_t k = 1; k + 1 < x.size(); ++k) {
        const double a = std::abs(x[k - 1] - offset);
        const double b = std::abs(x[k] - offset);
        const double c = std::abs(x[k + 1] - offset);
        if (b > a && b >= c) {
            const double denom = a - 2.0 * b + c;
            double s = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
            s = std::clamp(s, -0.5, 0.5);
            const double h = t[k + 1] - t[k];
            out.push_back({t[k] + s * h, b - 0.25 * (a - c) * s});
        }
    }
    return out;
}

namespace detail {

inline double dft_magnitude(std::span<const double> t, std::span<const double> x, double w) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        re += x[k] * std::cos(w * t[k]);
        im -= x[k] * std::sin(w * t[k]);
    }
    return std::hypot(re, im);
}

struct SpectralPeak {
    double omega;
    double magnitude;
};

// Spectral maxima on a grid oversampled 8x relative to the window resolution.
inline std::vector<SpectralPeak> spectral_peaks(std::span<const double> t, std::span<const double> x) {
    const double span = t.back() - t.front();
    const double dt = span / static_cast<double>(t.size() - 1);
    const double nyquist = std::numbers::pi / dt;
    const double step = 2.0 * std::numbers::pi / span / 8.0;
    std::vector<double> grid, mag;
    for (double w = step; w < nyquist; w += step) {
        grid.push_back(w);
        mag.push_back(dft_magnitude(t, x, w));
    }
    std::vector<SpectralPeak> peaks;
    for (std::size_t k = 1; k + 1 < mag.size(); ++k) {
        if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1]) {
            const double denom = mag[k - 1] - 2.0 * mag[k] + mag[k + 1];
            const double s = denom != 0.0 ? 0.5 * (mag[k - 1] - mag[k + 1]) / denom : 0.0;
            peaks.push_back({grid[k] + s * step, mag[k]});
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const SpectralPeak& a, const SpectralPeak& b) { return a.magnitude > b.magnitude; });
    return peaks;
}

// End of the fit window: the first local minimum of the envelope after it has
// fallen below 1/e of its first peak, or the end of the series.
inline double collapse_time(const std::vector<EnvelopePeak>& peaks, double fallback) {
    if (peaks.empty()) return fallback;
    const double threshold = peaks.front().amplitude / std::numbers::e;
    bool fallen = false;
    for (std::size_t k = 0; k + 1 < peaks.size(); ++k) {
        if (peaks[k].amplitude < threshold) fallen = true;
        if (fallen && peaks[k + 1].amplitude > peaks[k].amplitude) return peaks[k].t;
    }
    return fallback;
}

} // namespace detail

// Least-squares fit of A exp(-t^2/tau^2) sin(omega t + phase) + offset.
// omega starts at the dominant spectral peak, tau at the 1/e time of the
// upper envelope; A, phase and offset start from the linear least-squares
// solution at those values. Levenberg-Marquardt then refines (A, omega,
// 1/tau^2, phase, offset); a non-positive 1/tau^2 means no measurable decay.
inline EnvelopeFit fit_envelope(std::span<const double> t_all, std::span<const double> x_all,
                                const FitOptions& opt = {}) {
    if (t_all.size() != x_all.size() || t_all.size() < 16) {
        throw std::invalid_argument("fit_envelope: need matching series of at least 16 samples");
    }
    double mean_all = 0.0;
    for (double v : x_all) mean_all += v;
    mean_all /= static_cast<double>(x_all.size());

    const auto peaks_all = envelope_peaks(t_all, x_all, opt.fit_offset ? mean_all : 0.0);
    const double t_end = opt.window_end.value_or(detail::collapse_time(peaks_all, t_all.back()));
    std::size_t n = 0;
    while (n < t_all.size() && t_all[n] <= t_end + 1e-12) ++n;
    if (n < 16) throw FitError("fit_envelope: fit window holds fewer than 16 samples");
    const std::span<const double> t = t_all.first(n);
    const std::span<const double> x = x_all.first(n);

    double c0 = 0.0;
    if (opt.fit_offset) {
        for (double v : x) c0 += v;
        c0 /= static_cast<double>(n);
    }
    std::vector<double> centred(x.begin(), x.end());
    for (double& v : centred) v -= c0;

    const auto spectrum = detail::spectral_peaks(t, centred);
    if (spectrum.empty()) throw FitError("fit_envelope: no spectral peak");
    if (spectrum.size() > 1 && spectrum[1].magnitude > opt.ambiguity_ratio * spectrum[0].magnitude) {
        throw FitError("fit_envelope: ambiguous frequency (peaks at " +
                       std::to_string(spectrum[0].omega) + " and " +
                       std::to_string(spectrum[1].omega) + ")");
    }
    double omega = spectrum[0].omega;

    const auto peaks = envelope_peaks(t, x, c0);
    double tau = 2.0 * (t.back() - t.front());
    if (!peaks.empty()) {
        const double target = peaks.front().amplitude / std::numbers::e;
        for (const auto& p : peaks) {
            if (p.amplitude < target) {
                tau = std::max(p.t - t.front(), 1e-3 * (t.back() - t.front()));
                break;
            }
        }
    }
    double s = 1.0 / (tau * tau);

    // Linear stage: x ~ e^{-s t^2} (a sin wt + b cos wt) + c
    Eigen::VectorXd p(5);
    {
        const int cols = opt.fit_offset ? 3 : 2;
        Eigen::MatrixXd M(static_cast<Eigen::Index>(n), cols);
        Eigen::VectorXd y(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) {
            const double g = std::exp(-s * t[k] * t[k]);
            M(k, 0) = g * std::sin(omega * t[k]);
            M(k, 1) = g * std::cos(omega * t[k]);
            if (opt.fit_offset) M(k, 2) = 1.0;
            y(k) = x[k];
        }
        const Eigen::VectorXd sol = M.colPivHouseholderQr().solve(y);
        // a sin + b cos = A sin(wt + phi)
        p << std::hypot(sol(0), sol(1)), omega, s, std::atan2(sol(1), sol(0)),
            opt.fit_offset ? sol(2) : 0.0;
    }

    auto residuals = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r, Eigen::MatrixXd* Jac) {
        r.resize(static_cast<Eigen::Index>(n));
        if (Jac) Jac->resize(static_cast<Eigen::Index>(n), 5);
        for (std::size_t k = 0; k < n; ++k) {
            const double tk = t[k];
            const double g = std::exp(-q(2) * tk * tk);
            const double sn = std::sin(q(1) * tk + q(3));
            const double cs = std::cos(q(1) * tk + q(3));
            const double model = q(0) * g * sn + (opt.fit_offset ? q(4) : 0.0);
            r(k) = model - x[k];
            if (Jac) {
                (*Jac)(k, 0) = g * sn;
                (*Jac)(k, 1) = q(0) * g * cs * tk;
                (*Jac)(k, 2) = -q(0) * g * sn * tk * tk;
                (*Jac)(k, 3) = q(0) * g * cs;
                (*Jac)(k, 4) = opt.fit_offset ? 1.0 : 0.0;
            }
        }
    };

    Eigen::VectorXd r, r_trial;
    Eigen::MatrixXd Jm;
    residuals(p, r, &Jm);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    bool converged = false;
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        const Eigen::MatrixXd JtJ = Jm.transpose() * Jm;
        const Eigen::VectorXd g = Jm.transpose() * r;
        Eigen::MatrixXd A = JtJ;
        for (int d = 0; d < 5; ++d) A(d, d) += lambda * std::max(JtJ(d, d), 1e-300);
        if (!opt.fit_offset) {
            A.row(4).setZero();
            A.col(4).setZero();
            A(4, 4) = 1.0;
        }
        const Eigen::VectorXd step = A.ldlt().solve(-g);
        const Eigen::VectorXd trial = p + step;
        residuals(trial, r_trial, nullptr);
        const double trial_cost = r_trial.squaredNorm();
        if (std::isfinite(trial_cost) && trial_cost <= cost) {
            const double rel_step =
                step.cwiseAbs().cwiseQuotient(p.cwiseAbs().cwiseMax(1e-12)).maxCoeff();
            const double drop = cost - trial_cost;
            p = trial;
            cost = trial_cost;
            residuals(p, r, &Jm);
            lambda = std::max(lambda / 10.0, 1e-15);
            if (rel_step < 1e-13 || drop <= 1e-15 * cost || cost == 0.0) {
                converged = true;
                break;
            }
        } else {
            lambda *= 10.0;
            if (lambda > 1e16) {
                // No further descent possible: a stationary point.
                converged = true;
                break;
            }
        }
    }
    if (!converged) {
        throw FitError("fit_envelope: no convergence after " + std::to_string(it) +
                       " iterations (cost " + std::to_string(cost) + ")");
    }

    EnvelopeFit fit;
    fit.amplitude = p(0);
    fit.omega = p(1);
    fit.phase = p(3);
    fit.offset = opt.fit_offset ? p(4) : 0.0;
    if (fit.amplitude < 0.0) {
        fit.amplitude = -fit.amplitude;
        fit.phase += std::numbers::pi;
    }
    if (fit.omega < 0.0) {
        fit.omega = -fit.omega;
        fit.phase = std::numbers::pi - fit.phase;
    }
    fit.phase = std::remainder(fit.phase, 2.0 * std::numbers::pi);
    const double window = t.back() - t.front();
    if (p(2) > 0.0) {
        fit.tau = 1.0 / std::sqrt(p(2));
    } else {
        fit.tau = std::numeric_limits<double>::infinity();
    }
    fit.decay_measurable = fit.tau <= window;
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) ss += (x[k] - fit.offset) * (x[k] - fit.offset);
    fit.residual = ss > 0.0 ? std::sqrt(cost / ss) : 0.0;
    fit.window_end = t.back();
    fit.iterations = it;
    return fit;
}

struct Revival {
    double t{0.0};
    double amplitude{0.0};
};

// Envelope maxima after the first collapse whose amplitude exceeds
// `fraction` of the fitted initial amplitude. An envelope peak counts as a
// revival when it dominates its `neighbours` peaks on either side.
inline std::vector<Revival> revival_detector(std::span<const double> t, std::span<const double> x,
                                             const EnvelopeFit& fit, double fraction = 0.2,
                                             int neighbours = 3) {
    const auto peaks = envelope_peaks(t, x, fit.offset);
    std::vector<Revival> out;
    if (peaks.empty()) return out;
    const double start = std::max(fit.window_end, std::isfinite(fit.tau) ? fit.tau : t.back());
    // Skip to the first local envelope minimum at or after `start`.
    std::size_t k0 = 0;
    while (k0 < peaks.size() && peaks[k0].t < start) ++k0;
    while (k0 + 1 < peaks.size() && peaks[k0 + 1].amplitude <= peaks[k0].amplitude) ++k0;
    const double floor = fraction * fit.amplitude;
    const auto m = static_cast<std::size_t>(std::max(1, neighbours));
    for (std::size_t k = k0 + 1; k < peaks.size(); ++k) {
        if (peaks[k].amplitude < floor) continue;
        bool dominant = true;
        for (std::size_t j = (k >= m ? k - m : 0); j <= std::min(peaks.size() - 1, k + m); ++j) {
            if (j != k && peaks[j].amplitude > peaks[k].amplitude) {
                dominant = false;
                break;
            }
        }
        if (dominant) {
            // Drop a duplicate from an exactly flat top.
            if (!out.empty() && k > 0 && out.back().t == peaks[k - 1].t) continue;
            out.push_back({peaks[k].t, peaks[k].amplitude});
        }
    }
    return out;
}

struct DephasingMeasurement {
    double tau{0.0};        // fitted Gaussian decay time of the reconstruction
    double predicted{0.0};  // predicted_decay_time at the same mean
    EnvelopeFit fit;
};

// Dephasing time of the frozen reconstruction driven by
// gaussian_histogram(mean), measured with fit_envelope on a grid of
// `per_period` samples per Josephson period.
inline DephasingMeasurement reconstruction_dephasing_time(double J, double U, double mean,
                                                          FrequencyModel model = FrequencyModel::josephson,
                                                          int per_period = 64) {
    const double sigma = std::pow(mean, 0.25);
    const int n_max = static_cast<int>(std::ceil(mean + 12.0 * sigma));
    const NumberHistogram P = gaussian_histogram(mean, n_max);
    const double omega = model_frequency(model, J, U, mean);
    const double tau = predicted_decay_time(J, U, mean);
    const double dt = 2.0 * std::numbers::pi / omega / per_period;
    const auto n = static_cast<std::size_t>(std::ceil(4.0 * tau / dt)) + 1;
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = static_cast<double>(k) * dt;
    ReconstructionOptions opt;
    opt.frequency = model;
    opt.evolution = HistogramEvolution::frozen;
    const auto s = reconstruct_current(P, J, U, t, opt);
    FitOptions fo;
    fo.fit_offset = false;
    DephasingMeasurement out;
    out.fit = fit_envelope(t, s, fo);
    out.tau = out.fit.tau;
    out.predicted = tau;
    return out;
}

// Zero-lag normalized cross-correlation of the mean-removed series.
inline double cross_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("cross_correlation: series lengths differ or are empty");
    }
    double ma = 0.0, mb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= static_cast<double>(a.size());
    mb /= static_cast<double>(b.size());
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sab += (a[k] - ma) * (b[k] - mb);
        saa += (a[k] - ma) * (a[k] - ma);
        sbb += (b[k] - mb) * (b[k] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

} // namespace bhdimer
