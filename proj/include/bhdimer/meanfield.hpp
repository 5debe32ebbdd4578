// meanfield.hpp: Mean-field dimer Hamiltonian on (I, phi) and Josephson frequencies

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhdimer/errors.hpp"

namespace bhdimer {

struct MeanFieldPoint {
    double imbalance{0.0}; // I = (|psi2|^2 - |psi1|^2) / (|psi2|^2 + |psi1|^2)
    double phase{0.0};     // phi
    double g{0.0};         // U * N
    double J{0.0};
};

// H_eff = (g/2) I^2 - (J/2) sqrt(1 - I^2) cos(phi)
inline double h_eff(const MeanFieldPoint& p) {
    if (std::abs(p.imbalance) > 1.0) {
        throw std::invalid_argument("h_eff: |I| must not exceed 1");
    }
    const double I = p.imbalance;
    return 0.5 * p.g * I * I - 0.5 * p.J * std::sqrt(1.0 - I * I) * std::cos(p.phase);
}

inline double josephson_frequency(double J, double g) {
    if (!(J > 0.0)) throw std::invalid_argument("josephson_frequency: J must be > 0");
    if (g < 0.0) throw std::invalid_argument("josephson_frequency: g must be >= 0");
    return std::sqrt(J * J + 4.0 * J * g);
}

// omega_N = sqrt(J^2 + 4 J U N)
inline double sector_frequency(double J, double U, int N) {
    if (N < 0) throw std::invalid_argument("sector_frequency: N must be >= 0");
    return josephson_frequency(J, U * static_cast<double>(N));
}

// Bogoliubov frequency of the N-particle sector for the dimer Hamiltonian with
// hopping -(J/2)(a2^+ a1 + h.c.) and on-site (U/2) n(n-1): sqrt(J^2 + J U N).
// This is the small-oscillation frequency the master equation actually
// produces; sector_frequency keeps the 4JUN form used by the dephasing theory.
inline double bogoliubov_frequency(double J, double U, double N) {
    if (!(J > 0.0)) throw std::invalid_argument("bogoliubov_frequency: J must be > 0");
    if (N < 0.0 || U < 0.0) throw std::invalid_argument("bogoliubov_frequency: need U, N >= 0");
    return std::sqrt(J * J + J * U * N);
}

// g(t) = U * N0 * exp(-gamma t) during free decay.
inline double decaying_interaction(double U, double N0, double gamma, double t) {
    return U * N0 * std::exp(-gamma * t);
}

struct LinearizationResult {
    double frequency{0.0};
    double max_energy_drift{0.0}; // max |H(t) - H(0)| over the run
    int periods{0};
};

// Canonical flow of h_eff with time scale `time_scale`:
//   dI/dt = -s dH/dphi,  dphi/dt = s dH/dI.
// The small-oscillation frequency about (0, 0) is then
// s * sqrt((g + J/2) J/2); s = 2 reproduces omega = J at g = 0.
inline double canonical_small_oscillation(double J, double g, double time_scale = 2.0) {
    return time_scale * std::sqrt((g + 0.5 * J) * 0.5 * J);
}

// Integrates the canonical equations from (I, phi) = (delta, 0) with RK4 and
// measures the oscillation frequency from the spacing of downward zero
// crossings of I(t), located by cubic Hermite interpolation.
inline LinearizationResult linearization_check(double J, double g, double delta,
                                               int periods = 8, int steps_per_period = 4000,
                                               double time_scale = 2.0) {
    if (!(J > 0.0) || g < 0.0) throw std::invalid_argument("linearization_check: need J > 0, g >= 0");
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("linearization_check: delta must lie in (0, 1)");
    }
    using State = std::array<double, 2>; // {I, phi}
    auto rhs = [&](const State& y) -> State {
        const double I = y[0], phi = y[1];
        const double root = std::sqrt(1.0 - I * I);
        const double dH_dphi = 0.5 * J * root * std::sin(phi);
        const double dH_dI = g * I + 0.5 * J * I * std::cos(phi) / root;
        return {-time_scale * dH_dphi, time_scale * dH_dI};
    };
    auto energy = [&](const State& y) { return h_eff({y[0], y[1], g, J}); };

    const double guess = canonical_small_oscillation(J, g, time_scale);
    const double h = 2.0 * std::numbers::pi / guess / steps_per_period;
    State y{delta, 0.0};
    const double e0 = energy(y);
    LinearizationResult out;
    std::vector<double> crossings;
    double t = 0.0;
    State f = rhs(y);
    const long max_steps = static_cast<long>(steps_per_period) * (periods + 3) * 4;
    for (long step = 0; step < max_steps && static_cast<int>(crossings.size()) < periods + 1; ++step) {
        const State k1 = f;
        const State k2 = rhs({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
        const State k3 = rhs({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
        const State k4 = rhs({y[0] + h * k3[0], y[1] + h * k3[1]});
        const State next{y[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                         y[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
        const State fn = rhs(next);
        if (y[0] > 0.0 && next[0] <= 0.0) {
            // Newton iterations on the cubic Hermite interpolant of I over the step.
            const double y0 = y[0], y1 = next[0], d0 = f[0] * h, d1 = fn[0] * h;
            auto p = [&](double s) {
                const double s2 = s * s, s3 = s2 * s;
                return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 +
                       (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
            };
            auto dp = [&](double s) {
                const double s2 = s * s;
                return (6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * d0 +
                       (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * d1;
            };
            double s = y0 / (y0 - y1);
            for (int it = 0; it < 20; ++it) s -= p(s) / dp(s);
            crossings.push_back(t + s * h);
        }
        y = next;
        f = fn;
        t += h;
        out.max_energy_drift = std::max(out.max_energy_drift, std::abs(energy(y) - e0));
    }
    if (static_cast<int>(crossings.size()) < 2) {
        throw FitError("linearization_check: fewer than two zero crossings found");
    }
    const double span = crossings.back() - crossings.front();
    out.periods = static_cast<int>(crossings.size()) - 1;
    out.frequency = 2.0 * std::numbers::pi * out.periods / span;
    return out;
}

} // namespace bhdimer
