// protocol.hpp: Piecewise-affine detuning/drive schedules: sweep, dwell, switch-off

#pragma once

#include <cmath>
#include <algorithm>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhdimer/errors.hpp"

namespace bhdimer {

inline double tunneling_period(double J) {
    if (!(J > 0.0)) throw std::invalid_argument("tunneling_period: J must be > 0");
    return 2.0 * std::numbers::pi / J;
}

// Delta(t) is affine between detuning_start and detuning_end; Omega is constant.
struct Segment {
    double t_start{0.0};
    double t_end{0.0};
    double detuning_start{0.0};
    double detuning_end{0.0};
    double drive{0.0};

    double duration() const { return t_end - t_start; }

    double detuning_at(double t) const {
        const double s = (t - t_start) / duration();
        return detuning_start + s * (detuning_end - detuning_start);
    }
};

// Instantaneous Hamiltonian coefficients: `detuning` multiplies n1 + n2 in H.
struct DriveState {
    double detuning{0.0};
    double drive{0.0};
};

struct ParameterSchedule {
    std::vector<Segment> segments;
    double hopping{0.5};     // J
    double interaction{0.25}; // U
    double gamma{0.002};
    // H carries detuning_sign * Delta(t) * (n1 + n2). With -1, Delta is the
    // drive frequency minus the site frequency: an upward sweep through
    // Delta = -J/2 then climbs the nonlinear resonance (site occupations
    // grow with Delta for U > 0). +1 takes Delta as the bare coefficient.
    double detuning_sign{-1.0};

    double t_begin() const { return segments.empty() ? 0.0 : segments.front().t_start; }
    double t_end() const { return segments.empty() ? 0.0 : segments.back().t_end; }

    // Segment owning t. Boundaries belong to the later segment, except the
    // final end point.
    const Segment& segment_at(double t) const {
        if (segments.empty()) throw std::logic_error("ParameterSchedule: no segments");
        for (const auto& s : segments) {
            if (t < s.t_end) return s;
        }
        return segments.back();
    }

    double detuning_at(double t) const { return segment_at(t).detuning_at(t); }

    DriveState at(double t) const { return state_in(segment_at(t), t); }

    // Hamiltonian coefficients at t, evaluated on a given segment.
    DriveState state_in(const Segment& s, double t) const {
        return {detuning_sign * s.detuning_at(t), s.drive};
    }
};

inline double critical_detuning(double U, double Omega, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("critical_detuning: gamma must be > 0");
    const double r = Omega / gamma;
    return U * r * r;
}

// Linear sweep Delta_in -> Delta_f lasting rate tunneling periods per unit of Delta.
inline ParameterSchedule sweep_schedule(double detuning_in, double detuning_f, double rate,
                                        double J, double U, double gamma, double Omega,
                                        double t0 = 0.0) {
    if (!(detuning_in < detuning_f)) {
        throw std::invalid_argument("sweep_schedule: requires Delta_in < Delta_f");
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw std::invalid_argument("sweep_schedule: rate must be positive and finite");
    }
    const double duration = (detuning_f - detuning_in) * rate * tunneling_period(J);
    ParameterSchedule s;
    s.hopping = J;
    s.interaction = U;
    s.gamma = gamma;
    s.segments.push_back({t0, t0 + duration, detuning_in, detuning_f, Omega});
    return s;
}

// Appends a constant-detuning segment at the final detuning, drive unchanged.
inline ParameterSchedule dwell(ParameterSchedule schedule, double duration) {
    if (schedule.segments.empty()) throw std::invalid_argument("dwell: empty schedule");
    if (!(duration > 0.0)) throw std::invalid_argument("dwell: duration must be > 0");
    const Segment last = schedule.segments.back();
    schedule.segments.push_back(
        {last.t_end, last.t_end + duration, last.detuning_end, last.detuning_end, last.drive});
    return schedule;
}

// Appends a segment with Omega = 0 holding Delta at the last value, or at
// hold_detuning when given.
inline ParameterSchedule switch_off(ParameterSchedule schedule, double hold_duration,
                                    std::optional<double> hold_detuning = std::nullopt) {
    if (schedule.segments.empty()) throw std::invalid_argument("switch_off: empty schedule");
    if (!(hold_duration > 0.0) || !std::isfinite(hold_duration)) {
        throw std::invalid_argument("switch_off: hold duration must be positive");
    }
    const Segment last = schedule.segments.back();
    if (!std::isfinite(last.t_end)) throw std::invalid_argument("switch_off: schedule must end");
    const double d = hold_detuning.value_or(last.detuning_end);
    schedule.segments.push_back({last.t_end, last.t_end + hold_duration, d, d, 0.0});
    return schedule;
}

// Structural checks throw std::invalid_argument. A schedule whose maximal
// detuning reaches the critical detuning of any driven segment throws
// CaptureConditionError.
inline void validate(const ParameterSchedule& s) {
    if (s.segments.empty()) throw std::invalid_argument("schedule has no segments");
    if (!(s.hopping > 0.0)) throw std::invalid_argument("schedule: J must be > 0");
    if (s.interaction < 0.0) throw std::invalid_argument("schedule: U must be >= 0");
    if (s.gamma < 0.0) throw std::invalid_argument("schedule: gamma must be >= 0");
    for (std::size_t i = 0; i < s.segments.size(); ++i) {
        const Segment& seg = s.segments[i];
        if (!(seg.t_end > seg.t_start)) {
            throw std::invalid_argument("schedule: segment " + std::to_string(i) +
                                        " has non-increasing times");
        }
        if (i > 0 && seg.t_start != s.segments[i - 1].t_end) {
            throw std::invalid_argument("schedule: segment " + std::to_string(i) +
                                        " is not contiguous with its predecessor");
        }
    }
    if (s.gamma > 0.0) {
        for (const Segment& seg : s.segments) {
            if (seg.drive == 0.0) continue;
            const double cr = critical_detuning(s.interaction, seg.drive, s.gamma);
            if (std::max(seg.detuning_start, seg.detuning_end) >= cr) {
                throw CaptureConditionError("final detuning " +
                                            std::to_string(seg.detuning_end) +
                                            " is not below the critical detuning " +
                                            std::to_string(cr));
            }
        }
    }
}

} // namespace bhdimer
