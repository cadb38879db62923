#pragma once

#include <optional>

#include "ccqsim/params.hpp"

namespace ccqsim {

// Parametric pulse envelope. flat_top_sin2 ramps with sin^2 edges; square
// switches instantly (its derivatives are reported as zero away from the
// edges, so shapes fed to the dynamic compensator should be smooth).
struct Envelope {
    enum class Shape { square, flat_top_sin2 };

    Shape shape = Shape::flat_top_sin2;
    double amplitude = 0;  // rad/us
    double ramp_us = 0;
    double hold_us = 0;
    double start_us = 0;
    double phase_rad = 0;

    Complex value(double t) const;
    Complex derivative(double t) const;
    Complex second_derivative(double t) const;

    // Time from start_us until the envelope returns to zero.
    double duration() const {
        return shape == Shape::square ? hold_us : 2 * ramp_us + hold_us;
    }
    double end_time() const { return start_us + duration(); }

    bool operator==(const Envelope&) const = default;
};

// The effective drives entering the cavity equations are combinations of the
// probe tone and the weak-port tones. Papers often quote the combined value
// directly, so a "direct" slot can bypass the combination for either drive.
struct DriveSet {
    Envelope probe;     // eps-bar, enters through the circulator path
    Envelope bar_A_d;   // weak port of cavity 1
    Envelope bar_B_d;   // weak port of cavity 2
    std::optional<Envelope> direct_A_d;
    std::optional<Envelope> direct_B_d;

    Complex A_d(double t, const SystemParams& p) const;
    Complex B_d_raw(double t, const SystemParams& p) const;
    Complex dA_d(double t, const SystemParams& p) const;
    Complex d2A_d(double t, const SystemParams& p) const;
    Complex dB_d_raw(double t, const SystemParams& p) const;

    // Latest time at which any envelope is still nonzero.
    double end_time() const;

    bool operator==(const DriveSet&) const = default;
};

}  // namespace ccqsim
