#include "ccqsim/drives.hpp"

#include <algorithm>
#include <cmath>

namespace ccqsim {

namespace {
constexpr double pi = two_pi / 2;

// Real shape factor in [0,1] plus its first two time derivatives.
struct ShapeVal {
    double s = 0, d1 = 0, d2 = 0;
};

ShapeVal shape_at(const Envelope& e, double t) {
    const double u = t - e.start_us;
    if (u <= 0) return {};
    if (e.shape == Envelope::Shape::square) {
        if (u < e.hold_us) return {1, 0, 0};
        return {};
    }
    const double r = e.ramp_us;
    if (r <= 0) {  // degenerate flat top behaves like a square pulse
        if (u < e.hold_us) return {1, 0, 0};
        return {};
    }
    if (u < r) {
        const double x = pi * u / r;
        const double s = std::sin(0.5 * x);
        return {s * s, 0.5 * pi / r * std::sin(x), 0.5 * pi * pi / (r * r) * std::cos(x)};
    }
    if (u < r + e.hold_us) return {1, 0, 0};
    const double v = u - r - e.hold_us;
    if (v < r) {
        const double x = pi * v / r;
        const double c = std::cos(0.5 * x);
        return {c * c, -0.5 * pi / r * std::sin(x), -0.5 * pi * pi / (r * r) * std::cos(x)};
    }
    return {};
}
}  // namespace

Complex Envelope::value(double t) const {
    return amplitude * shape_at(*this, t).s * std::polar(1.0, phase_rad);
}
Complex Envelope::derivative(double t) const {
    return amplitude * shape_at(*this, t).d1 * std::polar(1.0, phase_rad);
}
Complex Envelope::second_derivative(double t) const {
    return amplitude * shape_at(*this, t).d2 * std::polar(1.0, phase_rad);
}

Complex DriveSet::A_d(double t, const SystemParams& p) const {
    if (direct_A_d) return direct_A_d->value(t);
    return std::sqrt(p.gamma1) * bar_A_d.value(t) + std::sqrt(p.kappa1) * probe.value(t);
}

Complex DriveSet::dA_d(double t, const SystemParams& p) const {
    if (direct_A_d) return direct_A_d->derivative(t);
    return std::sqrt(p.gamma1) * bar_A_d.derivative(t) + std::sqrt(p.kappa1) * probe.derivative(t);
}

Complex DriveSet::d2A_d(double t, const SystemParams& p) const {
    if (direct_A_d) return direct_A_d->second_derivative(t);
    return std::sqrt(p.gamma1) * bar_A_d.second_derivative(t) +
           std::sqrt(p.kappa1) * probe.second_derivative(t);
}

Complex DriveSet::B_d_raw(double t, const SystemParams& p) const {
    if (direct_B_d) return direct_B_d->value(t);
    return std::sqrt(p.gamma2) * bar_B_d.value(t) - std::sqrt(p.kappa2 * p.eta_l) * probe.value(t);
}

Complex DriveSet::dB_d_raw(double t, const SystemParams& p) const {
    if (direct_B_d) return direct_B_d->derivative(t);
    return std::sqrt(p.gamma2) * bar_B_d.derivative(t) -
           std::sqrt(p.kappa2 * p.eta_l) * probe.derivative(t);
}

double DriveSet::end_time() const {
    double end = 0;
    auto acc = [&](const Envelope& e) {
        if (e.amplitude != 0) end = std::max(end, e.end_time());
    };
    acc(probe);
    acc(bar_A_d);
    acc(bar_B_d);
    if (direct_A_d) acc(*direct_A_d);
    if (direct_B_d) acc(*direct_B_d);
    return end;
}

}  // namespace ccqsim
