#include "czsim/pulse.hpp"

#include <cmath>

#include "czsim/errors.hpp"
#include "czsim/spectrum.hpp"

namespace czsim {

void PulseParams::validate() const {
    if (!(t_f > 0.0) || !std::isfinite(t_f)) throw InvalidArgument("pulse t_f must be > 0");
    if (!std::isfinite(amp0) || !std::isfinite(lambda1) || !std::isfinite(lambda2) ||
        !std::isfinite(detuning)) {
        throw InvalidArgument("pulse parameters must be finite");
    }
}

double envelope(const PulseParams& p, double t) {
    if (!(t >= 0.0 && t <= p.t_f)) {
        throw InvalidArgument("envelope: t outside [0, t_f]");
    }
    const double x = (t - 0.5 * p.t_f) / p.t_f * kTwoPi;
    const double weights[3] = {p.lambda1, p.lambda2, p.lambda3()};
    double dip = 0.0;
    for (int l = 1; l <= 3; ++l) dip += weights[l - 1] * (1.0 - std::cos(l * x));
    return p.amp0 * (1.0 - 0.5 * dip);
}

double resolve_drive_frequency(const DeviceParams& device, double detuning) {
    const DressedSpectrum s = static_spectrum(device, labels_up_to(device, 1));
    const double omega_c00 = (s.energy({0, 1, 0}) - s.energy({0, 0, 0})) / kTwoPi;
    return omega_c00 + detuning;
}

PulseParams resolved(const DeviceParams& device, PulseParams pulse) {
    pulse.validate();
    pulse.drive_freq = resolve_drive_frequency(device, pulse.detuning);
    return pulse;
}

PulseParams pulse_preset(std::string_view name) {
    PulseParams p;
    if (name == "tableII-a") {
        p = {0.0083, 0.3395, 0.0601, 250.0, -0.015, std::nullopt};
    } else if (name == "tableII-b") {
        p = {0.0095, 0.0481, 0.3136, 150.0, -0.010, std::nullopt};
    } else if (name == "tableII-c") {
        p = {0.01086, -0.2330, 0.2517, 150.0, -0.0039, std::nullopt};
    } else if (name == "sec4-450ns") {
        p = {0.010, -0.0178, 0.2528, 450.0, 0.0025, std::nullopt};
    } else if (name == "sec4-fig7") {
        p = {0.0083, 0.3397, 0.0594, 450.0, 0.0, std::nullopt};
    } else {
        throw InvalidArgument("unknown pulse preset '" + std::string(name) + "'");
    }
    return p;
}

std::vector<std::string> pulse_preset_names() {
    return {"tableII-a", "tableII-b", "tableII-c", "sec4-450ns", "sec4-fig7"};
}

}  // namespace czsim
