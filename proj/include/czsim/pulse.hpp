#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "czsim/device.hpp"

namespace czsim {

/// Cosine-series envelope on the coupler drive. All frequencies are /2pi in GHz.
/// The third shape weight is always 1 - lambda1 so the envelope vanishes at both ends.
struct PulseParams {
    double amp0 = 0.0;     ///< peak amplitude Omega0/2pi
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double t_f = 0.0;       ///< duration, ns
    double detuning = 0.0;  ///< offset from the dressed |000> -> |010> transition
    std::optional<double> drive_freq;  ///< set by resolve_drive_frequency

    double lambda3() const noexcept { return 1.0 - lambda1; }
    void validate() const;
};

/// Omega_d(t)/2pi in GHz for t in [0, t_f]; throws InvalidArgument outside.
double envelope(const PulseParams& p, double t);

/// omega_c,00 + detuning, with omega_c,00 the dressed coupler transition (GHz).
double resolve_drive_frequency(const DeviceParams& device, double detuning);

/// Copy of `pulse` with drive_freq filled from the device spectrum.
PulseParams resolved(const DeviceParams& device, PulseParams pulse);

/// "tableII-a", "tableII-b", "tableII-c", "sec4-450ns", "sec4-fig7".
PulseParams pulse_preset(std::string_view name);
std::vector<std::string> pulse_preset_names();

}  // namespace czsim
