// SPDX-License-Identifier: Apache-2.0

#include "arof/delay.hpp"

#include "arof/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace arof
{

double DelayLaw::delay_at(double freq) const noexcept
{
    if (!band.contains(freq))
        return 0.0;
    return slope * freq + intercept;
}

void DelayLaw::validate() const
{
    if (!(band.lo < band.hi))
        throw InvalidInput("delay law band must satisfy f_min < f_max");
    if (!std::isfinite(slope) || !std::isfinite(intercept))
        throw InvalidInput("delay law coefficients must be finite");
}

DelayLaw DelayLaw::differential(double slope, FrequencyBand band)
{
    DelayLaw law{slope, 0.0, band};
    law.validate();
    law.intercept = slope >= 0.0 ? -slope * band.lo : -slope * band.hi;
    return law;
}

void ChirpSpec::validate() const
{
    if (!(total_chirp >= kMinChirp && total_chirp <= kMaxChirp))
        throw RangeError("total chirp " + std::to_string(total_chirp * 1e9) + " nm outside supported range [" +
                         std::to_string(kMinChirp * 1e9) + ", " + std::to_string(kMaxChirp * 1e9) + "] nm");
    if (!(grating_length > 0.0))
        throw InvalidInput("grating length must be positive");
    if (!(calibration > 0.0))
        throw InvalidInput("chirp calibration constant must be positive");
}

double chirp_to_channel_delay(const ChirpSpec &spec, double channel_spacing)
{
    spec.validate();
    if (!(channel_spacing > 0.0))
        throw InvalidInput("channel spacing must be positive");
    return spec.calibration / spec.total_chirp * (channel_spacing / kCalibrationSpacingHz);
}

DelayLaw delay_law_from_chirp(const ChirpSpec &spec, int sign, FrequencyBand band)
{
    if (sign != 1 && sign != -1)
        throw InvalidInput("delay law sign must be +1 or -1");
    const double dt = chirp_to_channel_delay(spec, kCalibrationSpacingHz);
    return DelayLaw::differential(sign * dt / kCalibrationSpacingHz, band);
}

namespace
{

cplx phasor_from_cycles(long double cycles)
{
    const long double frac = cycles - std::floor(cycles);
    return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(frac));
}

} // namespace

cplx delay_phasor(double freq, double delay)
{
    return phasor_from_cycles(static_cast<long double>(freq) * static_cast<long double>(delay));
}

OpticalSpectrum apply_delay(const OpticalSpectrum &spec, const DelayLaw &law)
{
    law.validate();
    std::vector<SpectralLine> out = spec.lines();
    for (auto &l : out)
    {
        if (!law.band.contains(l.freq))
            continue;
        // f * t(f) is ~1e7 cycles; keep the delay itself in extended precision too.
        const long double f = l.freq;
        l.amp *= phasor_from_cycles(f * (static_cast<long double>(law.slope) * f + law.intercept));
    }
    return OpticalSpectrum::from_lines(std::move(out));
}

double align_mmwave_slope(double slope, double d1, double d2)
{
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw InvalidInput("antenna spacings must be positive");
    return (d2 - d1) / d1 * slope;
}

double effective_rf_delay(double f_a, double t_a, double f_b, double t_b)
{
    if (f_a == f_b)
        throw DegenerateBeatError("beat partners share the frequency " + std::to_string(f_a) + " Hz");
    // The products are ~1e5 times larger than their difference at optical frequencies.
    const long double fa = f_a, fb = f_b;
    return static_cast<double>((fa * t_a - fb * t_b) / (fa - fb));
}

double effective_rf_delay(double f_a, double f_b, const DelayLaw &law)
{
    return effective_rf_delay(f_a, law.delay_at(f_a), f_b, law.delay_at(f_b));
}

} // namespace arof
