// SPDX-License-Identifier: Apache-2.0
//
// Chirped fiber Bragg gratings modelled by their group-delay law: a delay
// that is linear in optical frequency over the grating band.

#ifndef AROF_DELAY_HPP
#define AROF_DELAY_HPP

#include "arof/spectrum.hpp"

namespace arof
{

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// Reference line spacing at which the chirp calibration is quoted.
inline constexpr double kCalibrationSpacingHz = 50.0e9;

// Delay difference between adjacent 50 GHz lines times total chirp, in s*m.
// Least-squares fit of C / chirp to the published 0.7 nm and 4.0 nm endpoints
// (77.6 ps and 13.4 ps): C = sum(T_i / c_i) / sum(1 / c_i^2).
inline constexpr double kDefaultChirpCalibration =
    (77.6e-12 / 0.7e-9 + 13.4e-12 / 4.0e-9) / (1.0 / (0.7e-9 * 0.7e-9) + 1.0 / (4.0e-9 * 4.0e-9));

inline constexpr double kMinChirp = 0.1e-9; // m
inline constexpr double kMaxChirp = 10.0e-9;

struct FrequencyBand
{
    double lo = 0.0; // Hz
    double hi = 0.0;
    bool contains(double f) const noexcept { return f >= lo && f <= hi; }
};

// t(f) = slope * f + intercept inside band; zero added delay outside.
struct DelayLaw
{
    double slope = 0.0;     // s/Hz
    double intercept = 0.0; // s
    FrequencyBand band{};

    double delay_at(double freq) const noexcept;
    void validate() const;

    // Law with the given slope whose smallest in-band delay is zero.
    static DelayLaw differential(double slope, FrequencyBand band);
};

struct ChirpSpec
{
    double total_chirp = 0.7e-9;        // m
    double grating_length = 40.0e-3;    // m
    double center_wavelength = 1549.3e-9; // m
    double calibration = kDefaultChirpCalibration; // s*m

    void validate() const;
};

// Optical delay difference between adjacent lines spaced channel_spacing.
double chirp_to_channel_delay(const ChirpSpec &spec, double channel_spacing = kCalibrationSpacingHz);

DelayLaw delay_law_from_chirp(const ChirpSpec &spec, int sign, FrequencyBand band);

// Each in-band line (f, a) -> (f, a * exp(-j 2 pi f t(f))).
OpticalSpectrum apply_delay(const OpticalSpectrum &spec, const DelayLaw &law);

// Phase factor exp(-j 2 pi f t) evaluated with the cycle count reduced in
// extended precision, so optical-frequency products do not lose accuracy.
cplx delay_phasor(double freq, double delay);

// Slope of a grating cascaded after `slope` such that the total slope is
// slope * d2 / d1.
double align_mmwave_slope(double slope, double d1, double d2);

// Delay of the beat between lines at f_a (delay t_a) and f_b (delay t_b).
double effective_rf_delay(double f_a, double t_a, double f_b, double t_b);
double effective_rf_delay(double f_a, double f_b, const DelayLaw &law);

} // namespace arof

#endif
