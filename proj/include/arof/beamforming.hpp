// SPDX-License-Identifier: Apache-2.0
//
// Uniform linear array radiation model. Angles are measured from the array
// axis in degrees, 90 = broadside. Element k lies at -k*d, so a per-element
// delay increment tau > 0 steers the main lobe to cos(theta) = -c*tau/d.

#ifndef AROF_BEAMFORMING_HPP
#define AROF_BEAMFORMING_HPP

#include "arof/frontend.hpp"
#include "arof/spectrum.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace arof
{

struct ArrayGeometry
{
    std::size_t n_elements = 4;
    double spacing = 0.05; // m

    void validate() const;
    static ArrayGeometry half_wavelength(std::size_t n_elements, double design_freq);
};

enum class ExecPolicy
{
    serial,
    parallel
};

inline constexpr double kDefaultAngleStep = 0.01; // degrees
inline constexpr double kPatternFloorDb = -300.0;

// start, start + step, ..., stop (stop included when it lies on the grid).
std::vector<double> angle_grid(double start = 0.0, double stop = 180.0, double step = kDefaultAngleStep);

struct BeamPattern
{
    double freq = 0.0;
    std::vector<double> angles_deg;
    std::vector<double> magnitude_db; // peak normalized to 0 dB
};

BeamPattern array_factor(std::span<const cplx> weights, double freq, const ArrayGeometry &geom,
                         std::span<const double> angles_deg, ExecPolicy policy = ExecPolicy::parallel);

// exp(-j 2 pi f tau_k) for each element delay.
std::vector<cplx> ttd_weights(std::span<const double> delays, double freq);

// Least-squares slope of delays against element index.
double delay_increment(std::span<const double> delays);

// arccos(-c * tau / d) in degrees; nullopt when outside the visible region.
std::optional<double> steering_angle(double delay_increment, double spacing);

struct SteeringResult
{
    double peak_angle = 0.0;       // degrees
    double peak_width_3db = 0.0;   // degrees
    double sidelobe_level_db = 0.0; // strongest other lobe; -inf if none
};

// Lobes whose refined peaks lie within this of the maximum count as equal
// height (grating lobes of an array spaced wider than half a wavelength).
inline constexpr double kEqualLobeToleranceDb = 1.0e-3;

// Grid maximum refined by a parabola through the dB samples. Among equal
// lobes the one nearest `expected_deg` wins, or the smallest angle when no
// expectation is given.
SteeringResult peak_angle(const BeamPattern &pattern, std::optional<double> expected_deg = std::nullopt);

enum class SquintMode
{
    ttd,
    phase_shift
};

struct SquintEntry
{
    double freq = 0.0;
    double peak_angle = 0.0;
    bool out_of_range = false; // main lobe outside the visible region
};

struct SquintReport
{
    double design_angle = 0.0;
    std::vector<SquintEntry> entries;
    double max_spread = 0.0; // degrees, over in-range entries
};

// ttd: the element delays are applied at every evaluation frequency.
// phase_shift: phases computed at design_freq are frozen and reused.
SquintReport squint_metric(const ArrayGeometry &geom, std::span<const double> delays, double design_freq,
                           std::span<const double> eval_freqs, SquintMode mode,
                           std::span<const double> angles_deg);

// Beam steering of every service tone of a band, from its element feeds.
struct ToneSteering
{
    double freq = 0.0;
    double delay_increment = 0.0; // s, fitted over elements
    std::optional<double> expected_angle;
    SteeringResult steering;
    BeamPattern pattern;
};

std::vector<ToneSteering> steer_band(std::span<const ElementFeed> feeds, const ArrayGeometry &geom,
                                     std::span<const double> angles_deg);

} // namespace arof

#endif
