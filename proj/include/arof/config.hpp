// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: flat `section.key = value` lines, `#` comments. Values may
// carry a unit suffix (GHz, THz, ps, nm, mm, mW, deg, ...); a bare number is
// read in SI units. Lists are comma separated and a trailing unit applies to
// every unitless item ("3, 5, 6 GHz").

#ifndef AROF_CONFIG_HPP
#define AROF_CONFIG_HPP

#include "arof/delay.hpp"
#include "arof/frontend.hpp"
#include "arof/spectrum.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace arof
{

enum class Dimension
{
    none,
    frequency,
    time,
    length,
    power,
    voltage,
    angle,
    time_length, // chirp calibration, s*m
};

// Parses "<number> [unit]" exactly: the unit exponent is applied in decimal
// before conversion, so "193.525 THz" is the double nearest 193525e9.
double parse_quantity(std::string_view text, Dimension dim);

// Dimension of a config key; throws for unknown or non-numeric keys.
Dimension key_dimension(std::string_view key);

// Reporting unit for a dimension: value_in_unit = si_value / scale.
struct DisplayUnit
{
    double scale = 1.0;
    std::string name;
};
DisplayUnit display_unit(Dimension dim);

struct SweepSpec
{
    std::string var;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    std::vector<double> values() const;
};

// "VAR=START:STOP:STEP", each bound parsed in the unit dimension of VAR.
SweepSpec parse_sweep(std::string_view text);

enum class CuDelayMode
{
    chirp,
    delta_t
};

enum class RrhDelayMode
{
    align,   // CFBG3 slope aligned to the antenna spacing ratio
    delta_t, // explicit mmWave delta-T
    none
};

struct ScenarioConfig
{
    double laser1_power = 1.0e-3;
    double laser1_freq = 0.0;
    double laser2_power = 1.0e-3;
    double laser2_freq = 0.0;
    ToneSet tones;
    MzmConfig mzm1;
    MzmConfig mzm2;

    std::size_t n_elements = 0;
    double wdm_first = 0.0;   // lowest WDM central frequency
    double wdm_spacing = 0.0; // combined-comb spacing
    double sub6_design_freq = 3.0e9;
    double mm_design_freq = 28.0e9;

    CuDelayMode cu_mode = CuDelayMode::chirp;
    ChirpSpec chirp;
    double cu_delta_t = 0.0; // s, between lines spaced twice the WDM spacing
    int cu_sign = +1;

    RrhDelayMode rrh_mode = RrhDelayMode::align;
    double rrh_delta_t = 0.0; // s, total mmWave delta-T

    double port1_lo = 0.0;
    double port1_hi = 12.5e9;
    double window_lo = -12.5e9;
    double window_hi = 37.5e9;
    double responsivity = 1.0;
    double amplifier_gain = 1.0;
    FrequencyBand sub6_bpf{2.5e9, 7.0e9};
    FrequencyBand mm_bpf{20.0e9, 40.0e9};

    double grid_start = 0.0;
    double grid_stop = 180.0;
    double grid_step = 0.01;

    std::optional<SweepSpec> sweep;

    std::set<std::string> keys_set; // keys given explicitly

    // Sets one scalar key, as the parser and sweeps do.
    void set(std::string_view key, double value);

    double channel_pitch() const noexcept { return 2.0 * wdm_spacing; }
    FrequencyBand grating_band() const noexcept;
    DelayLaw cu_law() const;
    std::optional<DelayLaw> rrh_law() const;
    double sub6_spacing() const noexcept;
    double mm_spacing() const noexcept;
    std::vector<double> angles() const;

    // Static checks, including a dry optical run for dead elements.
    void validate() const;
    ChainSetup to_setup() const;
};

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string &path);

// Names of every accepted key, in documentation order.
std::vector<std::string> config_keys();
std::vector<std::string> required_config_keys();

} // namespace arof

#endif
