// SPDX-License-Identifier: Apache-2.0

#include "arof/config.hpp"

#include "arof/beamforming.hpp"
#include "arof/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace arof
{
namespace
{

struct UnitDef
{
    std::string_view name;
    Dimension dim;
    int exponent;
};

constexpr std::array kUnits{
    UnitDef{"Hz", Dimension::frequency, 0},   UnitDef{"kHz", Dimension::frequency, 3},
    UnitDef{"MHz", Dimension::frequency, 6},  UnitDef{"GHz", Dimension::frequency, 9},
    UnitDef{"THz", Dimension::frequency, 12}, UnitDef{"s", Dimension::time, 0},
    UnitDef{"ms", Dimension::time, -3},       UnitDef{"us", Dimension::time, -6},
    UnitDef{"ns", Dimension::time, -9},       UnitDef{"ps", Dimension::time, -12},
    UnitDef{"fs", Dimension::time, -15},      UnitDef{"m", Dimension::length, 0},
    UnitDef{"mm", Dimension::length, -3},     UnitDef{"um", Dimension::length, -6},
    UnitDef{"nm", Dimension::length, -9},     UnitDef{"W", Dimension::power, 0},
    UnitDef{"mW", Dimension::power, -3},      UnitDef{"uW", Dimension::power, -6},
    UnitDef{"V", Dimension::voltage, 0},      UnitDef{"mV", Dimension::voltage, -3},
    UnitDef{"deg", Dimension::angle, 0},      UnitDef{"s*m", Dimension::time_length, 0},
    UnitDef{"ps*nm", Dimension::time_length, -21},
};

std::string_view dimension_name(Dimension d)
{
    switch (d)
    {
    case Dimension::none: return "dimensionless";
    case Dimension::frequency: return "frequency";
    case Dimension::time: return "time";
    case Dimension::length: return "length";
    case Dimension::power: return "power";
    case Dimension::voltage: return "voltage";
    case Dimension::angle: return "angle";
    case Dimension::time_length: return "time*length";
    }
    return "?";
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
    {
        if (i == s.size() || s[i] == sep)
        {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

// Splits "<number><unit>" into its numeric text and unit text.
std::pair<std::string, std::string> split_number(std::string_view text)
{
    text = trim(text);
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-'))
        ++i;
    bool digits = false;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'))
    {
        digits = digits || std::isdigit(static_cast<unsigned char>(text[i]));
        ++i;
    }
    if (!digits)
        throw InvalidInput("'" + std::string(text) + "' is not a number");
    // Exponent only when followed by a digit, so "5 eV"-style units are not eaten.
    if (i + 1 < text.size() && (text[i] == 'e' || text[i] == 'E'))
    {
        std::size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-'))
            ++j;
        if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        {
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            i = j;
        }
    }
    return {std::string(text.substr(0, i)), std::string(trim(text.substr(i)))};
}

double scaled_decimal(const std::string &number, int exponent)
{
    std::string mantissa = number;
    int exp = exponent;
    const auto epos = number.find_first_of("eE");
    if (epos != std::string::npos)
    {
        mantissa = number.substr(0, epos);
        exp += std::atoi(number.c_str() + epos + 1);
    }
    const std::string composed = mantissa + "e" + std::to_string(exp);
    char *end = nullptr;
    const double v = std::strtod(composed.c_str(), &end);
    if (end != composed.c_str() + composed.size() || !std::isfinite(v))
        throw InvalidInput("'" + number + "' is not a finite number");
    return v;
}

enum class Kind
{
    scalar,
    integer,
    sign,
    list,
    word,
};

struct KeySpec
{
    std::string_view name;
    Dimension dim;
    Kind kind;
    bool required;
    std::function<void(ScenarioConfig &, double)> set{};
};

int as_int(double v, std::string_view key)
{
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw InvalidInput(std::string(key) + " must be an integer");
    return static_cast<int>(v);
}

int as_sign(double v, std::string_view key)
{
    if (v != 1.0 && v != -1.0)
        throw InvalidInput(std::string(key) + " must be +1 or -1");
    return static_cast<int>(v);
}

const std::vector<KeySpec> &key_table()
{
    using D = Dimension;
    using C = ScenarioConfig;
    static const std::vector<KeySpec> table{
        {"laser1.power", D::power, Kind::scalar, false, [](C &c, double v) { c.laser1_power = v; }},
        {"laser1.freq", D::frequency, Kind::scalar, true, [](C &c, double v) { c.laser1_freq = v; }},
        {"laser2.power", D::power, Kind::scalar, false, [](C &c, double v) { c.laser2_power = v; }},
        {"laser2.freq", D::frequency, Kind::scalar, true, [](C &c, double v) { c.laser2_freq = v; }},
        {"tones.freqs", D::frequency, Kind::list, true},
        {"mzm1.drive", D::frequency, Kind::scalar, true, [](C &c, double v) { c.mzm1.drive_freq = v; }},
        {"mzm1.v_drive", D::voltage, Kind::scalar, false, [](C &c, double v) { c.mzm1.v_drive = v; }},
        {"mzm1.v_pi", D::voltage, Kind::scalar, false, [](C &c, double v) { c.mzm1.v_pi = v; }},
        {"mzm1.bias", D::none, Kind::sign, false,
         [](C &c, double v) { c.mzm1.bias_sign = as_sign(v, "mzm1.bias"); }},
        {"mzm1.order", D::none, Kind::integer, false,
         [](C &c, double v) { c.mzm1.truncation_order = as_int(v, "mzm1.order"); }},
        {"mzm2.drive", D::frequency, Kind::scalar, true, [](C &c, double v) { c.mzm2.drive_freq = v; }},
        {"mzm2.v_drive", D::voltage, Kind::scalar, false, [](C &c, double v) { c.mzm2.v_drive = v; }},
        {"mzm2.v_pi", D::voltage, Kind::scalar, false, [](C &c, double v) { c.mzm2.v_pi = v; }},
        {"mzm2.bias", D::none, Kind::sign, false,
         [](C &c, double v) { c.mzm2.bias_sign = as_sign(v, "mzm2.bias"); }},
        {"mzm2.order", D::none, Kind::integer, false,
         [](C &c, double v) { c.mzm2.truncation_order = as_int(v, "mzm2.order"); }},
        {"array.elements", D::none, Kind::integer, true,
         [](C &c, double v) {
             const int n = as_int(v, "array.elements");
             if (n < 0)
                 throw InvalidInput("array.elements must be positive");
             c.n_elements = static_cast<std::size_t>(n);
         }},
        {"array.sub6_design_freq", D::frequency, Kind::scalar, false,
         [](C &c, double v) { c.sub6_design_freq = v; }},
        {"array.mm_design_freq", D::frequency, Kind::scalar, false, [](C &c, double v) { c.mm_design_freq = v; }},
        {"wdm.first", D::frequency, Kind::scalar, true, [](C &c, double v) { c.wdm_first = v; }},
        {"wdm.spacing", D::frequency, Kind::scalar, true, [](C &c, double v) { c.wdm_spacing = v; }},
        {"cfbg.chirp", D::length, Kind::scalar, false,
         [](C &c, double v) {
             c.chirp.total_chirp = v;
             c.cu_mode = CuDelayMode::chirp;
         }},
        {"cfbg.delta_t", D::time, Kind::scalar, false,
         [](C &c, double v) {
             c.cu_delta_t = v;
             c.cu_mode = CuDelayMode::delta_t;
         }},
        {"cfbg.sign", D::none, Kind::sign, false, [](C &c, double v) { c.cu_sign = as_sign(v, "cfbg.sign"); }},
        {"cfbg.calibration", D::time_length, Kind::scalar, false, [](C &c, double v) { c.chirp.calibration = v; }},
        {"cfbg.length", D::length, Kind::scalar, false, [](C &c, double v) { c.chirp.grating_length = v; }},
        {"cfbg.center_wavelength", D::length, Kind::scalar, false,
         [](C &c, double v) { c.chirp.center_wavelength = v; }},
        {"cfbg3.mode", D::none, Kind::word, false},
        {"cfbg3.delta_t", D::time, Kind::scalar, false,
[](C &c, double v) { c.rrh_delta_t = v; }},
        {"interleaver.port1_lo", D::frequency, Kind::scalar, false, [](C &c, double v) { c.port1_lo = v; }},
        {"interleaver.port1_hi", D::frequency, Kind::scalar, false, [](C &c, double v) { c.port1_hi = v; }},
        {"demux.window_lo", D::frequency, Kind::scalar, false, [](C &c, double v) { c.window_lo = v; }},
        {"demux.window_hi", D::frequency, Kind::scalar, false, [](C &c, double v) { c.window_hi = v; }},
        {"pd.responsivity", D::none, Kind::scalar, false, [](C &c, double v) { c.responsivity = v; }},
        {"ea.gain", D::none, Kind::scalar, false, [](C &c, double v) { c.amplifier_gain = v; }},
        {"sub6.bpf_lo", D::frequency, Kind::scalar, false, [](C &c, double v) { c.sub6_bpf.lo = v; }},
        {"sub6.bpf_hi", D::frequency, Kind::scalar, false, [](C &c, double v) { c.sub6_bpf.hi = v; }},
        {"mm.bpf_lo", D::frequency, Kind::scalar, false, [](C &c, double v) { c.mm_bpf.lo = v; }},
        {"mm.bpf_hi", D::frequency, Kind::scalar, false, [](C &c, double v) { c.mm_bpf.hi = v; }},
        {"grid.start", D::angle, Kind::scalar, false, [](C &c, double v) { c.grid_start = v; }},
        {"grid.stop", D::angle, Kind::scalar, false, [](C &c, double v) { c.grid_stop = v; }},
        {"grid.step", D::angle, Kind::scalar, false, [](C &c, double v) { c.grid_step = v; }},
        {"sweep.spec", D::none, Kind::word, false},
    };
    return table;
}

const KeySpec *find_key(std::string_view name)
{
    for (const auto &k : key_table())
        if (k.name == name)
            return &k;
    return nullptr;
}

bool has(const ScenarioConfig &c, std::string_view key)
{
    return c.keys_set.count(std::string(key)) > 0;
}

double floor_mod(double a, double m)
{
    double r = std::fmod(a, m);
    if (r < 0.0)
        r += m;
    return r;
}

} // namespace

Dimension key_dimension(std::string_view key)
{
    const KeySpec *k = find_key(key);
    if (!k || !k->set)
        throw InvalidInput("'" + std::string(key) + "' is not a numeric key");
    return k->dim;
}

DisplayUnit display_unit(Dimension dim)
{
    switch (dim)
    {
    case Dimension::frequency: return {1e9, "GHz"};
    case Dimension::time: return {1e-12, "ps"};
    case Dimension::length: return {1e-9, "nm"};
    case Dimension::power: return {1e-3, "mW"};
    case Dimension::voltage: return {1.0, "V"};
    case Dimension::angle: return {1.0, "deg"};
    case Dimension::time_length: return {1e-21, "ps*nm"};
    case Dimension::none: break;
    }
    return {1.0, ""};
}

double parse_quantity(std::string_view text, Dimension dim)
{
    auto [number, unit] = split_number(text);
    if (unit.empty())
        return scaled_decimal(number, 0);
    for (const auto &u : kUnits)
    {
        if (u.name != unit)
            continue;
        if (u.dim != dim)
            throw InvalidInput("unit mismatch: '" + unit + "' is a " + std::string(dimension_name(u.dim)) +
                               " unit, expected " + std::string(dimension_name(dim)));
        return scaled_decimal(number, u.exponent);
    }
    throw InvalidInput("unknown unit '" + unit + "'");
}

std::vector<double> SweepSpec::values() const
{
    if (step == 0.0 || !std::isfinite(step))
        throw InvalidInput("sweep step must be non-zero");
    if ((stop - start) * step < 0.0)
        throw InvalidInput("sweep step points away from the stop value");
    const double span = (stop - start) / step;
    const double rounded = std::round(span);
    const bool exact = std::abs(span - rounded) <= 1e-9 * std::max(1.0, std::abs(span));
    const auto intervals = static_cast<std::size_t>(exact ? rounded : std::floor(span));
    if (intervals > 1000000)
        throw InvalidInput("sweep has too many steps");
    std::vector<double> v(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i)
        v[i] = exact && intervals > 0 ? start + (stop - start) * static_cast<double>(i) / static_cast<double>(intervals)
                                      : start + static_cast<double>(i) * step;
    if (exact)
        v.back() = stop;
    return v;
}

SweepSpec parse_sweep(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw InvalidInput("sweep must look like VAR=START:STOP:STEP");
    SweepSpec s;
    s.var = std::string(trim(text.substr(0, eq)));
    const KeySpec *key = find_key(s.var);
    if (!key || key->kind != Kind::scalar)
        throw InvalidInput("'" + s.var + "' is not a sweepable scalar key");
    const auto parts = split(text.substr(eq + 1), ':');
    if (parts.size() != 3)
        throw InvalidInput("sweep range must be START:STOP:STEP");
    s.start = parse_quantity(parts[0], key->dim);
    s.stop = parse_quantity(parts[1], key->dim);
    s.step = parse_quantity(parts[2], key->dim);
    s.values();
    return s;
}

void ScenarioConfig::set(std::string_view key, double value)
{
    const KeySpec *k = find_key(key);
    if (!k || !k->set)
        throw InvalidInput("'" + std::string(key) + "' is not a scalar key");
    k->set(*this, value);
    keys_set.insert(std::string(key));
    // A swept or overridden delay source replaces the other one.
    if (key == "cfbg.chirp")
        keys_set.erase("cfbg.delta_t");
    else if (key == "cfbg.delta_t")
        keys_set.erase("cfbg.chirp");
}

FrequencyBand ScenarioConfig::grating_band() const noexcept
{
    return {wdm_first - wdm_spacing, wdm_first + 2.0 * static_cast<double>(n_elements) * wdm_spacing};
}

DelayLaw ScenarioConfig::cu_law() const
{
    const double pitch = channel_pitch();
    const double dt = cu_mode == CuDelayMode::chirp ? chirp_to_channel_delay(chirp, pitch) : cu_delta_t;
    return DelayLaw::differential(cu_sign * dt / pitch, grating_band());
}

std::optional<DelayLaw> ScenarioConfig::rrh_law() const
{
    const double n = cu_law().slope;
    switch (rrh_mode)
    {
    case RrhDelayMode::none:
        return std::nullopt;
    case RrhDelayMode::align:
        return DelayLaw::differential(align_mmwave_slope(n, sub6_spacing(), mm_spacing()), grating_band());
    case RrhDelayMode::delta_t:
        return DelayLaw::differential(cu_sign * rrh_delta_t / channel_pitch() - n, grating_band());
    }
    return std::nullopt;
}

double ScenarioConfig::sub6_spacing() const noexcept
{
    return kSpeedOfLight / (2.0 * sub6_design_freq);
}

double ScenarioConfig::mm_spacing() const noexcept
{
    return kSpeedOfLight / (2.0 * mm_design_freq);
}

std::vector<double> ScenarioConfig::angles() const
{
    return angle_grid(grid_start, grid_stop, grid_step);
}

ChainSetup ScenarioConfig::to_setup() const
{
    ChainSetup s;
    s.laser1_power = laser1_power;
    s.laser1_freq = laser1_freq;
    s.laser2_power = laser2_power;
    s.laser2_freq = laser2_freq;
    s.tones = tones;
    s.mzm1 = mzm1;
    s.mzm2 = mzm2;
    s.cu_law = cu_law();
    s.rrh_law = rrh_law();
    s.interleaver = {channel_pitch(), laser1_freq, port1_lo, port1_hi};
    s.sub6_plan = ChannelPlan::uniform(wdm_first, channel_pitch(), n_elements, window_lo, window_hi);
    s.mm_plan = s.sub6_plan;
    s.responsivity = responsivity;
    s.amplifier_gain = amplifier_gain;
    s.sub6_bpf = sub6_bpf;
    s.mm_bpf = mm_bpf;
    return s;
}

void ScenarioConfig::validate() const
{
    std::vector<std::string> missing;
    for (const auto &k : key_table())
        if (k.required && !has(*this, k.name))
            missing.emplace_back(k.name);
    if (!has(*this, "cfbg.chirp") && !has(*this, "cfbg.delta_t"))
        missing.emplace_back("cfbg.chirp|cfbg.delta_t");
    if (!missing.empty())
    {
        std::string msg = "missing required keys:";
        for (const auto &m : missing)
            msg += " " + m;
        throw ConfigError(0, msg);
    }
    if (has(*this, "cfbg.chirp") && has(*this, "cfbg.delta_t"))
        throw ConfigError(0, "cfbg.chirp and cfbg.delta_t are mutually exclusive");
    if (rrh_mode == RrhDelayMode::delta_t && !has(*this, "cfbg3.delta_t"))
        throw ConfigError(0, "cfbg3.mode = delta_t needs cfbg3.delta_t");

    auto fail = [](const std::string &m) { throw ConfigError(0, m); };
    if (n_elements < 2)
        fail("array.elements must be at least 2");
    if (!(wdm_spacing > 0.0))
        fail("wdm.spacing must be positive");
    if (!(sub6_design_freq > 0.0) || !(mm_design_freq > 0.0))
        fail("array design frequencies must be positive");
    const double pitch = channel_pitch();
    if (mzm1.drive_freq != pitch || mzm2.drive_freq != pitch)
        fail("MZM drive frequencies must equal twice wdm.spacing so both combs share the channel grid");
    if (floor_mod(wdm_first - laser1_freq, pitch) != 0.0)
        fail("wdm.first must lie on the laser1 comb grid");
    if (floor_mod(laser2_freq - laser1_freq, pitch) != wdm_spacing)
        fail("laser2.freq must sit wdm.spacing above the laser1 comb grid");
    if (tones.max_tone() >= wdm_spacing / 2.0)
        fail("RF tones must stay below half the WDM spacing to remain inside their channel");
    if (!(grid_step > 0.0) || !(grid_start >= 0.0) || !(grid_stop <= 180.0) || !(grid_start < grid_stop))
        fail("angle grid must satisfy 0 <= start < stop <= 180 with step > 0");
    if (cu_mode == CuDelayMode::delta_t && !std::isfinite(cu_delta_t))
        fail("cfbg.delta_t must be finite");

    try
    {
        tones.validate();
        if (cu_mode == CuDelayMode::chirp)
            chirp.validate();
        const ChainSetup s = to_setup();
        const auto st = propagate_optical(s);
        for (const auto &[port, band] : {std::pair{&st.port1, Band::sub6}, std::pair{&st.port2, Band::mmwave}})
        {
            const auto dm = demux(*port, band == Band::sub6 ? s.sub6_plan : s.mm_plan);
            if (!dm.dead_elements.empty())
                fail("element " + std::to_string(dm.dead_elements.front()) + " of the " + to_string(band) +
                     " array receives fewer than two optical lines");
        }
        extract_element_feeds(s);
    }
    catch (const ConfigError &)
    {
        throw;
    }
    catch (const std::exception &e)
    {
        fail(e.what());
    }
}

ScenarioConfig parse_config(std::string_view text)
{
    ScenarioConfig cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const KeySpec *spec = find_key(key);
        if (!spec)
            throw ConfigError(line_no, "unknown key '" + key + "'");
        if (value.empty())
            throw ConfigError(line_no, "key '" + key + "' has no value");
        if (cfg.keys_set.count(key))
            throw ConfigError(line_no, "key '" + key + "' given twice");

        try
        {
            switch (spec->kind)
            {
            case Kind::scalar:
            case Kind::integer:
            case Kind::sign:
                spec->set(cfg, parse_quantity(value, spec->dim));
                break;
            case Kind::list:
            {
                auto items = split(value, ',');
                std::string shared_unit;
                if (!items.empty())
                    shared_unit = split_number(items.back()).second;
                cfg.tones.tones.clear();
                for (auto item : items)
                {
                    std::string text_item(item);
                    if (split_number(item).second.empty() && !shared_unit.empty())
                        text_item += " " + shared_unit;
                    cfg.tones.tones.push_back(parse_quantity(text_item, spec->dim));
                }
                break;
            }
            case Kind::word:
                if (key == "cfbg3.mode")
                {
                    if (value == "align")
                        cfg.rrh_mode = RrhDelayMode::align;
                    else if (value == "delta_t")
                        cfg.rrh_mode = RrhDelayMode::delta_t;
                    else if (value == "none")
                        cfg.rrh_mode = RrhDelayMode::none;
                    else
                        throw InvalidInput("cfbg3.mode must be align, delta_t or none");
                }
                else if (key == "sweep.spec")
                    cfg.sweep = parse_sweep(value);
                break;
            }
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            throw ConfigError(line_no, key + ": " + e.what());
        }
        cfg.keys_set.insert(key);
    }
    // An explicit mmWave delta-T implies delta_t mode unless the mode is given.
    if (cfg.keys_set.count("cfbg3.delta_t") && !cfg.keys_set.count("cfbg3.mode"))
        cfg.rrh_mode = RrhDelayMode::delta_t;
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path, "cannot open config");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::string> config_keys()
{
    std::vector<std::string> out;
    for (const auto &k : key_table())
        out.emplace_back(k.name);
    return out;
}

std::vector<std::string> required_config_keys()
{
    std::vector<std::string> out;
    for (const auto &k : key_table())
        if (k.required)
            out.emplace_back(k.name);
    out.emplace_back("cfbg.chirp|cfbg.delta_t");
    return out;
}

} // namespace arof
