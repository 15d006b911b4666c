// SPDX-License-Identifier: Apache-2.0

#include "arof/spectrum.hpp"

#include "arof/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace arof
{

OpticalSpectrum prune_merge(std::vector<SpectralLine> lines, double amp_threshold, double freq_tolerance)
{
    if (amp_threshold < 0.0 || freq_tolerance < 0.0)
        throw InvalidInput("prune_merge: thresholds must be non-negative");

    std::stable_sort(lines.begin(), lines.end(),
                     [](const SpectralLine &a, const SpectralLine &b) { return a.freq < b.freq; });

    OpticalSpectrum out;
    out.lines_.reserve(lines.size());
    std::size_t i = 0;
    while (i < lines.size())
    {
        // A cluster grows while consecutive lines are within tolerance, so
        // surviving lines end up more than the tolerance apart. The
        // representative frequency is the strongest member's, which keeps
        // grid lines exact.
        cplx sum = 0.0;
        double best_mag = -1.0;
        double best_freq = lines[i].freq;
        std::size_t j = i;
        for (; j < lines.size() && (j == i || lines[j].freq - lines[j - 1].freq <= freq_tolerance); ++j)
        {
            sum += lines[j].amp;
            const double mag = std::abs(lines[j].amp);
            if (mag > best_mag)
            {
                best_mag = mag;
                best_freq = lines[j].freq;
            }
        }
        const double mag = std::abs(sum);
        if (mag > 0.0 && mag >= amp_threshold)
            out.lines_.push_back({best_freq, sum});
        i = j;
    }
    return out;
}

OpticalSpectrum prune_merge(const OpticalSpectrum &spec, double amp_threshold, double freq_tolerance)
{
    return prune_merge(spec.lines(), amp_threshold, freq_tolerance);
}

OpticalSpectrum OpticalSpectrum::from_lines(std::vector<SpectralLine> lines)
{
    for (const auto &l : lines)
    {
        if (!(l.freq > 0.0) || !std::isfinite(l.freq))
            throw InvalidInput("spectral line frequency must be positive and finite");
        if (!std::isfinite(l.amp.real()) || !std::isfinite(l.amp.imag()))
            throw InvalidInput("spectral line amplitude must be finite");
    }
    // Merge first without pruning so the relative threshold sees the summed amplitudes.
    OpticalSpectrum merged = prune_merge(std::move(lines), 0.0, kMergeToleranceHz);
    const double threshold = kRelativePruneThreshold * merged.max_amplitude();
    std::erase_if(merged.lines_, [threshold](const SpectralLine &l) { return std::abs(l.amp) < threshold; });
    return merged;
}

double OpticalSpectrum::total_power() const noexcept
{
    double p = 0.0;
    for (const auto &l : lines_)
        p += std::norm(l.amp);
    return p;
}

double OpticalSpectrum::max_amplitude() const noexcept
{
    double m = 0.0;
    for (const auto &l : lines_)
        m = std::max(m, std::abs(l.amp));
    return m;
}

const SpectralLine *OpticalSpectrum::find(double freq, double tolerance) const noexcept
{
    auto it = std::lower_bound(lines_.begin(), lines_.end(), freq - tolerance,
                               [](const SpectralLine &l, double f) { return l.freq < f; });
    if (it != lines_.end() && std::abs(it->freq - freq) <= tolerance)
        return &*it;
    return nullptr;
}

OpticalSpectrum OpticalSpectrum::scaled(cplx factor) const
{
    std::vector<SpectralLine> out = lines_;
    for (auto &l : out)
        l.amp *= factor;
    return from_lines(std::move(out));
}

OpticalSpectrum merge(const OpticalSpectrum &a, const OpticalSpectrum &b)
{
    std::vector<SpectralLine> all = a.lines();
    all.insert(all.end(), b.begin(), b.end());
    return OpticalSpectrum::from_lines(std::move(all));
}

void ToneSet::validate() const
{
    for (std::size_t i = 0; i < tones.size(); ++i)
    {
        if (!(tones[i] > 0.0) || !std::isfinite(tones[i]))
            throw InvalidInput("RF tones must be positive and finite");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(tones[i] - tones[j]) <= kMergeToleranceHz)
                throw InvalidInput("RF tones must be distinct");
    }
}

double ToneSet::max_tone() const noexcept
{
    double m = 0.0;
    for (double t : tones)
        m = std::max(m, t);
    return m;
}

OpticalSpectrum laser_line(double power_w, double center_freq)
{
    if (!(power_w > 0.0) || !std::isfinite(power_w))
        throw InvalidInput("laser power must be positive, got " + std::to_string(power_w));
    if (!(center_freq > 0.0))
        throw InvalidInput("laser frequency must be positive");
    return OpticalSpectrum::from_lines({{center_freq, cplx(std::sqrt(power_w), 0.0)}});
}

OpticalSpectrum direct_modulate(const OpticalSpectrum &spec, const ToneSet &tones)
{
    tones.validate();
    if (tones.tones.empty())
        return spec;

    double min_spacing = INFINITY;
    for (std::size_t i = 1; i < spec.size(); ++i)
        min_spacing = std::min(min_spacing, spec[i].freq - spec[i - 1].freq);
    if (2.0 * tones.max_tone() >= min_spacing)
        throw ToneOverlapError("RF tone " + std::to_string(tones.max_tone()) +
                               " Hz overlaps a neighbouring channel (line spacing " + std::to_string(min_spacing) +
                               " Hz)");

    std::vector<SpectralLine> out;
    out.reserve(spec.size() * (1 + 2 * tones.tones.size()));
    for (const auto &l : spec)
    {
        out.push_back(l);
        for (double f : tones.tones)
        {
            if (l.freq - f <= 0.0)
                throw ToneOverlapError("lower sideband falls below zero frequency");
            out.push_back({l.freq - f, 0.5 * l.amp});
            out.push_back({l.freq + f, 0.5 * l.amp});
        }
    }
    return OpticalSpectrum::from_lines(std::move(out));
}

double MzmConfig::modulation_index() const noexcept
{
    return std::numbers::pi * v_drive / (2.0 * v_pi);
}

void MzmConfig::validate() const
{
    if (!(v_pi > 0.0))
        throw InvalidInput("MZM V_pi must be positive");
    if (!(drive_freq > 0.0))
        throw InvalidInput("MZM drive frequency must be positive");
    if (truncation_order < 1)
        throw InvalidInput("MZM truncation order must be >= 1");
    if (bias_sign != 1 && bias_sign != -1)
        throw InvalidInput("MZM bias sign must be +1 or -1");
    if (!std::isfinite(v_drive))
        throw InvalidInput("MZM drive voltage must be finite");
}

double mzm_harmonic_coefficient(int q, double x, int bias_sign)
{
    const int order = std::abs(q);
    const double jq = std::cyl_bessel_j(static_cast<double>(order), std::abs(x));
    // J_q(-x) = (-1)^q J_q(x)
    const double bessel = (x < 0.0 && order % 2 == 1) ? -jq : jq;
    const double s = std::numbers::sqrt2 / 2.0;
    if (order == 0)
        return s * bessel;
    if (order % 2 == 0)
    {
        const int n = order / 2;
        return s * ((n % 2 == 0) ? 1.0 : -1.0) * bessel;
    }
    const int n = (order + 1) / 2;
    return bias_sign * s * ((n % 2 == 0) ? 1.0 : -1.0) * bessel;
}

double mzm_truncation_deficit(double x, int truncation_order)
{
    // Tail of sum_q J_q^2 = 1; terms beyond |q| = N + 60 are far below double precision.
    double tail = 0.0;
    for (int q = truncation_order + 60; q > truncation_order; --q)
    {
        const double j = std::cyl_bessel_j(static_cast<double>(q), std::abs(x));
        tail += 2.0 * j * j;
    }
    return tail;
}

int mzm_required_order(double x, double tolerance)
{
    for (int n = 1; n < 200; ++n)
        if (mzm_truncation_deficit(x, n) <= tolerance)
            return n;
    throw RangeError("modulation index too large for any supported truncation order");
}

OpticalSpectrum mzm_modulate(const OpticalSpectrum &spec, const MzmConfig &cfg)
{
    cfg.validate();
    const double x = cfg.modulation_index();
    const double deficit = mzm_truncation_deficit(x, cfg.truncation_order);
    if (deficit > cfg.energy_tolerance)
        throw RangeError("MZM truncation order " + std::to_string(cfg.truncation_order) + " loses " +
                         std::to_string(deficit) + " of the output power; need order " +
                         std::to_string(mzm_required_order(x, cfg.energy_tolerance)));

    const int n = cfg.truncation_order;
    std::vector<double> coeff(2 * n + 1);
    for (int q = -n; q <= n; ++q)
        coeff[q + n] = mzm_harmonic_coefficient(q, x, cfg.bias_sign);

    struct Tagged
    {
        SpectralLine line;
        std::size_t source;
    };
    std::vector<Tagged> out;
    out.reserve(spec.size() * coeff.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
    {
        for (int q = -n; q <= n; ++q)
        {
            const double c = coeff[q + n];
            if (c == 0.0)
                continue;
            const double f = spec[i].freq + q * cfg.drive_freq;
            if (f <= 0.0)
                throw RangeError("MZM harmonic falls below zero frequency");
            out.push_back({{f, spec[i].amp * c}, i});
        }
    }

    std::sort(out.begin(), out.end(), [](const Tagged &a, const Tagged &b) { return a.line.freq < b.line.freq; });
    for (std::size_t i = 1; i < out.size(); ++i)
    {
        if (out[i].line.freq - out[i - 1].line.freq <= kMergeToleranceHz && out[i].source != out[i - 1].source)
            throw AliasingError("MZM drive " + std::to_string(cfg.drive_freq) +
                                " Hz maps two input lines onto " + std::to_string(out[i].line.freq) + " Hz");
    }

    std::vector<SpectralLine> lines;
    lines.reserve(out.size());
    for (const auto &t : out)
        lines.push_back(t.line);
    return OpticalSpectrum::from_lines(std::move(lines));
}

OpticalSpectrum couple(const OpticalSpectrum &a, const OpticalSpectrum &b)
{
    const double s = std::numbers::sqrt2 / 2.0;
    std::vector<SpectralLine> all;
    all.reserve(a.size() + b.size());
    for (const auto &l : a)
        all.push_back({l.freq, l.amp * s});
    for (const auto &l : b)
        all.push_back({l.freq, l.amp * s});
    return OpticalSpectrum::from_lines(std::move(all));
}

} // namespace arof
