// SPDX-License-Identifier: Apache-2.0

#include "arof/frontend.hpp"

#include "arof/errors.hpp"
#include "arof/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace arof
{

std::string to_string(Band band)
{
    return band == Band::sub6 ? "sub6" : "mmwave";
}

void PortFilterSpec::validate() const
{
    if (!(period > 0.0))
        throw InvalidInput("interleaver period must be positive");
    if (!(port1_lo >= 0.0 && port1_hi >= port1_lo && port1_hi - port1_lo < period && port1_hi < period))
        throw InvalidInput("interleaver port-1 window must satisfy 0 <= lo <= hi < period");
}

bool PortFilterSpec::routes_to_port1(double freq) const noexcept
{
    // fmod is exact, so integer-Hz grids route without rounding.
    double offset = std::fmod(freq - reference, period);
    if (offset < 0.0)
        offset += period;
    return offset >= port1_lo && offset <= port1_hi;
}

InterleavedPorts interleave(const OpticalSpectrum &spec, const PortFilterSpec &filt)
{
    filt.validate();
    std::vector<SpectralLine> p1, p2;
    for (const auto &l : spec)
        (filt.routes_to_port1(l.freq) ? p1 : p2).push_back(l);
    return {OpticalSpectrum::from_lines(std::move(p1)), OpticalSpectrum::from_lines(std::move(p2))};
}

void ChannelPlan::validate() const
{
    for (std::size_t i = 0; i < windows.size(); ++i)
    {
        if (!(windows[i].lo < windows[i].hi))
            throw InvalidInput("demux window " + std::to_string(i) + " is empty");
        for (std::size_t j = 0; j < i; ++j)
            if (windows[i].lo < windows[j].hi && windows[j].lo < windows[i].hi)
                throw InvalidInput("demux windows " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
    }
}

ChannelPlan ChannelPlan::uniform(double first_center, double pitch, std::size_t n, double lo_offset,
                                 double hi_offset)
{
    ChannelPlan plan;
    plan.windows.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const double c = first_center + static_cast<double>(k) * pitch;
        plan.windows.push_back({c + lo_offset, c + hi_offset});
    }
    plan.validate();
    return plan;
}

DemuxResult demux(const OpticalSpectrum &port, const ChannelPlan &plan)
{
    plan.validate();
    DemuxResult out;
    out.elements.reserve(plan.size());
    for (std::size_t k = 0; k < plan.size(); ++k)
    {
        std::vector<SpectralLine> lines;
        for (const auto &l : port)
            if (plan.windows[k].contains(l.freq))
                lines.push_back(l);
        if (lines.size() < 2)
            out.dead_elements.push_back(k);
        out.elements.push_back(OpticalSpectrum::from_lines(std::move(lines)));
    }
    return out;
}

RfTone RfTone::from_phasor(double freq, cplx value)
{
    double phase = std::arg(value);
    if (phase <= -std::numbers::pi)
        phase = std::numbers::pi;
    return {freq, std::abs(value), phase};
}

cplx beat_phasor(const SpectralLine &a, const SpectralLine &b, double responsivity)
{
    return 2.0 * responsivity * a.amp * std::conj(b.amp);
}

namespace
{

// Beats grouped into tones whose frequencies agree within the merge tolerance.
template <typename Visit>
void for_each_tone(const std::vector<kernels::Beat> &beats, Visit visit)
{
    std::vector<std::size_t> order(beats.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return beats[a].freq < beats[b].freq; });
    std::size_t i = 0;
    while (i < order.size())
    {
        std::size_t j = i;
        const double anchor = beats[order[i]].freq;
        while (j < order.size() && beats[order[j]].freq - anchor <= kMergeToleranceHz)
            ++j;
        visit(std::span<const std::size_t>(order.data() + i, j - i));
        i = j;
    }
}

double dc_level(const OpticalSpectrum &spec, double responsivity)
{
    return responsivity * spec.total_power();
}

} // namespace

Photocurrent photodetect(const OpticalSpectrum &spec, double responsivity)
{
    Photocurrent out;
    out.dc = dc_level(spec, responsivity);
    const auto beats = kernels::pair_beats_parallel(spec.lines(), responsivity);
    for_each_tone(beats, [&](std::span<const std::size_t> group) {
        cplx sum = 0.0;
        for (std::size_t idx : group)
            sum += beats[idx].amp;
        if (std::abs(sum) > 0.0)
            out.tones.push_back(RfTone::from_phasor(beats[group.front()].freq, sum));
    });
    return out;
}

double ToneBreakdown::spur_ratio() const noexcept
{
    const double s = std::abs(service);
    if (s == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::abs(spur) / s;
}

DetectedElement photodetect_detailed(const OpticalSpectrum &spec, double responsivity)
{
    DetectedElement out;
    out.dc = dc_level(spec, responsivity);
    if (spec.empty())
        return out;

    std::size_t pilot = 0;
    for (std::size_t i = 1; i < spec.size(); ++i)
        if (std::abs(spec[i].amp) > std::abs(spec[pilot].amp))
            pilot = i;
    out.pilot_freq = spec[pilot].freq;

    const auto beats = kernels::pair_beats_parallel(spec.lines(), responsivity);
    for_each_tone(beats, [&](std::span<const std::size_t> group) {
        ToneBreakdown t;
        double best = -1.0;
        for (std::size_t idx : group)
        {
            const auto &b = beats[idx];
            (b.hi == pilot || b.lo == pilot ? t.service : t.spur) += b.amp;
            if (std::abs(b.amp) > best)
            {
                best = std::abs(b.amp);
                t.pair_hi = spec[b.hi].freq;
                t.pair_lo = spec[b.lo].freq;
            }
        }
        const cplx total = t.service + t.spur;
        if (std::abs(total) == 0.0)
            return;
        t.tone = RfTone::from_phasor(beats[group.front()].freq, total);
        out.tones.push_back(t);
    });
    return out;
}

std::vector<RfTone> bandpass(std::span<const RfTone> tones, double f_lo, double f_hi)
{
    if (!(f_lo < f_hi))
        throw InvalidInput("band-pass filter needs f_lo < f_hi");
    std::vector<RfTone> out;
    for (const auto &t : tones)
        if (t.freq > f_lo && t.freq < f_hi)
            out.push_back(t);
    return out;
}

std::vector<ToneBreakdown> bandpass(std::span<const ToneBreakdown> tones, double f_lo, double f_hi)
{
    if (!(f_lo < f_hi))
        throw InvalidInput("band-pass filter needs f_lo < f_hi");
    std::vector<ToneBreakdown> out;
    for (const auto &t : tones)
        if (t.tone.freq > f_lo && t.tone.freq < f_hi)
            out.push_back(t);
    return out;
}

std::vector<double> relative_delays(std::span<const cplx> phasors, double freq,
                                    std::optional<std::span<const double>> predicted)
{
    if (!(freq > 0.0))
        throw InvalidInput("relative delay needs a positive tone frequency");
    if (predicted && predicted->size() != phasors.size())
        throw InvalidInput("prediction count does not match element count");

    const double two_pi_f = 2.0 * std::numbers::pi * freq;
    std::vector<double> out(phasors.size(), 0.0);
    if (phasors.empty())
        return out;

    if (predicted)
    {
        for (std::size_t k = 1; k < phasors.size(); ++k)
        {
            const double principal = -std::arg(phasors[k] * std::conj(phasors[0])) / two_pi_f;
            const double wraps = std::round(((*predicted)[k] - principal) * freq);
            out[k] = principal + wraps / freq;
        }
        return out;
    }

    for (std::size_t k = 1; k < phasors.size(); ++k)
    {
        const double step_phase = std::arg(phasors[k] * std::conj(phasors[k - 1]));
        if (std::abs(step_phase) > std::numbers::pi * (1.0 - 1e-9))
            throw InvalidInput("inter-element phase step is half an RF period; supply a delay prediction");
        out[k] = out[k - 1] - step_phase / two_pi_f;
    }
    return out;
}

double ChainSetup::optical_delay(double freq, Band band) const noexcept
{
    double t = cu_law.delay_at(freq);
    if (band == Band::mmwave && rrh_law)
        t += rrh_law->delay_at(freq);
    return t;
}

void ChainSetup::validate() const
{
    if (!(laser1_power > 0.0) || !(laser2_power > 0.0))
        throw InvalidInput("laser powers must be positive");
    tones.validate();
    if (tones.tones.empty())
        throw InvalidInput("at least one RF tone is required");
    mzm1.validate();
    mzm2.validate();
    cu_law.validate();
    if (rrh_law)
        rrh_law->validate();
    interleaver.validate();
    sub6_plan.validate();
    mm_plan.validate();
    if (sub6_plan.size() != mm_plan.size())
        throw InvalidInput("sub-6GHz and mmWave arrays must have the same element count");
    if (sub6_plan.size() < 2)
        throw InvalidInput("at least two antenna elements are required");
    if (!(responsivity > 0.0))
        throw InvalidInput("photodetector responsivity must be positive");
    if (!(amplifier_gain > 0.0))
        throw InvalidInput("amplifier gain must be positive");
    if (!(sub6_bpf.lo < sub6_bpf.hi) || !(mm_bpf.lo < mm_bpf.hi))
        throw InvalidInput("band-pass windows need f_lo < f_hi");
}

ChainSetup ChainSetup::table2(const DelayLaw &cu_law, std::optional<DelayLaw> rrh_law)
{
    ChainSetup s;
    s.cu_law = cu_law;
    s.rrh_law = std::move(rrh_law);
    s.interleaver = {50.0e9, 193.500e12, 0.0, 12.5e9};
    s.sub6_plan = ChannelPlan::uniform(193.450e12, 50.0e9, 4, -12.5e9, 37.5e9);
    s.mm_plan = s.sub6_plan;
    return s;
}

OpticalStages propagate_optical(const ChainSetup &setup)
{
    setup.validate();
    OpticalStages st;
    st.upper = direct_modulate(laser_line(setup.laser1_power, setup.laser1_freq), setup.tones);
    st.upper = apply_delay(mzm_modulate(st.upper, setup.mzm1), setup.cu_law);
    st.lower = apply_delay(mzm_modulate(laser_line(setup.laser2_power, setup.laser2_freq), setup.mzm2),
                           setup.cu_law);
    st.combined = couple(st.upper, st.lower);
    auto ports = interleave(st.combined, setup.interleaver);
    st.port1 = std::move(ports.port1);
    st.port2 = setup.rrh_law ? apply_delay(ports.port2, *setup.rrh_law) : std::move(ports.port2);
    return st;
}

namespace
{

std::vector<ElementFeed> band_feeds(const ChainSetup &setup, const OpticalSpectrum &port, const ChannelPlan &plan,
                                    const FrequencyBand &bpf, Band band)
{
    const auto dm = demux(port, plan);
    const std::size_t n = dm.elements.size();

    std::vector<std::vector<ToneBreakdown>> detected(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        auto det = photodetect_detailed(dm.elements[k], setup.responsivity);
        detected[k] = bandpass(det.tones, bpf.lo, bpf.hi);
        for (auto &t : detected[k])
        {
            t.tone.amp *= setup.amplifier_gain;
            t.service *= setup.amplifier_gain;
            t.spur *= setup.amplifier_gain;
        }
        const bool any_service = std::any_of(detected[k].begin(), detected[k].end(),
                                             [](const ToneBreakdown &t) { return t.is_service(); });
        if (!any_service)
            throw DeadElementError(k, to_string(band));
    }

    auto find_tone = [](const std::vector<ToneBreakdown> &tones, double f) -> const ToneBreakdown * {
        for (const auto &t : tones)
            if (std::abs(t.tone.freq - f) <= kMergeToleranceHz)
                return &t;
        return nullptr;
    };
    auto pair_delay = [&](const ToneBreakdown &t) {
        return effective_rf_delay(t.pair_hi, setup.optical_delay(t.pair_hi, band), t.pair_lo,
                                  setup.optical_delay(t.pair_lo, band));
    };

    std::vector<ElementFeed> feeds(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        feeds[k].element = k;
        feeds[k].band = band;
        for (const auto &t : detected[k])
        {
            FeedTone ft;
            ft.tone = t.tone;
            ft.service = t.is_service();
            ft.spur_ratio = t.spur_ratio();
            ft.relative_delay = std::numeric_limits<double>::quiet_NaN();
            ft.predicted_delay = std::numeric_limits<double>::quiet_NaN();
            feeds[k].tones.push_back(ft);
        }
    }

    // Per tone of element 0: phasors and predictions across all elements.
    for (std::size_t ti = 0; ti < detected[0].size(); ++ti)
    {
        const double f = detected[0][ti].tone.freq;
        std::vector<cplx> phasors(n);
        std::vector<double> predicted(n);
        std::vector<std::size_t> index(n);
        bool complete = true;
        for (std::size_t k = 0; k < n && complete; ++k)
        {
            const ToneBreakdown *t = find_tone(detected[k], f);
            if (!t)
            {
                complete = false;
                break;
            }
            phasors[k] = t->tone.phasor();
            predicted[k] = pair_delay(*t);
            index[k] = static_cast<std::size_t>(t - detected[k].data());
        }
        if (!complete)
            continue;
        const double base = predicted[0];
        for (auto &p : predicted)
            p -= base;
        const auto rel = relative_delays(phasors, f, std::span<const double>(predicted));
        for (std::size_t k = 0; k < n; ++k)
        {
            feeds[k].tones[index[k]].relative_delay = rel[k];
            feeds[k].tones[index[k]].predicted_delay = predicted[k];
        }
    }
    return feeds;
}

} // namespace

FeedSet extract_element_feeds(const ChainSetup &setup)
{
    const auto st = propagate_optical(setup);
    FeedSet out;
    out.sub6 = band_feeds(setup, st.port1, setup.sub6_plan, setup.sub6_bpf, Band::sub6);
    out.mmwave = band_feeds(setup, st.port2, setup.mm_plan, setup.mm_bpf, Band::mmwave);
    return out;
}

} // namespace arof
