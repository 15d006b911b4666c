// SPDX-License-Identifier: Apache-2.0
//
// Remote radio head front-end: two-port interleaver, per-element DWDM
// demultiplexing, square-law photodetection and band-pass filtering, plus
// the end-to-end composition that turns a chain setup into element feeds.

#ifndef AROF_FRONTEND_HPP
#define AROF_FRONTEND_HPP

#include "arof/delay.hpp"
#include "arof/spectrum.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arof
{

enum class Band
{
    sub6,
    mmwave
};

std::string to_string(Band band);

// Periodic two-port filter. A line whose offset from the reference grid,
// reduced modulo period, lies in [port1_lo, port1_hi] goes to port 1
// (boundaries included); everything else goes to port 2.
struct PortFilterSpec
{
    double period = 50.0e9;       // Hz
    double reference = 193.5e12;  // Hz, a point of the lambda-1 grid
    double port1_lo = 0.0;        // Hz offset
    double port1_hi = 12.5e9;     // Hz offset

    void validate() const;
    bool routes_to_port1(double freq) const noexcept;
};

struct InterleavedPorts
{
    OpticalSpectrum port1;
    OpticalSpectrum port2;
};

InterleavedPorts interleave(const OpticalSpectrum &spec, const PortFilterSpec &filt);

// Half-open absolute optical window [lo, hi).
struct ChannelWindow
{
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double f) const noexcept { return f >= lo && f < hi; }
};

// One window per antenna element, element index = position in the list.
struct ChannelPlan
{
    std::vector<ChannelWindow> windows;

    void validate() const;
    std::size_t size() const noexcept { return windows.size(); }

    // n windows [c_k + lo_offset, c_k + hi_offset) with c_k = first_center + k * pitch.
    static ChannelPlan uniform(double first_center, double pitch, std::size_t n, double lo_offset,
                               double hi_offset);
};

struct DemuxResult
{
    std::vector<OpticalSpectrum> elements;
    std::vector<std::size_t> dead_elements; // windows holding fewer than two lines
};

DemuxResult demux(const OpticalSpectrum &port, const ChannelPlan &plan);

struct RfTone
{
    double freq = 0.0;  // Hz
    double amp = 0.0;   // normalized volts
    double phase = 0.0; // rad, (-pi, pi]

    cplx phasor() const { return std::polar(amp, phase); }
    static RfTone from_phasor(double freq, cplx value);
};

struct Photocurrent
{
    double dc = 0.0;
    std::vector<RfTone> tones; // ascending frequency
};

// Beat phasor of line a against line b at frequency f_a - f_b: 2 R a conj(b).
cplx beat_phasor(const SpectralLine &a, const SpectralLine &b, double responsivity);

Photocurrent photodetect(const OpticalSpectrum &spec, double responsivity = 1.0);

// Tone split by origin: pairs that include the element's pilot (strongest)
// line carry the service, every other pair is an intermodulation spur.
struct ToneBreakdown
{
    RfTone tone;
    cplx service{};
    cplx spur{};
    double pair_hi = 0.0; // optical frequencies of the dominant contributing pair
    double pair_lo = 0.0;

    bool is_service() const noexcept { return std::abs(service) > 0.0; }
    // |spur| / |service|; infinite for a pure spur.
    double spur_ratio() const noexcept;
};

struct DetectedElement
{
    double dc = 0.0;
    double pilot_freq = 0.0;
    std::vector<ToneBreakdown> tones;
};

DetectedElement photodetect_detailed(const OpticalSpectrum &spec, double responsivity = 1.0);

// Keeps tones with f_lo < f < f_hi.
std::vector<RfTone> bandpass(std::span<const RfTone> tones, double f_lo, double f_hi);
std::vector<ToneBreakdown> bandpass(std::span<const ToneBreakdown> tones, double f_lo, double f_hi);

// Delays of one tone at each element relative to element 0, from the
// element phasors. With a prediction (per-element, relative to element 0)
// each value is the phase-consistent delay nearest the prediction. Without
// one, neighbour steps are taken at their principal value; a step within
// rounding of half an RF period is ambiguous and rejected.
std::vector<double> relative_delays(std::span<const cplx> phasors, double freq,
                                    std::optional<std::span<const double>> predicted = std::nullopt);

struct FeedTone
{
    RfTone tone;
    bool service = false;
    double spur_ratio = 0.0;
    double relative_delay = 0.0; // s, against element 0
    double predicted_delay = 0.0;
};

struct ElementFeed
{
    std::size_t element = 0;
    Band band = Band::sub6;
    std::vector<FeedTone> tones;
};

// Complete description of the optical/electrical chain.
struct ChainSetup
{
    double laser1_power = 1.0e-3;
    double laser1_freq = 193.500e12;
    double laser2_power = 1.0e-3;
    double laser2_freq = 193.525e12;
    ToneSet tones{{3.0e9, 5.0e9, 6.0e9}};
    MzmConfig mzm1{};
    MzmConfig mzm2{};
    DelayLaw cu_law{};                 // CFBG1 and CFBG2 in the central unit
    std::optional<DelayLaw> rrh_law{}; // CFBG3 on the mmWave branch
    PortFilterSpec interleaver{};
    ChannelPlan sub6_plan{};
    ChannelPlan mm_plan{};
    double responsivity = 1.0; // A/W
    double amplifier_gain = 1.0;
    FrequencyBand sub6_bpf{2.5e9, 7.0e9};
    FrequencyBand mm_bpf{20.0e9, 40.0e9};

    // Cumulative optical delay seen by a line of the given branch.
    double optical_delay(double freq, Band band) const noexcept;
    void validate() const;

    // Reference layout (configs/table2.cfg): lambda-1 channels at 193.450..193.600 THz, lambda-2
    // interleaved 25 GHz above, four elements, tones 3/5/6 GHz.
    static ChainSetup table2(const DelayLaw &cu_law, std::optional<DelayLaw> rrh_law = std::nullopt);
    // Grating band used with table2(): one 25 GHz slot beyond the outer channels.
    static FrequencyBand table2_band() noexcept { return {193.425e12, 193.650e12}; }
};

struct OpticalStages
{
    OpticalSpectrum upper;    // lambda-1 after direct modulation, MZM and CFBG1
    OpticalSpectrum lower;    // lambda-2 after MZM and CFBG2
    OpticalSpectrum combined; // after the coupler
    OpticalSpectrum port1;
    OpticalSpectrum port2; // after CFBG3 when present
};

OpticalStages propagate_optical(const ChainSetup &setup);

struct FeedSet
{
    std::vector<ElementFeed> sub6;
    std::vector<ElementFeed> mmwave;

    const std::vector<ElementFeed> &band(Band b) const { return b == Band::sub6 ? sub6 : mmwave; }
};

FeedSet extract_element_feeds(const ChainSetup &setup);

} // namespace arof

#endif
