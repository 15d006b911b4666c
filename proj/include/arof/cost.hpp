// SPDX-License-Identifier: Apache-2.0
//
// Remote-radio-head component tally for the proposed photonic TTD
// architecture and the conventional phase-shifter architecture.

#ifndef AROF_COST_HPP
#define AROF_COST_HPP

#include <array>
#include <cstddef>
#include <string_view>

namespace arof
{

enum class Architecture
{
    proposed,
    conventional
};

enum class Component : std::size_t
{
    interleaver,
    cfbg,
    dwdm_demux,
    wdm_mux,
    pd,
    bpf,
    ea,
    phase_shifter,
    psl,
    laser,
    mzm,
    count_
};

inline constexpr std::size_t kComponentKinds = static_cast<std::size_t>(Component::count_);

std::string_view component_name(Component c);
bool is_active(Component c);

struct CostScenario
{
    std::size_t n_services = 6;
    std::size_t n_elements = 4;
    Architecture architecture = Architecture::proposed;
    // Central-unit parts (lasers, modulators, CU gratings, WDM mux) are
    // outside the RRH and excluded unless requested.
    bool include_central_unit = false;
    // Services carried in the mmWave band; the rest are sub-6GHz. Used only
    // to split the conventional phase-shifter count.
    std::size_t n_mmwave_services = 3;

    void validate() const;
};

struct ComponentTally
{
    std::array<long long, kComponentKinds> counts{};
    // Conventional phase shifters split by band (mmWave, sub-6GHz).
    long long mmwave_phase_shifters = 0;
    long long sub6_phase_shifters = 0;

    long long operator[](Component c) const { return counts[static_cast<std::size_t>(c)]; }
    long long &operator[](Component c) { return counts[static_cast<std::size_t>(c)]; }
    long long active_total() const;
    long long passive_total() const;
};

ComponentTally component_counts(const CostScenario &s);

using ComponentWeights = std::array<double, kComponentKinds>;

// 1 per active unit, 0 per passive unit.
ComponentWeights default_weights();

struct TallyDiff
{
    std::array<long long, kComponentKinds> delta{}; // a - b
    double score = 0.0;                             // sum of weight * delta
};

TallyDiff tally_diff(const ComponentTally &a, const ComponentTally &b, const ComponentWeights &weights);

} // namespace arof

#endif
